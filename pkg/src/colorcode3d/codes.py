"""Stabilizer codes from lattices, logical operator search, and gauging.

CSS codes are held as labelled lists of X-type and Z-type Pauli
generators.  Logical counting is exact GF(2) rank arithmetic:
k = n - rank(generators as symplectic rows), and the relation count is
#generators - rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf2 import BitMatrix, BitVector, in_span, kernel_basis, rank, solve_right
from .lattice import CellComplex
from .xp import PauliOperator, commutes


class AssemblyError(RuntimeError):
    pass


class GaugingError(ValueError):
    pass


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    x_generators: tuple  # PauliOperator, X-type
    z_generators: tuple  # PauliOperator, Z-type
    x_labels: tuple
    z_labels: tuple
    meta: dict = field(default_factory=dict, compare=False)

    def x_matrix(self) -> BitMatrix:
        return BitMatrix(self.n, [g.x for g in self.x_generators])

    def z_matrix(self) -> BitMatrix:
        return BitMatrix(self.n, [g.z for g in self.z_generators])

    def symplectic_matrix(self) -> BitMatrix:
        rows = [g.symplectic() for g in self.x_generators]
        rows += [g.symplectic() for g in self.z_generators]
        return BitMatrix(2 * self.n, rows)

    @property
    def n_generators(self) -> int:
        return len(self.x_generators) + len(self.z_generators)


@dataclass(frozen=True)
class XPCode:
    n: int
    diagonal_generators: tuple  # Z-type PauliOperator
    xs_generators: tuple        # XPOperator
    signing: object             # SublatticeSigning
    xs_labels: tuple
    diagonal_labels: tuple

    def z_matrix(self) -> BitMatrix:
        return BitMatrix(self.n, [g.z for g in self.diagonal_generators])


@dataclass(frozen=True)
class LogicalPair:
    x_logical: PauliOperator
    z_logical: PauliOperator
    label: str


def assemble_color_code(complex_: CellComplex) -> StabilizerCode:
    """One X-generator per kept cell, one Z-generator per kept face; verifies
    mutual commutation."""
    n = len(complex_.qubits)
    x_gens, x_labels = [], []
    for c in complex_.x_cells():
        x_gens.append(
            PauliOperator.x_on(n, [complex_.index[v] for v in c.inside])
        )
        x_labels.append("A[%s]%s" % (c.key, "" if c.status == "full" else ":" + c.status))
    z_gens, z_labels = [], []
    for f in complex_.z_faces():
        z_gens.append(
            PauliOperator.z_on(n, [complex_.index[v] for v in f.inside])
        )
        z_labels.append("B[%s]%s" % (f.key, "" if f.status == "full" else ":" + f.status))
    code = StabilizerCode(
        n=n,
        x_generators=tuple(x_gens),
        z_generators=tuple(z_gens),
        x_labels=tuple(x_labels),
        z_labels=tuple(z_labels),
        meta={"source": "color-code", "qubits": complex_.qubits},
    )
    verify_commutation(code)
    return code


def verify_commutation(code: StabilizerCode) -> None:
    for i, xg in enumerate(code.x_generators):
        for j, zg in enumerate(code.z_generators):
            if not commutes(xg, zg):
                raise AssemblyError(
                    "generators %s and %s anticommute"
                    % (code.x_labels[i], code.z_labels[j])
                )


def logical_qubit_count(code: StabilizerCode) -> int:
    return code.n - rank(code.symplectic_matrix())


def relation_count(code: StabilizerCode) -> int:
    return code.n_generators - rank(code.symplectic_matrix())


def relation_report(code: StabilizerCode) -> dict:
    """Total relation count plus the X/Z split found by kernel computation."""
    x_kernel = kernel_basis(code.x_matrix()).n_rows
    z_kernel = kernel_basis(code.z_matrix()).n_rows
    total = relation_count(code)
    return {"total": total, "x_relations": x_kernel, "z_relations": z_kernel}


def relation_breakdown(complex_: CellComplex, code: StabilizerCode) -> dict:
    """Attribute the identity relations to cells and boundaries.

    Each full cell contributes the identity products supported on its own
    faces: the hexagon product of a 24-vertex cell, the two opposite-pair
    products of a cube, the two face-class pair products of a 48-vertex
    cell.  What the cell products do not span is attributed to the boundary
    truncations.  The split is reported as found, not forced.
    """
    import itertools as _it

    kept = list(complex_.z_faces())
    n_z = len(kept)
    face_row = {f.key: code.z_generators[i].z for i, f in enumerate(kept)}
    face_idx = {f.key: i for i, f in enumerate(kept)}

    def relation_vector(face_keys):
        acc = BitVector(code.n)
        for k in face_keys:
            acc = acc ^ face_row[k]
        if not acc.is_zero():
            return None
        return BitVector.from_indices(n_z, sorted(face_idx[k] for k in face_keys))

    per_color: dict[str, int] = {}
    vectors: list[BitVector] = []
    for cell in complex_.x_cells():
        if cell.status != "full":
            continue
        faces_of = [f for f in kept if cell.key in f.cells]
        by_size: dict[int, list] = {}
        for f in faces_of:
            by_size.setdefault(len(f.vertices), []).append(f.key)
        candidates = []
        if cell.kind == "to":
            candidates.append(by_size.get(6, []))
        elif cell.kind == "cube":
            fkeys = [f.key for f in faces_of]
            disjoint = [
                (a, b)
                for a, b in _it.combinations(faces_of, 2)
                if not (a.vertices & b.vertices)
            ]
            for (a, b), (c, d) in _it.combinations(disjoint, 2):
                if len({a.key, b.key, c.key, d.key}) == 4:
                    candidates.append([a.key, b.key, c.key, d.key])
        else:  # tco
            candidates.append(by_size.get(6, []) + by_size.get(8, []))
            candidates.append(by_size.get(8, []) + by_size.get(4, []))
        fresh = []
        for keys in candidates:
            vec = relation_vector(keys)
            if vec is None:
                continue
            if not in_span(vec, BitMatrix(n_z, vectors + fresh)):
                fresh.append(vec)
        if fresh:
            per_color[cell.color] = per_color.get(cell.color, 0) + len(fresh)
            vectors.extend(fresh)
    total = relation_count(code)
    return {
        "total": total,
        "cells": per_color,
        "boundary": total - sum(per_color.values()),
    }


def find_logical_pairs(code: StabilizerCode) -> list[LogicalPair]:
    """Symplectically paired logical operators of a CSS code."""
    n = code.n
    x_stab = code.x_matrix()
    z_stab = code.z_matrix()

    def coset_reps(commuting_with: BitMatrix, modulo: BitMatrix) -> list[BitVector]:
        from .gf2 import solve_kernel_right

        candidates = solve_kernel_right(commuting_with)
        reps: list[BitVector] = []
        span_rows = list(modulo.rows)
        current = BitMatrix(n, span_rows)
        for cand in candidates.rows:
            if not in_span(cand, current):
                reps.append(cand)
                span_rows.append(cand)
                current = BitMatrix(n, span_rows)
        return reps

    x_reps = coset_reps(z_stab, x_stab)   # X ops commuting with all Z stabs
    z_reps = coset_reps(x_stab, z_stab)
    k = logical_qubit_count(code)
    if len(x_reps) != k or len(z_reps) != k:
        raise AssemblyError(
            "logical search found %d/%d representatives for k=%d"
            % (len(x_reps), len(z_reps), k)
        )
    if k == 0:
        return []
    # Pair them: make the pairing matrix the identity by transforming z_reps.
    pairing = BitMatrix(
        k,
        [
            BitVector.from_bits([x.dot(z) for z in z_reps])
            for x in x_reps
        ],
    )
    if rank(pairing) != k:
        raise AssemblyError("degenerate logical pairing matrix")
    new_z: list[BitVector] = []
    for i in range(k):
        coeff = solve_right(pairing, BitVector.from_indices(k, [i]))
        assert coeff is not None
        acc = BitVector(n)
        for j in range(k):
            if coeff[j]:
                acc = acc ^ z_reps[j]
        new_z.append(acc)
    pairs = []
    for i in range(k):
        pairs.append(
            LogicalPair(
                x_logical=PauliOperator(n, 0, x_reps[i], BitVector(n)),
                z_logical=PauliOperator(n, 0, BitVector(n), new_z[i]),
                label="L%d" % i,
            )
        )
    return pairs


def is_logical_pair_valid(code: StabilizerCode, pair: LogicalPair) -> bool:
    for g in code.x_generators + code.z_generators:
        if not commutes(g, pair.x_logical) or not commutes(g, pair.z_logical):
            return False
    if commutes(pair.x_logical, pair.z_logical):
        return False
    if in_span(pair.x_logical.x, code.x_matrix()):
        return False
    if in_span(pair.z_logical.z, code.z_matrix()):
        return False
    return True


# ---------------------------------------------------------------------------
# Serialization (line oriented, versioned, bit exact)

FORMAT_HEADER = "# stabilizer-code v1"


def serialize_code(code: StabilizerCode) -> str:
    lines = [FORMAT_HEADER, "n %d" % code.n]
    for kind, gens, labels in (
        ("X", code.x_generators, code.x_labels),
        ("Z", code.z_generators, code.z_labels),
    ):
        for g, label in zip(gens, labels):
            support = g.x if kind == "X" else g.z
            lines.append(
                "%s %s : %s" % (kind, label, " ".join(map(str, support.indices())))
            )
    return "\n".join(lines) + "\n"


def deserialize_code(text: str) -> StabilizerCode:
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines or lines[0] != FORMAT_HEADER:
        raise ValueError("unrecognized code format header")
    if not lines[1].startswith("n "):
        raise ValueError("missing qubit count")
    n = int(lines[1].split()[1])
    x_gens, x_labels, z_gens, z_labels = [], [], [], []
    for line in lines[2:]:
        head, _, support_part = line.partition(" : ")
        kind, _, label = head.partition(" ")
        qubits = [int(t) for t in support_part.split()] if support_part.strip() else []
        if kind == "X":
            x_gens.append(PauliOperator.x_on(n, qubits))
            x_labels.append(label)
        elif kind == "Z":
            z_gens.append(PauliOperator.z_on(n, qubits))
            z_labels.append(label)
        else:
            raise ValueError("bad generator line %r" % line)
    return StabilizerCode(
        n=n,
        x_generators=tuple(x_gens),
        z_generators=tuple(z_gens),
        x_labels=tuple(x_labels),
        z_labels=tuple(z_labels),
    )


# ---------------------------------------------------------------------------
# Gauging a Z2-symmetric matter graph into a pure gauge code


@dataclass(frozen=True)
class MatterGraph:
    """Matter qubits on vertices, constraint terms on edges.

    ``marks`` labels vertices 'smooth' (default), 'rough' (the vertex gets a
    dangling gauge edge from its truncated constraint term) or 'folded-seam'
    (annotation only; seam couplings are explicit edges between the paired
    layers).  ``faces`` lists the flatness cycles as edge-index tuples; a
    cycle may use dangling edges, closing through the exterior.
    """

    vertices: tuple
    edges: tuple                 # (u, v) vertex-name pairs
    faces: tuple                 # tuples of gauge-qubit indices
    marks: dict = field(default_factory=dict, compare=False)

    def dangling(self):
        return [
            v for v in self.vertices if self.marks.get(v, "smooth") == "rough"
        ]


@dataclass(frozen=True)
class CoupledMatterModel:
    """Matter and gauge qubits coupled by minimal substitution.

    Qubit order: matter qubits (one per vertex) first, then gauge qubits
    (one per edge, one per rough dangling).  Constraint terms are the
    matter ZZ terms (single Z at rough vertices) tagged with their gauge
    qubit; gauge symmetries are the local X(v) * prod X(e at v) operators.
    The strong-coupling projection discards the matter factor and yields
    the pure gauge code.
    """

    matter: MatterGraph
    edge_list: tuple              # includes dangling (v, None) entries
    n_matter: int
    n_gauge: int
    constraint_terms: tuple       # PauliOperator on matter+gauge qubits
    gauge_symmetries: tuple       # PauliOperator on matter+gauge qubits
    incident: dict = field(compare=False, default_factory=dict)

    @property
    def n_total(self) -> int:
        return self.n_matter + self.n_gauge

    def global_symmetry(self) -> PauliOperator:
        """The product of matter X over every vertex."""
        return PauliOperator.x_on(self.n_total, range(self.n_matter))

    def symmetry_breaking_report(self) -> dict:
        """Which constraint terms fail to commute with the global symmetry
        (single-Z rough terms break it; smooth ZZ terms preserve it)."""
        sym = self.global_symmetry()
        broken = [
            i for i, t in enumerate(self.constraint_terms) if not commutes(sym, t)
        ]
        return {"preserved": not broken, "broken_terms": tuple(broken)}

    def project_strong_coupling(self) -> StabilizerCode:
        """Freeze the matter qubits: vertex stars of gauge qubits become the
        X-generators, face flatness cycles the Z-generators."""
        n = self.n_gauge
        x_gens, x_labels = [], []
        for v in self.matter.vertices:
            x_gens.append(PauliOperator.x_on(n, sorted(self.incident[v])))
            x_labels.append("star[%s]" % (v,))
        z_gens, z_labels = [], []
        for fi, face in enumerate(self.matter.faces):
            counts: dict = {}
            for i in face:
                if not 0 <= i < n:
                    raise GaugingError("face %d uses unknown edge %d" % (fi, i))
                for end in self.edge_list[i]:
                    if end is not None:
                        counts[end] = counts.get(end, 0) + 1
            odd = [v for v, c in counts.items() if c % 2]
            if odd:
                raise GaugingError(
                    "face %d is not a closed flatness cycle (odd at %s)" % (fi, odd)
                )
            z_gens.append(PauliOperator.z_on(n, sorted(set(face))))
            z_labels.append("flat[%d]" % fi)
        code = StabilizerCode(
            n=n,
            x_generators=tuple(x_gens),
            z_generators=tuple(z_gens),
            x_labels=tuple(x_labels),
            z_labels=tuple(z_labels),
            meta={"source": "gauged", "edges": tuple(self.edge_list)},
        )
        verify_commutation(code)
        return code


def couple_gauge_qubits(matter: MatterGraph) -> CoupledMatterModel:
    """Attach one gauge qubit to every constraint term of the matter model."""
    for v in matter.marks:
        if v not in matter.vertices:
            raise GaugingError("mark on unknown vertex %r" % v)
        if matter.marks[v] not in ("smooth", "rough", "folded-seam"):
            raise GaugingError("bad mark %r" % matter.marks[v])
    edge_list = list(matter.edges)
    for v in matter.dangling():
        edge_list.append((v, None))
    n_matter = len(matter.vertices)
    n_gauge = len(edge_list)
    vindex = {v: i for i, v in enumerate(matter.vertices)}
    n_total = n_matter + n_gauge
    incident: dict = {v: [] for v in matter.vertices}
    constraints = []
    for i, (u, v) in enumerate(edge_list):
        if u not in incident:
            raise GaugingError("edge endpoint %r is not a vertex" % (u,))
        incident[u].append(i)
        matter_support = [vindex[u]]
        if v is not None:
            if v not in incident:
                raise GaugingError("edge endpoint %r is not a vertex" % (v,))
            incident[v].append(i)
            matter_support.append(vindex[v])
        constraints.append(
            PauliOperator.z_on(n_total, sorted(matter_support) + [n_matter + i])
        )
    symmetries = []
    for v in matter.vertices:
        symmetries.append(
            PauliOperator.x_on(
                n_total, [vindex[v]] + [n_matter + i for i in sorted(incident[v])]
            )
        )
    return CoupledMatterModel(
        matter=matter,
        edge_list=tuple(edge_list),
        n_matter=n_matter,
        n_gauge=n_gauge,
        constraint_terms=tuple(constraints),
        gauge_symmetries=tuple(symmetries),
        incident=incident,
    )


def gauge_z2(matter: MatterGraph) -> StabilizerCode:
    """Pure gauge code: one gauge qubit per edge (plus one per rough vertex);
    vertex X-stabilizers on edge stars, Z flatness generators on faces."""
    return couple_gauge_qubits(matter).project_strong_coupling()


def _vname(v) -> str:
    return ",".join(map(str, v))


def cubic_torus(l: int = 2) -> MatterGraph:
    """Periodic cubic matter lattice; parallel edges and all square faces."""
    verts = [(x, y, z) for x in range(l) for y in range(l) for z in range(l)]
    edges = []
    edge_index: dict = {}
    for v in verts:
        for axis in range(3):
            w = list(v)
            w[axis] = (w[axis] + 1) % l
            w = tuple(w)
            edge_index[(v, axis)] = len(edges)
            edges.append((_vname(v), _vname(w)))
    faces = []
    for v in verts:
        for a1 in range(3):
            for a2 in range(a1 + 1, 3):
                w1 = list(v)
                w1[a1] = (w1[a1] + 1) % l
                w1 = tuple(w1)
                w2 = list(v)
                w2[a2] = (w2[a2] + 1) % l
                w2 = tuple(w2)
                faces.append(
                    (
                        edge_index[(v, a1)],
                        edge_index[(w1, a2)],
                        edge_index[(w2, a1)],
                        edge_index[(v, a2)],
                    )
                )
    return MatterGraph(
        vertices=tuple(_vname(v) for v in verts),
        edges=tuple(edges),
        faces=tuple(faces),
        marks={},
    )


def cubic_slab(lx: int, ly: int, lz: int) -> MatterGraph:
    """Open cubic slab with rough top/bottom (normal to z; dangling gauge
    edges and truncated flatness cycles there) and four smooth sides."""
    dims = (lx, ly, lz)
    verts = [
        (x, y, z)
        for x in range(lx + 1)
        for y in range(ly + 1)
        for z in range(lz + 1)
    ]
    edges = []
    edge_index: dict = {}
    vset = set(verts)
    for v in verts:
        for a in range(3):
            w = list(v)
            w[a] += 1
            w = tuple(w)
            if w in vset:
                edge_index[(v, a)] = len(edges)
                edges.append((_vname(v), _vname(w)))
    marks = {}
    dangle_key = {}
    counter = len(edges)
    for v in verts:
        if v[2] in (0, dims[2]):
            marks[_vname(v)] = "rough"
            dangle_key[v] = counter
            counter += 1
    faces = []
    for v in verts:
        for a1 in range(3):
            for a2 in range(a1 + 1, 3):
                if (v, a1) not in edge_index or (v, a2) not in edge_index:
                    continue
                w1 = list(v)
                w1[a1] += 1
                w1 = tuple(w1)
                w2 = list(v)
                w2[a2] += 1
                w2 = tuple(w2)
                if (w1, a2) in edge_index and (w2, a1) in edge_index:
                    faces.append(
                        (
                            edge_index[(v, a1)],
                            edge_index[(w1, a2)],
                            edge_index[(w2, a1)],
                            edge_index[(v, a2)],
                        )
                    )
    # truncated flatness cycles on the rough faces: dangling(u) edge(u,w)
    # dangling(w) closes through the exterior
    for (u, a) in sorted(edge_index):
        if a == 2 or u[2] not in (0, dims[2]):
            continue
        w = list(u)
        w[a] += 1
        w = tuple(w)
        faces.append((dangle_key[u], edge_index[(u, a)], dangle_key[w]))
    return MatterGraph(
        vertices=tuple(_vname(v) for v in verts),
        edges=tuple(edges),
        faces=tuple(faces),
        marks=marks,
    )


def slab_logicals(matter: MatterGraph, code: StabilizerCode) -> tuple:
    """(Z-string between the rough faces, X-membrane between the smooth
    sides) for a cubic_slab gauge code."""
    edges = code.meta["edges"]
    coords = {}
    for name in matter.vertices:
        coords[name] = tuple(int(t) for t in name.split(","))
    lz = max(c[2] for c in coords.values())
    # Z-string: dangling at (0,0,0), vertical column, dangling at (0,0,lz)
    string_qubits = []
    for i, (u, v) in enumerate(edges):
        if v is None:
            cu = coords[u]
            if cu[0] == 0 and cu[1] == 0 and cu[2] in (0, lz):
                string_qubits.append(i)
        else:
            cu, cv = coords[u], coords[v]
            if cu[:2] == (0, 0) and cv[:2] == (0, 0):
                string_qubits.append(i)
    z_string = PauliOperator.z_on(code.n, sorted(string_qubits))
    # X-membrane: all vertical edges crossing the mid-plane z = lz/2
    cut = lz / 2 if lz % 2 else lz / 2 - 0.5
    membrane_qubits = []
    for i, (u, v) in enumerate(edges):
        if v is None:
            continue
        cu, cv = coords[u], coords[v]
        if cu[:2] == cv[:2] and min(cu[2], cv[2]) <= cut < max(cu[2], cv[2]):
            membrane_qubits.append(i)
    x_membrane = PauliOperator.x_on(code.n, sorted(membrane_qubits))
    return z_string, x_membrane


def serialize_matter_graph(matter: MatterGraph) -> str:
    lines = ["# matter-graph v1"]
    for v in matter.vertices:
        mark = matter.marks.get(v, "smooth")
        lines.append("vertex %s %s" % (v, mark))
    for u, v in matter.edges:
        lines.append("edge %s %s" % (u, v))
    for face in matter.faces:
        lines.append("face %s" % " ".join(map(str, face)))
    return "\n".join(lines) + "\n"


def parse_matter_graph(text: str) -> MatterGraph:
    vertices, edges, faces, marks = [], [], [], {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertex":
            v = parts[1]
            vertices.append(v)
            if len(parts) > 2 and parts[2] != "smooth":
                marks[v] = parts[2]
        elif parts[0] == "edge":
            edges.append((parts[1], parts[2]))
        elif parts[0] == "face":
            faces.append(tuple(int(t) for t in parts[1:]))
        else:
            raise GaugingError("bad matter-graph line %r" % line)
    return MatterGraph(
        vertices=tuple(vertices), edges=tuple(edges), faces=tuple(faces), marks=marks
    )
