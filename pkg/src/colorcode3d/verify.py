"""Lattice-level verification of transversal S/T conjugation and boundary
condensation.

The operational test throughout: an operator condenses on a boundary iff
its group commutator with every stabilizer reduces to a Z-type Pauli whose
support lies in the Z-stabilizer span with unit residual phase.  A correct
Z-vector with a nonunit phase is reported as its own failure class, since
the sublattice phase convention should cancel all phases on balanced
supports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .anyons import (
    CondensationSet,
    E,
    M,
    t_wall_image,
    translate_color_label,
)
from .codes import StabilizerCode, XPCode, assemble_color_code
from .gf2 import BitMatrix, BitVector, in_span, rank
from .lattice import CellComplex, MembraneSupport
from .xp import (
    NotZTypeError,
    PauliOperator,
    SublatticeSigning,
    XPOperator,
    commutes,
    conjugate_by_transversal_diagonal,
    group_commutator,
    render_xp,
    z_reduction,
)


@dataclass(frozen=True)
class Witness:
    stabilizer_label: str
    commutator: str
    z_reducible: bool
    in_z_span: bool | None
    phase_exponent: int | None
    ok: bool


@dataclass(frozen=True)
class CondensationVerdict:
    operator_label: str
    condenses: bool
    nontrivial: bool | None
    witnesses: tuple       # non-identity commutator witnesses only
    n_trivial: int         # stabilizers with identity commutator

    def failing(self):
        return [w for w in self.witnesses if not w.ok]


# ---------------------------------------------------------------------------
# Transversal conjugation


def conjugate_transversal_T(code: StabilizerCode, signing: SublatticeSigning) -> XPCode:
    """Replace each X-generator by its transversal-T conjugate; Z-generators
    are diagonal and unchanged.  Verifies the conjugated generator set still
    commutes exactly."""
    xs = tuple(
        conjugate_by_transversal_diagonal(
            g.to_xp(), "T", signing, require_balanced=True
        )
        for g in code.x_generators
    )
    xp_code = XPCode(
        n=code.n,
        diagonal_generators=code.z_generators,
        xs_generators=xs,
        signing=signing,
        xs_labels=code.x_labels,
        diagonal_labels=code.z_labels,
    )
    _verify_xp_code(xp_code)
    return xp_code


def conjugate_transversal_S(
    code: StabilizerCode,
    membrane: MembraneSupport,
    signing: SublatticeSigning,
    qubit_index,
) -> XPCode:
    """Conjugate by transversal S supported on the membrane sheet; only
    X-generators intersecting the sheet change."""
    support = {qubit_index[q] for q in membrane.qubits}
    xs = tuple(
        conjugate_by_transversal_diagonal(g.to_xp(), "S", signing, support)
        for g in code.x_generators
    )
    return XPCode(
        n=code.n,
        diagonal_generators=code.z_generators,
        xs_generators=xs,
        signing=signing,
        xs_labels=code.x_labels,
        diagonal_labels=code.z_labels,
    )


def _verify_xp_code(code: XPCode) -> None:
    for i, a in enumerate(code.xs_generators):
        for d in code.diagonal_generators:
            if a.x.dot(d.z) & 1:
                raise RuntimeError(
                    "XS generator %s anticommutes with a diagonal generator"
                    % code.xs_labels[i]
                )
        for j in range(i + 1, len(code.xs_generators)):
            k = group_commutator(a, code.xs_generators[j])
            if not k.is_identity():
                raise RuntimeError(
                    "XS generators %s, %s do not commute exactly"
                    % (code.xs_labels[i], code.xs_labels[j])
                )


def one_form_symmetry_check(
    code: StabilizerCode,
    membrane: MembraneSupport,
    signing: SublatticeSigning,
    qubit_index,
) -> list:
    """For each X-generator, decide whether the Z-operator induced on its
    intersection with the S-sheet is a Z-stabilizer product.  Returns the
    labels of generators where absorption fails (the sheet edge)."""
    support = {qubit_index[q] for q in membrane.qubits}
    z_span = BitMatrix(code.n, [g.z for g in code.z_generators])
    broken = []
    for g, label in zip(code.x_generators, code.x_labels):
        overlap = sorted(set(g.x.indices()) & support)
        if not overlap:
            continue
        vec = BitVector.from_indices(code.n, overlap)
        if not in_span(vec, z_span):
            broken.append(label)
    return broken


# ---------------------------------------------------------------------------
# Codespace commutation and condensation verdicts


def codespace_commutes(code: XPCode, a: XPOperator, b: XPOperator) -> tuple:
    """K(a, b) must reduce to a Z-stabilizer product with unit phase.
    Returns (bool, Witness)."""
    k = group_commutator(a, b)
    return _witness_for(code.z_matrix(), k, "")


def _witness_for(z_span: BitMatrix, k: XPOperator, label: str) -> tuple:
    if k.is_identity():
        return True, Witness(label, "+1", True, True, 0, True)
    try:
        vec, phase = z_reduction(k)
    except NotZTypeError:
        return False, Witness(label, render_xp(k), False, None, None, False)
    spanned = in_span(vec, z_span)
    ok = spanned and phase == 0
    return ok, Witness(label, render_xp(k), True, spanned, phase, ok)


def condenses(code, op: PauliOperator, label: str = "") -> CondensationVerdict:
    """Operational condensation: ``op`` commutes (within the codespace for
    XS stabilizers) with every generator and is not itself a stabilizer
    product."""
    witnesses = []
    n_trivial = 0
    if isinstance(code, StabilizerCode):
        z_span = code.z_matrix()
        gens = [(g, l, False) for g, l in zip(code.x_generators, code.x_labels)]
        gens += [(g, l, False) for g, l in zip(code.z_generators, code.z_labels)]
        for g, glabel, _ in gens:
            if commutes(g, op):
                n_trivial += 1
            else:
                witnesses.append(
                    Witness(glabel, "-1", False, None, None, False)
                )
        sym_rows = [g.symplectic() for g in code.x_generators + code.z_generators]
        nontrivial = not in_span(op.symplectic(), BitMatrix(2 * code.n, sym_rows))
    else:
        z_span = code.z_matrix()
        op_xp = op.to_xp()
        for g, glabel in zip(code.diagonal_generators, code.diagonal_labels):
            if commutes(g, op):
                n_trivial += 1
            else:
                witnesses.append(Witness(glabel, "-1", False, None, None, False))
        for g, glabel in zip(code.xs_generators, code.xs_labels):
            k = group_commutator(g, op_xp)
            if k.is_identity():
                n_trivial += 1
                continue
            ok, w = _witness_for(z_span, k, glabel)
            witnesses.append(w)
        sym_rows = [g.x.concat(BitVector(code.n)) for g in code.xs_generators]
        sym_rows += [BitVector(code.n).concat(g.z) for g in code.diagonal_generators]
        nontrivial = not in_span(op.symplectic(), BitMatrix(2 * code.n, sym_rows))
    all_ok = all(w.ok for w in witnesses)
    return CondensationVerdict(
        operator_label=label,
        condenses=all_ok and nontrivial,
        nontrivial=nontrivial,
        witnesses=tuple(witnesses),
        n_trivial=n_trivial,
    )


def stabilizer_absorption_is_sound(code: StabilizerCode, op: PauliOperator) -> bool:
    """Adding a condensing operator to the group must not change the
    codespace dimension (rank check)."""
    base = code.symplectic_matrix()
    extended = BitMatrix(2 * code.n, list(base.rows) + [op.symplectic()])
    return rank(extended) == rank(base) + (
        0 if in_span(op.symplectic(), base) else 1
    )


# ---------------------------------------------------------------------------
# The boundary verdict matrix


@dataclass(frozen=True)
class VerdictCell:
    condenses: bool
    failing: tuple          # (stabilizer label, side tags, detail) triples
    note: str = ""


@dataclass(frozen=True)
class MagicBoundaryReport:
    sides: tuple
    operators: tuple        # (kind, color/pair, anyon string) triples
    pre: dict = field(hash=False)      # (op label, side) -> VerdictCell
    post: dict = field(hash=False)
    symbolic_pre: dict = field(hash=False)
    symbolic_post: dict = field(hash=False)

    def lattice_matches_symbolic(self) -> bool:
        return all(
            self.pre[key].condenses == self.symbolic_pre[key] for key in self.pre
        ) and all(
            self.post[key].condenses == self.symbolic_post[key] for key in self.post
        )

    def z_sides_unchanged(self) -> bool:
        return all(
            self.pre[key].condenses == self.post[key].condenses
            for key in self.pre
            if key[1].startswith("z")
        )


MEMBRANE_LABELS = {"pg": "pg_x", "py": "py_x", "yg": "yg_x"}
STRING_LABELS = {"y": "y_z", "g": "g_z", "p": "p_z"}


def _cell_sides(complex_):
    """Map stabilizer label -> boundary side tags of the underlying object."""
    tags = {}
    for c in complex_.x_cells():
        x_sides = tuple(
            s for s in c.cut_sides if complex_.boundaries[s].kind == "X"
        )
        tags["A[%s]%s" % (c.key, "" if c.status == "full" else ":" + c.status)] = x_sides
    for f in complex_.z_faces():
        z_sides = tuple(
            s for s in f.cut_sides if complex_.boundaries[s].kind == "Z"
        )
        tags["B[%s]%s" % (f.key, "" if f.status == "full" else ":" + f.status)] = z_sides
    return tags


def magic_boundary_report(complex_: CellComplex) -> MagicBoundaryReport:
    """Evaluate membrane and string condensation on every boundary side of
    the assembled code, before and after transversal-T conjugation, and
    compare against the symbolic wall-image prediction."""
    code = assemble_color_code(complex_)
    signing = complex_.bipartition()
    xp_code = conjugate_transversal_T(code, signing)
    qidx = complex_.index
    n = code.n
    side_kind = {s: complex_.boundaries[s].kind for s in complex_.boundaries}
    sides = tuple(sorted(side_kind))
    tags = _cell_sides(complex_)

    x_sides = [s for s in sides if side_kind[s] == "X"]
    z_sides = [s for s in sides if side_kind[s] == "Z"]

    membranes = {}
    for pair in ("pg", "py", "yg"):
        membranes[pair] = complex_.membrane_support(
            frozenset(pair), (x_sides[0], _opposite(x_sides[0]))
        )
    strings = {}
    for color in "ygp":
        strings[color] = complex_.string_support(color, (z_sides[0], z_sides[1]))

    operators = tuple(
        [("membrane", pair, MEMBRANE_LABELS[pair]) for pair in ("pg", "py", "yg")]
        + [("string", color, STRING_LABELS[color]) for color in "ygp"]
    )

    pre: dict = {}
    post: dict = {}
    for kind, name, anyon in operators:
        if kind == "membrane":
            op = PauliOperator.x_on(n, [qidx[q] for q in membranes[name].qubits])
        else:
            op = PauliOperator.z_on(n, [qidx[q] for q in strings[name].qubits])
        verdict_pre = condenses(code, op, anyon)
        verdict_post = condenses(xp_code, op, anyon)
        for side in sides:
            pre[(anyon, side)] = _cell_for_side(
                kind, name, side, side_kind, verdict_pre, tags, complex_, code, None
            )
            post[(anyon, side)] = _cell_for_side(
                kind, name, side, side_kind, verdict_post, tags, complex_, code, xp_code
            )

    symbolic_pre: dict = {}
    symbolic_post: dict = {}
    x_set = CondensationSet(list(M))
    z_set = CondensationSet(list(E))
    magic_set = t_wall_image(x_set)
    for kind, name, anyon in operators:
        label = translate_color_label(anyon)
        for side in sides:
            if side_kind[side] == "X":
                symbolic_pre[(anyon, side)] = x_set.contains_anyon(label)
                symbolic_post[(anyon, side)] = magic_set.contains_anyon(label)
            else:
                symbolic_pre[(anyon, side)] = z_set.contains_anyon(label)
                symbolic_post[(anyon, side)] = t_wall_image(z_set).contains_anyon(label)

    return MagicBoundaryReport(
        sides=sides,
        operators=operators,
        pre=pre,
        post=post,
        symbolic_pre=symbolic_pre,
        symbolic_post=symbolic_post,
    )


def _opposite(side: str) -> str:
    return side[0] + ("-" if side[1] == "+" else "+")


def bulk_symmetry_check(complex_: CellComplex) -> dict:
    """Criterion: on the T-conjugated code, the commutator of every bulk
    (full-cell) XS-stabilizer with every membrane reduces into the Z-span
    with unit phase.  Returns per-pair results."""
    code = assemble_color_code(complex_)
    signing = complex_.bipartition()
    xp_code = conjugate_transversal_T(code, signing)
    x_sides = sorted(
        s for s, b in complex_.boundaries.items() if b.kind == "X"
    )
    results = {}
    all_ok = True
    for pair in ("pg", "py", "yg"):
        membrane = complex_.membrane_support(
            frozenset(pair), (x_sides[0], _opposite(x_sides[0]))
        )
        op = PauliOperator.x_on(
            code.n, [complex_.index[q] for q in membrane.qubits]
        ).to_xp()
        for g, label, cell_label in zip(
            xp_code.xs_generators, xp_code.xs_labels, code.x_labels
        ):
            if ":" in label:
                continue  # boundary stabilizer, not bulk
            ok, witness = codespace_commutes(xp_code, g, op)
            results[(pair, label)] = witness
            all_ok = all_ok and ok
    results["all_ok"] = all_ok
    return results


def closed_sheet_for(complex_: CellComplex, color_pair) -> MembraneSupport:
    """A contractible sheet of the given type: the faces of that type around
    one full 24-vertex cell (their union is the cell's entire vertex set)."""
    color_pair = frozenset(color_pair)
    for c in complex_.cells:
        if c.kind != "to" or c.status != "full":
            continue
        faces = [
            f
            for f in complex_.faces
            if c.key in f.cells and f.edge_colors == color_pair and f.status == "full"
        ]
        union: set = set()
        for f in faces:
            union |= set(f.inside)
        if union == set(c.inside):
            return MembraneSupport(
                qubits=tuple(sorted(union)),
                color_pair=color_pair,
                terminal_sides=(),
                faces=tuple(sorted(f.key for f in faces)),
            )
    raise RuntimeError("no closed %s sheet found" % sorted(color_pair))


def s_wall_report(complex_: CellComplex, color_pair) -> dict:
    """Emergent 1-form symmetry of a transversal S sheet: absorbed on a
    closed bulk sheet, broken on a sheet terminating on the X-boundaries."""
    code = assemble_color_code(complex_)
    signing = complex_.bipartition()
    qidx = complex_.index
    closed = closed_sheet_for(complex_, color_pair)
    x_sides = sorted(s for s, b in complex_.boundaries.items() if b.kind == "X")
    spanning = complex_.membrane_support(
        frozenset(color_pair), (x_sides[0], _opposite(x_sides[0]))
    )
    broken_closed = one_form_symmetry_check(code, closed, signing, qidx)
    broken_spanning = one_form_symmetry_check(code, spanning, signing, qidx)
    boundary_broken = [
        label for label in broken_spanning if ":" in label
    ]
    return {
        "closed_sheet_faces": closed.faces,
        "closed_sheet_broken": tuple(broken_closed),
        "spanning_sheet_faces": spanning.faces,
        "spanning_sheet_broken": tuple(broken_spanning),
        "boundary_broken": tuple(boundary_broken),
        "bulk_symmetry_holds": not broken_closed,
        "boundary_symmetry_broken": bool(boundary_broken),
    }


def _cell_for_side(
    kind, name, side, side_kind, verdict, tags, complex_, code, xp_code
) -> VerdictCell:
    """Side-resolved verdict for one operator.

    Membranes terminate on X-sides; their per-side verdict groups the global
    witnesses by the side owning the failing stabilizer.  Strings terminate
    on Z-sides; toward X-sides (and membranes toward Z-sides) a probe
    operator is built that tries to end there, and the stabilizers it
    violates at that side are the witnesses.
    """
    if kind == "membrane" and side_kind[side] == "X":
        failing = [
            (w.stabilizer_label, tags.get(w.stabilizer_label, ()), w.commutator)
            for w in verdict.failing()
        ]
        at_side = [f for f in failing if side in f[1]]
        bulk_fail = [f for f in failing if not f[1]]
        ok = not at_side and not bulk_fail and verdict.nontrivial
        return VerdictCell(condenses=ok, failing=tuple(at_side + bulk_fail))
    if kind == "string" and side_kind[side] == "Z":
        failing = [
            (w.stabilizer_label, tags.get(w.stabilizer_label, ()), w.commutator)
            for w in verdict.failing()
        ]
        return VerdictCell(
            condenses=not failing and bool(verdict.nontrivial), failing=tuple(failing)
        )
    if kind == "string":  # toward an X-side
        sup, terminal, clean = complex_.string_probe(name, side, "z+")
        op = PauliOperator.z_on(code.n, [complex_.index[q] for q in sup.qubits])
        target = xp_code if xp_code is not None else code
        verdict2 = condenses(target, op, "probe")
        failing = [
            (w.stabilizer_label, tags.get(w.stabilizer_label, ()), w.commutator)
            for w in verdict2.failing()
        ]
        return VerdictCell(
            condenses=clean and not failing,
            failing=tuple(failing),
            note="terminates at %s" % terminal,
        )
    # membrane toward a Z-side
    probe = complex_.membrane_probe(frozenset(name), side)
    if probe is None:
        return VerdictCell(condenses=False, failing=(), note="no terminating sheet")
    qubits, fkeys, odd_faces = probe
    failing = tuple(("B[%s]:truncated" % k, (side,), "odd overlap") for k in odd_faces)
    return VerdictCell(condenses=not failing, failing=failing)
