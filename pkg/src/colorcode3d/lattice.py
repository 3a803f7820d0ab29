"""Construction of the 4-colored 3D cellulation and its boundaries.

The cellulation is the integer-coordinate honeycomb of truncated
cuboctahedra (48 vertices: all signed permutations of (1,2,3) around
centers on 6Z^3, colored yellow/green by center parity), truncated
octahedra (24 vertices: signed permutations of (0,1,2) around centers on
(3,3,3)+6Z^3, red) and cubes (square prisms between them, purple).  Every
vertex carries a qubit and belongs to one cell of each color; every edge
carries the unique color missing from its three containing cells.

Boundaries are axis-aligned cut planes.  A plane removes the degrees of
freedom beyond it; a Z-kind plane removes cut cells and keeps cut faces
(truncated), an X-kind plane keeps cut cells (truncated) and removes cut
faces.  The minimal model is the patch inside |x|,|y|,|z| < 5.5 with
Z-kind planes on top/bottom and X-kind planes on the four sides; all six
planes cross red edges only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

Coord = tuple[int, int, int]

COLORS = ("y", "g", "p", "r")
SIDES = ("x-", "x+", "y-", "y+", "z-", "z+")
_AXIS = {"x": 0, "y": 1, "z": 2}

_TCO_OFFSETS = tuple(
    sorted(
        {
            (sx * a, sy * b, sz * c)
            for (a, b, c) in itertools.permutations((1, 2, 3))
            for sx in (1, -1)
            for sy in (1, -1)
            for sz in (1, -1)
        }
    )
)
_TO_OFFSETS = tuple(
    sorted(
        {
            (sx * a, sy * b, sz * c)
            for (a, b, c) in itertools.permutations((0, 1, 2))
            for sx in (1, -1)
            for sy in (1, -1)
            for sz in (1, -1)
        }
    )
)


class LatticeConstructionError(RuntimeError):
    pass


class InvalidCutError(ValueError):
    """A truncation surface crosses edges of the wrong color."""


class UnsupportedRequestError(ValueError):
    """Requested membrane/string does not exist on this complex."""


@dataclass(frozen=True)
class BoundarySpec:
    side: str       # one of SIDES
    kind: str       # "Z" or "X"
    cut_color: str  # edge color the plane is allowed to cross

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError("bad side %r" % self.side)
        if self.kind not in ("Z", "X"):
            raise ValueError("kind must be 'Z' or 'X'")
        if self.cut_color not in COLORS:
            raise ValueError("bad color %r" % self.cut_color)


@dataclass(frozen=True)
class CellInfo:
    key: str
    color: str
    kind: str                 # "tco" | "to" | "cube"
    center: Coord
    vertices: frozenset      # full ambient vertex set
    inside: tuple             # sorted inside vertices
    cut_sides: tuple          # sides whose plane splits the vertex set
    status: str               # full | truncated | corner | removed


@dataclass(frozen=True)
class FaceInfo:
    key: str
    cell_colors: frozenset    # colors of the two cells it separates
    edge_colors: frozenset    # complementary pair (membrane type)
    cells: tuple              # the two cell keys
    vertices: frozenset
    inside: tuple
    cycle: tuple              # full-vertex cycle order (geometry export)
    cut_sides: tuple
    status: str               # full | truncated | removed


@dataclass(frozen=True)
class EdgeInfo:
    u: Coord
    v: Coord
    color: str


@dataclass(frozen=True)
class MembraneSupport:
    qubits: tuple             # sorted vertex coords
    color_pair: frozenset
    terminal_sides: tuple
    faces: tuple              # face keys of the sheet


@dataclass(frozen=True)
class StringSupport:
    qubits: tuple
    color: str
    terminal_sides: tuple
    cells: tuple              # color-cell path (cell keys), anchors included


def _cell_offsets(center: Coord):
    cx, cy, cz = (c % 6 for c in center)
    mods = (cx, cy, cz)
    if mods == (0, 0, 0):
        return "tco", _TCO_OFFSETS
    if mods == (3, 3, 3):
        return "to", _TO_OFFSETS
    if sorted(mods) == [0, 3, 3]:
        axis = mods.index(0)
        offsets = []
        for a in (-1, 1):
            for d1, d2 in ((-1, 0), (0, -1), (0, 1), (1, 0)):
                off = [d1, d2]
                off.insert(axis, a)
                offsets.append(tuple(off))
        return "cube", tuple(sorted(offsets))
    return None, ()


def _cell_color(kind: str, center: Coord) -> str:
    if kind == "to":
        return "r"
    if kind == "cube":
        return "p"
    return "y" if (sum(center) // 6) % 2 == 0 else "g"


def _side_of_plane(side: str, plane: float, v: Coord) -> bool:
    """True if v is on the removed side of the plane."""
    axis = _AXIS[side[0]]
    return v[axis] > plane if side[1] == "+" else v[axis] < plane


def _cycle_order(vertices) -> tuple:
    """Deterministic cyclic order of a planar convex face."""
    verts = sorted(vertices)
    if len(verts) <= 3:
        return tuple(verts)
    cx = [sum(v[i] for v in verts) / len(verts) for i in range(3)]
    v0 = [verts[0][i] - cx[i] for i in range(3)]
    normal = None
    for w in verts[1:]:
        wv = [w[i] - cx[i] for i in range(3)]
        n = (
            v0[1] * wv[2] - v0[2] * wv[1],
            v0[2] * wv[0] - v0[0] * wv[2],
            v0[0] * wv[1] - v0[1] * wv[0],
        )
        if any(abs(c) > 1e-9 for c in n):
            normal = n
            break
    if normal is None:
        raise LatticeConstructionError("degenerate face %s" % (verts,))
    e1 = v0
    e2 = (
        normal[1] * e1[2] - normal[2] * e1[1],
        normal[2] * e1[0] - normal[0] * e1[2],
        normal[0] * e1[1] - normal[1] * e1[0],
    )

    def angle(v):
        rv = [v[i] - cx[i] for i in range(3)]
        return math.atan2(
            sum(rv[i] * e2[i] for i in range(3)), sum(rv[i] * e1[i] for i in range(3))
        )

    ordered = sorted(verts, key=angle)
    i0 = ordered.index(verts[0])
    ordered = ordered[i0:] + ordered[:i0]
    if len(ordered) > 2 and ordered[-1] < ordered[1]:
        ordered = [ordered[0]] + ordered[1:][::-1]
    return tuple(ordered)


class CellComplex:
    """A box-shaped patch of the honeycomb plus applied boundary planes.

    Immutable; ``truncate`` returns a new complex with one more boundary
    applied.  Derived views (kept qubits, cells, faces, edges) are computed
    from the ambient patch and the applied boundary set.  A global color
    permutation may relabel the default assignment (alternating 48-vertex
    cells yellow/green, 24-vertex cells red, cubes purple).
    """

    def __init__(
        self,
        planes: dict,
        boundaries: dict | None = None,
        color_permutation: dict | None = None,
    ):
        self.planes = dict(planes)
        self.boundaries: dict[str, BoundarySpec] = dict(boundaries or {})
        if set(self.planes) != set(SIDES):
            raise ValueError("planes must cover all six sides")
        self.color_permutation = dict(color_permutation or {})
        if self.color_permutation and (
            set(self.color_permutation) != set(COLORS)
            or set(self.color_permutation.values()) != set(COLORS)
        ):
            raise ValueError("color permutation must permute %s" % (COLORS,))
        self._ambient_cells = self._generate_cells()
        self._derive()

    # -- construction ------------------------------------------------------

    def _inside(self, v: Coord) -> bool:
        return not any(_side_of_plane(s, self.planes[s], v) for s in SIDES)

    def _generate_cells(self):
        cells = []
        lim = int(max(abs(p) for p in self.planes.values()) + 4)
        grid = range(-(lim // 3) * 3, lim + 1, 3)
        for center in itertools.product(grid, repeat=3):
            kind, offsets = _cell_offsets(center)
            if kind is None:
                continue
            vertices = frozenset(
                (center[0] + o[0], center[1] + o[1], center[2] + o[2]) for o in offsets
            )
            inside = tuple(sorted(v for v in vertices if self._inside(v)))
            if not inside:
                continue
            color = _cell_color(kind, center)
            color = self.color_permutation.get(color, color)
            cells.append((color, kind, center, vertices, inside))
        cells.sort(key=lambda c: (c[0], c[2]))
        return cells

    def _cell_status(self, cut_sides):
        if not cut_sides:
            return "full"
        kinds = [self.boundaries[s].kind for s in cut_sides if s in self.boundaries]
        if len(kinds) < len(cut_sides):
            return "open"  # crosses a side with no boundary applied yet
        if "Z" in kinds:
            return "removed"
        return "corner" if len(cut_sides) >= 2 else "truncated"

    def _face_status(self, cut_sides):
        if not cut_sides:
            return "full"
        kinds = [self.boundaries[s].kind for s in cut_sides if s in self.boundaries]
        if len(kinds) < len(cut_sides):
            return "open"
        if "X" in kinds:
            return "removed"
        return "truncated"

    def _derive(self):
        qubits = sorted({v for c in self._ambient_cells for v in c[4]})
        self.qubits: tuple = tuple(qubits)
        self.index = {v: i for i, v in enumerate(qubits)}
        inside_set = set(qubits)

        cells = []
        for color, kind, center, vertices, inside in self._ambient_cells:
            cut = tuple(
                s
                for s in SIDES
                if any(_side_of_plane(s, self.planes[s], v) for v in vertices)
            )
            cells.append(
                CellInfo(
                    key="%s%s" % (color, _fmt(center)),
                    color=color,
                    kind=kind,
                    center=center,
                    vertices=vertices,
                    inside=inside,
                    cut_sides=cut,
                    status=self._cell_status(cut),
                )
            )
        self.cells: tuple = tuple(cells)
        self.cell_by_key = {c.key: c for c in self.cells}

        # vertex -> cells (for edge coloring and color-cell graphs)
        by_vertex: dict[Coord, list[CellInfo]] = {}
        for c in self.cells:
            for v in c.vertices:
                by_vertex.setdefault(v, []).append(c)

        faces = []
        seen_faces = set()
        for i, a in enumerate(self.cells):
            partners: dict[str, set] = {}
            for v in a.vertices:
                for b in by_vertex.get(v, ()):
                    if b.key <= a.key:
                        continue
                    partners.setdefault(b.key, set()).add(v)
            for bkey, shared in sorted(partners.items()):
                if len(shared) < 4:
                    continue
                b = self.cell_by_key[bkey]
                fkey = tuple(sorted(shared))
                if fkey in seen_faces:
                    continue
                seen_faces.add(fkey)
                cut = tuple(
                    s
                    for s in SIDES
                    if any(_side_of_plane(s, self.planes[s], v) for v in shared)
                )
                inside = tuple(sorted(v for v in shared if v in inside_set))
                if not inside:
                    continue
                cell_colors = frozenset((a.color, b.color))
                if len(cell_colors) != 2:
                    raise LatticeConstructionError(
                        "face between same-colored cells %s %s" % (a.key, b.key)
                    )
                faces.append(
                    FaceInfo(
                        key="%s|%s" % (a.key, b.key),
                        cell_colors=cell_colors,
                        edge_colors=frozenset(COLORS) - cell_colors,
                        cells=(a.key, b.key),
                        vertices=frozenset(shared),
                        inside=inside,
                        cycle=_cycle_order(shared),
                        cut_sides=cut,
                        status=self._face_status(cut),
                    )
                )
        faces.sort(key=lambda f: f.key)
        self.faces: tuple = tuple(faces)

        ambient_edges: dict[tuple, str] = {}
        for f in self.faces:
            cyc = f.cycle
            for k in range(len(cyc)):
                u, v = cyc[k], cyc[(k + 1) % len(cyc)]
                if u not in inside_set and v not in inside_set:
                    continue
                ekey = (u, v) if u < v else (v, u)
                if ekey in ambient_edges:
                    continue
                shared_cells = [c for c in by_vertex.get(u, ()) if v in c.vertices]
                colors = {c.color for c in shared_cells}
                if len(shared_cells) != 3 or len(colors) != 3:
                    raise LatticeConstructionError(
                        "edge %s-%s lies in cells of colors %s" % (u, v, sorted(colors))
                    )
                (color,) = set(COLORS) - colors
                ambient_edges[ekey] = color
        self._ambient_edges: tuple = tuple(
            EdgeInfo(u, v, color) for (u, v), color in sorted(ambient_edges.items())
        )
        self.edges: tuple = tuple(
            e
            for e in self._ambient_edges
            if e.u in inside_set and e.v in inside_set
        )

    # -- boundary application ----------------------------------------------

    def truncate(self, spec: BoundarySpec) -> "CellComplex":
        if spec.side in self.boundaries:
            raise ValueError("side %s already has a boundary" % spec.side)
        plane = self.planes[spec.side]
        for e in self._edges_crossing(spec.side, plane):
            if e.color != spec.cut_color:
                raise InvalidCutError(
                    "plane %s=%.1f crosses a %s edge %s-%s; declared cut color %s"
                    % (spec.side, plane, e.color, e.u, e.v, spec.cut_color)
                )
        return CellComplex(
            self.planes,
            {**self.boundaries, spec.side: spec},
            self.color_permutation,
        )

    def _edges_crossing(self, side: str, plane: float):
        axis = _AXIS[side[0]]
        out = []
        for e in self._ambient_edges:
            lo, hi = sorted((e.u[axis], e.v[axis]))
            if lo < plane < hi:
                out.append(e)
        return out

    # -- views ---------------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.qubits

    def x_cells(self):
        """Cells carrying X-stabilizers (full, truncated or corner)."""
        return [c for c in self.cells if c.status in ("full", "truncated", "corner")]

    def z_faces(self):
        """Faces carrying Z-stabilizers (full or truncated)."""
        return [f for f in self.faces if f.status in ("full", "truncated")]

    def census(self) -> dict:
        out = {
            "n_qubits": len(self.qubits),
            "cells_full": {}, "cells_truncated": {}, "cells_corner": {},
            "cells_removed": {},
            "x_stabilizers": 0,
            "z_faces_full": 0,
            "z_faces_truncated": 0,
        }
        for c in self.cells:
            bucket = "cells_%s" % c.status if c.status != "open" else None
            if bucket and bucket in out:
                out[bucket][c.color] = out[bucket].get(c.color, 0) + 1
        out["x_stabilizers"] = len(self.x_cells())
        out["z_faces_full"] = sum(1 for f in self.faces if f.status == "full")
        out["z_faces_truncated"] = sum(1 for f in self.faces if f.status == "truncated")
        return out

    # -- sublattice signing ---------------------------------------------------

    def bipartition(self):
        """Two-coloring of the kept vertex graph as +1/-1 signs (qubit order);
        raises on odd cycles and verifies every kept cell is balanced."""
        adjacency: dict[Coord, list] = {v: [] for v in self.qubits}
        for e in self.edges:
            adjacency[e.u].append(e.v)
            adjacency[e.v].append(e.u)
        signs = two_coloring(self.qubits, adjacency)
        for c in self.x_cells():
            total = sum(signs[self.index[v]] for v in c.inside)
            if total != 0:
                raise LatticeConstructionError(
                    "cell %s not balanced between sublattice classes" % c.key
                )
        from .xp import SublatticeSigning

        return SublatticeSigning(tuple(signs))

    # -- color-cell graph, strings, membranes ---------------------------------

    def color_cell_graph(self, color: str):
        """Nodes: cells of the color; links: same-color lattice edges, each
        joining the endpoint cells of that color."""
        nodes = {c.key: c for c in self.cells if c.color == color}
        cell_of_vertex: dict[Coord, str] = {}
        for c in self.cells:
            if c.color != color:
                continue
            for v in c.vertices:
                cell_of_vertex[v] = c.key
        links: dict[str, list] = {k: [] for k in nodes}
        for e in self.edges:
            if e.color != color:
                continue
            cu, cv = cell_of_vertex.get(e.u), cell_of_vertex.get(e.v)
            if cu is None or cv is None or cu == cv:
                raise LatticeConstructionError("bad %s edge %s-%s" % (color, e.u, e.v))
            links[cu].append((cv, e))
            links[cv].append((cu, e))
        for k in links:
            links[k].sort(key=lambda t: (t[0], t[1].u, t[1].v))
        return nodes, links

    def removal_anchors(self, color: str, side: str) -> list:
        """Cells of the color whose X-stabilizer was removed by the cut at
        ``side`` (the side must be Z-kind for any to exist)."""
        out = []
        for c in self.cells:
            if c.color != color or c.status != "removed":
                continue
            removing = [
                s
                for s in c.cut_sides
                if s in self.boundaries and self.boundaries[s].kind == "Z"
            ]
            if removing == [side]:
                out.append(c)
        return sorted(out, key=lambda c: c.key)

    def _bfs_path(self, links, sources, targets, allowed):
        """Deterministic shortest path in the color-cell graph."""
        from collections import deque

        prev: dict[str, tuple] = {}
        queue = deque()
        for s in sorted(sources):
            prev[s] = None
            queue.append(s)
        target_set = set(targets)
        while queue:
            node = queue.popleft()
            if node in target_set:
                path = []
                cur: str | None = node
                while prev[cur] is not None:
                    parent, edge = prev[cur]
                    path.append((parent, cur, edge))
                    cur = parent
                return list(reversed(path))
            for nxt, edge in links[node]:
                if nxt in prev or (nxt not in allowed and nxt not in target_set):
                    continue
                prev[nxt] = (node, edge)
                queue.append(nxt)
        return None

    def string_support(self, color: str, spanning: tuple) -> StringSupport:
        """Z-string of the given color between two Z-kind boundary sides."""
        side_a, side_b = spanning
        if side_a == side_b:
            raise UnsupportedRequestError("spanning sides must differ")
        for s in (side_a, side_b):
            if self.boundaries.get(s) is None or self.boundaries[s].kind != "Z":
                raise UnsupportedRequestError("side %s is not a Z-boundary" % s)
        nodes, links = self.color_cell_graph(color)
        anchors_a = [c.key for c in self.removal_anchors(color, side_a)]
        anchors_b = [c.key for c in self.removal_anchors(color, side_b)]
        if not anchors_a or not anchors_b:
            raise UnsupportedRequestError(
                "no removed %s-cells anchor a string at %s/%s" % (color, side_a, side_b)
            )
        kept = {c.key for c in self.x_cells() if c.color == color}
        path = self._bfs_path(links, anchors_a, anchors_b, kept)
        if path is None:
            raise UnsupportedRequestError("no %s-string connects %s to %s" % (color, side_a, side_b))
        support: set = set()
        cells = [path[0][0]]
        for parent, node, edge in path:
            support ^= {edge.u, edge.v}
            cells.append(node)
        return StringSupport(
            qubits=tuple(sorted(support)),
            color=color,
            terminal_sides=(side_a, side_b),
            cells=tuple(cells),
        )

    def string_probe(self, color: str, side: str, from_side: str) -> tuple:
        """Best-effort string from a clean anchor at ``from_side`` toward a
        kept cell at ``side``; returns (StringSupport, terminal_key,
        terminates_cleanly)."""
        nodes, links = self.color_cell_graph(color)
        anchors = [c.key for c in self.removal_anchors(color, from_side)]
        if not anchors:
            raise UnsupportedRequestError("no anchors at %s" % from_side)
        clean_targets = [c.key for c in self.removal_anchors(color, side)]
        if clean_targets:
            sup = self.string_support(color, (from_side, side))
            return sup, sup.cells[-1], True
        # terminate on the kept cells truncated by the side
        targets = sorted(
            c.key
            for c in self.cells
            if c.color == color
            and c.status in ("truncated", "corner")
            and side in c.cut_sides
        )
        if not targets:
            raise UnsupportedRequestError(
                "no %s-cells adjacent to side %s" % (color, side)
            )
        kept = {c.key for c in self.x_cells() if c.color == color}
        path = self._bfs_path(links, anchors, targets, kept)
        if path is None:
            raise UnsupportedRequestError("no path toward %s" % side)
        support: set = set()
        cells = [path[0][0]]
        for parent, node, edge in path:
            support ^= {edge.u, edge.v}
            cells.append(node)
        sup = StringSupport(
            qubits=tuple(sorted(support)),
            color=color,
            terminal_sides=(from_side, side),
            cells=tuple(cells),
        )
        return sup, cells[-1], False

    def membrane_candidates(self, color_pair: frozenset, kept_cells_only: bool = True):
        """Full faces of the given edge-color type.  By default only faces
        between kept cells qualify: sheets on faces of removed cells sit in
        the boundary shadow and can slide out through corner regions."""
        removed = {c.key for c in self.cells if c.status == "removed"}
        out = []
        for f in self.faces:
            if f.status != "full" or f.edge_colors != frozenset(color_pair):
                continue
            if kept_cells_only and (f.cells[0] in removed or f.cells[1] in removed):
                continue
            out.append(f)
        return out

    def membrane_support(self, color_pair, spanning: tuple) -> MembraneSupport:
        """Minimal sheet of full faces of the given edge-color pair whose X
        operator commutes with every kept Z-face and is logically paired
        with the partner-color string."""
        color_pair = frozenset(color_pair)
        side_a, side_b = spanning
        if side_a == side_b:
            raise UnsupportedRequestError("spanning sides must differ")
        for s in (side_a, side_b):
            if self.boundaries.get(s) is None or self.boundaries[s].kind != "X":
                raise UnsupportedRequestError("side %s is not an X-boundary" % s)
        if side_a[0] != side_b[0]:
            raise UnsupportedRequestError("spanning sides must be opposite")
        candidates = self.membrane_candidates(color_pair)
        if not candidates:
            raise UnsupportedRequestError("no %s faces available" % sorted(color_pair))
        # same-type faces never share a vertex, so sheet supports add up
        counts: dict[Coord, int] = {}
        for f in candidates:
            for v in f.inside:
                if v in counts:
                    raise LatticeConstructionError("same-type faces share a vertex")
                counts[v] = 1

        partner = self._partner_color(color_pair)
        z_sides = tuple(
            s for s in SIDES if s in self.boundaries and self.boundaries[s].kind == "Z"
        )
        if len(z_sides) != 2:
            raise UnsupportedRequestError("complex lacks a Z-side pair for validation")
        partner_string = self.string_support(partner, z_sides)
        string_set = set(partner_string.qubits)

        from .gf2 import BitMatrix, BitVector as BV, solve_kernel_right, solve_right

        n_c = len(candidates)
        rows = []
        for zf in self.z_faces():
            zset = set(zf.inside)
            bits = 0
            for j, f in enumerate(candidates):
                if len(zset.intersection(f.inside)) & 1:
                    bits |= 1 << j
            rows.append(BV(n_c, bits))
        # pairing row: sheet must anticommute with the partner string
        pairing_bits = 0
        for j, f in enumerate(candidates):
            if len(string_set.intersection(f.inside)) & 1:
                pairing_bits |= 1 << j
        rows.append(BV(n_c, pairing_bits))
        system = BitMatrix(n_c, rows)
        rhs = BV.from_indices(len(rows), [len(rows) - 1])
        solution = solve_right(system, rhs)
        if solution is None:
            raise UnsupportedRequestError(
                "no %s membrane spans %s-%s" % (sorted(color_pair), side_a, side_b)
            )
        kernel = solve_kernel_right(system)

        weights = [len(f.inside) for f in candidates]

        def qubit_weight(bits: int) -> int:
            return sum(w for j, w in enumerate(weights) if (bits >> j) & 1)

        # greedy descent to a light representative (deterministic)
        sel = solution.bits
        basis = sorted((k.bits for k in kernel.rows), key=qubit_weight)
        improved = True
        while improved:
            improved = False
            for b in basis:
                if qubit_weight(sel ^ b) < qubit_weight(sel):
                    sel ^= b
                    improved = True
        support: set = set()
        fkeys = []
        for j, f in enumerate(candidates):
            if (sel >> j) & 1:
                support |= set(f.inside)
                fkeys.append(f.key)
        return MembraneSupport(
            qubits=tuple(sorted(support)),
            color_pair=color_pair,
            terminal_sides=(side_a, side_b),
            faces=tuple(sorted(fkeys)),
        )

    def membrane_probe(self, color_pair, side: str):
        """Sheet of full faces of the given type that commutes with every
        kept Z-face except those truncated by ``side`` (where it must fail):
        the canonical attempt to terminate a membrane on that side.

        Returns (qubits, face keys, odd-overlap faces at the side) or None
        when no such sheet exists."""
        color_pair = frozenset(color_pair)
        candidates = self.membrane_candidates(color_pair, kept_cells_only=False)
        if not candidates:
            return None
        from .gf2 import BitMatrix, BitVector as BV, solve_kernel_right, solve_right

        n_c = len(candidates)
        excluded = [f for f in self.z_faces() if side in f.cut_sides]
        if not excluded:
            return None
        def parity_row(zf):
            zset = set(zf.inside)
            return BV(
                n_c,
                sum(
                    1 << j
                    for j, f in enumerate(candidates)
                    if len(zset.intersection(f.inside)) & 1
                ),
            )

        base_rows = [
            parity_row(zf) for zf in self.z_faces() if side not in zf.cut_sides
        ]
        # demand an odd overlap with some face truncated by the side
        solution = None
        system = None
        for zf in sorted(excluded, key=lambda f: f.key):
            rows = base_rows + [parity_row(zf)]
            trial = BitMatrix(n_c, rows)
            sol = solve_right(trial, BV.from_indices(len(rows), [len(rows) - 1]))
            if sol is not None:
                solution, system = sol, trial
                break
        if solution is None:
            return None
        kernel = solve_kernel_right(system)
        weights = [len(f.inside) for f in candidates]

        def qubit_weight(bits):
            return sum(w for j, w in enumerate(weights) if (bits >> j) & 1)

        sel = solution.bits
        improved = True
        basis = sorted((k.bits for k in kernel.rows), key=qubit_weight)
        while improved:
            improved = False
            for b in basis:
                if qubit_weight(sel ^ b) < qubit_weight(sel):
                    sel ^= b
                    improved = True
        support: set = set()
        fkeys = []
        for j, f in enumerate(candidates):
            if (sel >> j) & 1:
                support |= set(f.inside)
                fkeys.append(f.key)
        odd_at_side = [
            zf.key
            for zf in excluded
            if len(set(zf.inside) & support) & 1
        ]
        return tuple(sorted(support)), tuple(sorted(fkeys)), tuple(odd_at_side)

    @staticmethod
    def _partner_color(color_pair: frozenset) -> str:
        rest = set(COLORS) - set(color_pair) - {"r"}
        if "r" in color_pair or len(rest) != 1:
            raise UnsupportedRequestError("membranes exist for r-free color pairs only")
        return rest.pop()

    # -- export ----------------------------------------------------------------

    def export_text(self) -> str:
        lines = ["# cell-complex v1"]
        for side in SIDES:
            spec = self.boundaries.get(side)
            if spec:
                lines.append(
                    "boundary %s kind=%s cut=%s plane=%g"
                    % (side, spec.kind, spec.cut_color, self.planes[side])
                )
        lines.append("qubits %d" % len(self.qubits))
        for i, v in enumerate(self.qubits):
            lines.append("vertex %d %d %d %d" % (i, *v))
        for e in self.edges:
            lines.append(
                "edge %d %d %s" % (self.index[e.u], self.index[e.v], e.color)
            )
        for f in self.faces:
            if f.status == "removed":
                continue
            lines.append(
                "face %s [%s] %s : %s"
                % (
                    f.key,
                    "".join(sorted(f.cell_colors)),
                    f.status,
                    " ".join(str(self.index[v]) for v in f.inside),
                )
            )
        for c in self.cells:
            if c.status == "removed":
                continue
            lines.append(
                "cell %s [%s] %s %s : %s"
                % (
                    c.key,
                    c.color,
                    c.kind,
                    c.status,
                    " ".join(str(self.index[v]) for v in c.inside),
                )
            )
        return "\n".join(lines) + "\n"


def _fmt(center: Coord) -> str:
    return "(%d,%d,%d)" % center


def two_coloring(vertices, adjacency) -> list:
    """BFS 2-coloring returning +1/-1 per vertex in listed order; raises
    LatticeConstructionError when an odd cycle is found."""
    sign: dict = {}
    for start in vertices:
        if start in sign:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adjacency[u]:
                if v not in sign:
                    sign[v] = -sign[u]
                    stack.append(v)
                elif sign[v] == sign[u]:
                    raise LatticeConstructionError(
                        "vertex graph is not bipartite (odd cycle through %s-%s)" % (u, v)
                    )
    return [sign[v] for v in vertices]


MINIMAL_MODEL_PLANES = {
    "x-": -5.5, "x+": 5.5, "y-": -5.5, "y+": 5.5, "z-": -5.5, "z+": 5.5
}


def ambient_minimal_patch(color_permutation: dict | None = None) -> CellComplex:
    """The working patch of the minimal model before boundary application."""
    return CellComplex(MINIMAL_MODEL_PLANES, color_permutation=color_permutation)


def _build_minimal(color_permutation: dict | None) -> CellComplex:
    complex_ = ambient_minimal_patch(color_permutation)
    cut = (color_permutation or {}).get("r", "r")
    for side in ("x-", "x+", "y-", "y+"):
        complex_ = complex_.truncate(BoundarySpec(side, "X", cut))
    for side in ("z-", "z+"):
        complex_ = complex_.truncate(BoundarySpec(side, "Z", cut))
    return complex_


@lru_cache(maxsize=4)
def _build_minimal_cached(perm_items) -> CellComplex:
    return _build_minimal(dict(perm_items) if perm_items else None)


def build_minimal_model(color_permutation: dict | None = None) -> CellComplex:
    """One central 48-vertex cell, eight red cells on its hexagons, twelve
    purple cubes on its squares; Z-boundaries top/bottom, X-boundaries on
    the remaining four sides.  192 qubits."""
    items = tuple(sorted(color_permutation.items())) if color_permutation else None
    return _build_minimal_cached(items)


def empty_complex() -> CellComplex:
    planes = {s: 0.2 if s.endswith("+") else -0.2 for s in SIDES}
    return CellComplex(planes)
