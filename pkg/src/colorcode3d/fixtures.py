"""Hard-coded toric-code sublattice fixtures.

These are the three single-copy codes living on the edge sublattices of the
minimal model (green and yellow on 28 qubits, purple on 96), recorded as
1-indexed generator tables together with their printed logical operators.
Each encodes one qubit; the three together account for the minimal model's
three logical qubits.
"""

from __future__ import annotations

from .codes import StabilizerCode
from .xp import PauliOperator

GREEN_N = 28

# Vertex stars carry the full incident edge set: ring edges, vertical
# spokes and the boundary stubs the two-body plaquettes attach to them.
# The stub factors and the inner plaquette B5 = Z5 Z9 Z10 are pinned by
# mutual commutation and the closure relation prod(B1..B8) = 1.
GREEN_X = (
    (1, 5, 8, 9, 19, 20, 27, 28),
    (2, 5, 6, 10, 13, 14, 21, 22),
    (3, 6, 7, 11, 15, 16, 23, 24),
    (4, 7, 8, 12, 17, 18, 25, 26),
)

GREEN_Z = (
    (1, 2, 5), (2, 3, 6), (3, 4, 7), (1, 4, 8),
    (5, 9, 10), (6, 10, 11), (7, 11, 12), (8, 9, 12),
    (1, 20), (2, 13), (2, 14), (3, 15),
    (3, 16), (4, 17), (4, 18), (1, 19),
    (9, 27), (9, 28), (10, 21), (10, 22),
    (11, 23), (11, 24), (12, 25), (12, 26),
    (5, 13, 20), (6, 14, 15), (7, 16, 17), (8, 18, 19),
    (5, 21, 28), (6, 22, 23), (7, 24, 25), (8, 26, 27),
)

GREEN_LOGICAL_X = (9, 10, 11, 12, 21, 22, 23, 24, 25, 26, 27, 28)
GREEN_LOGICAL_Z = (3, 11)

YELLOW_N = 28

# Corner stars include the edge linking them to the central vertex
# (qubits 13..16), again pinned by commutation with the plaquette list.
YELLOW_X = (
    (6, 7, 14, 18, 19),
    (5, 12, 13, 17, 24),
    (10, 11, 16, 22, 23),
    (8, 9, 15, 20, 21),
    (1, 2, 3, 4, 13, 14, 15, 16, 25, 26, 27, 28),
)

YELLOW_Z = (
    (1, 5, 13), (1, 6, 14), (2, 7, 14), (2, 8, 15),
    (3, 9, 15), (3, 10, 16), (4, 11, 16), (4, 12, 13),
    (13, 17, 25), (14, 18, 25), (14, 19, 26), (15, 20, 26),
    (15, 21, 27), (16, 22, 27), (16, 23, 28), (13, 24, 28),
    (1, 2), (2, 3), (3, 4), (1, 4),
    (25, 28), (25, 26), (26, 27), (27, 28),
    (6, 7), (8, 9), (10, 11), (5, 12),
    (18, 19), (20, 21), (22, 23), (17, 24),
)

YELLOW_LOGICAL_X = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12)
YELLOW_LOGICAL_Z = (2, 26)


PURPLE_N = 96

PURPLE_X = (
    (17,20,21,24,37,49,51,58), (34,48,49,56), (20,35,50,57), (12,13,39,41,51,52,59,61),
    (4,5,21,22,40,42,60,62), (19,22,23,25,44,52,54,63), (46,53,54,64), (23,47,55,65),
    (34,36,37,39), (17,35,38,40), (41,43,44,46), (19,42,45,47),
    (14,15,56,58,59,66,68,69), (6,7,24,26,57,60,67,70), (9,16,61,63,64,71,73,74), (1,8,25,27,62,65,72,75),
    (26,28,29,31,68,77,79,86), (66,76,77,83), (28,67,78,84), (10,11,33,69,71,79,88,90),
    (2,3,18,29,70,72,89,91), (18,27,30,32,33,73,81,93), (74,80,81,95), (30,75,82,96),
    (83,85,86,88), (31,84,87,89), (90,92,93,95), (32,91,94,96),
)

PURPLE_Z = (
    (34,36,48), (35,38,50), (37,39,51), (17,21,40),
    (41,44,52), (19,22,42), (21,22,51,52), (43,46,53),
    (45,47,55), (49,56,58), (20,24,57), (66,68,77),
    (26,28,67), (24,26,58,68), (12,14,59), (13,16,61),
    (11,15,69), (9,10,71), (12,13), (14,15),
    (59,61,69,71), (9,16), (10,11), (4,6,60),
    (5,8,62), (3,7,70), (1,2,72), (4,5),
    (6,7), (60,62,70,72), (1,8), (2,3),
    (54,63,64), (23,25,65), (73,74,81), (27,30,75),
    (25,27,63,73), (76,83,85), (78,84,87), (79,86,88),
    (29,31,89), (33,90,93), (18,32,91), (18,29,33,79),
    (80,92,95), (82,94,96), (34,37,49), (12,36,39),
    (14,48,56), (51,58,59), (17,20,35), (4,38,40),
    (6,50,57), (21,24,60), (13,41,43), (44,46,54),
    (52,61,63), (16,53,64), (5,42,45), (19,23,47),
    (22,25,62), (8,55,65), (15,66,76), (68,69,79),
    (77,83,86), (11,85,88), (7,67,78), (26,29,70),
    (28,31,84), (3,87,89), (33,71,73), (9,74,80),
    (10,90,92), (81,93,95), (18,27,72), (1,75,82),
    (2,91,94), (30,32,96),
)

PURPLE_LOGICAL_X = (17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32)
PURPLE_LOGICAL_Z = (2, 10, 18, 33)

_TABLES = {
    "green": (GREEN_N, GREEN_X, GREEN_Z, GREEN_LOGICAL_X, GREEN_LOGICAL_Z),
    "yellow": (YELLOW_N, YELLOW_X, YELLOW_Z, YELLOW_LOGICAL_X, YELLOW_LOGICAL_Z),
    "purple": (PURPLE_N, PURPLE_X, PURPLE_Z, PURPLE_LOGICAL_X, PURPLE_LOGICAL_Z),
}


def sublattice_fixture(which: str) -> StabilizerCode:
    """The named single-copy fixture as a StabilizerCode (0-indexed qubits)."""
    if which not in _TABLES:
        raise KeyError("unknown fixture %r (green|yellow|purple)" % which)
    n, xs, zs, _, _ = _TABLES[which]
    return StabilizerCode(
        n=n,
        x_generators=tuple(PauliOperator.x_on(n, [q - 1 for q in s]) for s in xs),
        z_generators=tuple(PauliOperator.z_on(n, [q - 1 for q in s]) for s in zs),
        x_labels=tuple("A%d" % (i + 1) for i in range(len(xs))),
        z_labels=tuple("B%d" % (i + 1) for i in range(len(zs))),
        meta={"fixture": which},
    )


def fixture_logicals(which: str):
    """(X logical, Z logical) of the named fixture, as recorded."""
    n, _, _, lx, lz = _TABLES[which]
    return (
        PauliOperator.x_on(n, [q - 1 for q in lx]),
        PauliOperator.z_on(n, [q - 1 for q in lz]),
    )
