"""Acceptance criteria, one test per criterion, exact tolerances.

Run ``pytest tests/test_acceptance.py -v -s`` for one PASS line per
criterion, or ``python tests/test_acceptance.py`` standalone.
"""

import random
import sys

import numpy as np

from colorcode3d.anyons import (
    classify_boundaries,
    condensation_grid,
    enumerate_isotropic,
    enumerate_lagrangians,
    enumerate_three_dim_subgroups,
)
from colorcode3d.codes import (
    LogicalPair,
    assemble_color_code,
    cubic_slab,
    cubic_torus,
    gauge_z2,
    is_logical_pair_valid,
    logical_qubit_count,
    relation_count,
    slab_logicals,
    verify_commutation,
)
from colorcode3d.fixtures import fixture_logicals, sublattice_fixture
from colorcode3d.gf2 import BitVector
from colorcode3d.lattice import build_minimal_model
from colorcode3d.verify import bulk_symmetry_check, condenses, magic_boundary_report
from colorcode3d.xp import XPOperator, group_commutator

from oracle import mat_eq, xp_matrix


def _pass(num, name):
    print("ACCEPTANCE %d %s: PASS" % (num, name))


# -- 1 ------------------------------------------------------------------------


def test_criterion_1_lagrangian_census():
    assert len(enumerate_three_dim_subgroups()) == 1395
    assert len(enumerate_isotropic()) == 135
    assert (2**1 + 1) * (2**2 + 1) * (2**3 + 1) == 135
    assert len(enumerate_lagrangians()) == 30
    _pass(1, "lagrangian census 1395/135/30")


# -- 2 ------------------------------------------------------------------------

# Columns: s12, s23, s13, s12*s23, s23*s13, s12*s13 (table order for
# (i,j,k) = (1,2,3)), then the triple composite (derived from the wall
# stabilizer subgroups), then the codimension-1 wall.
TABLE_GRID = [
    [True,  True,  True,  True,  True,  True,  True,  True],   # (e1,e2,e3)
    [False, False, False, False, False, False, False, False],  # (m1,m2,m3)
    [True,  False, True,  False, False, True,  False, True],   # (e1,m2,m3)
    [True,  True,  True,  True,  True,  True,  True,  True],   # (e1,e2,m3)
    [True,  True,  True,  True,  True,  True,  True,  True],   # fold|e
    [True,  False, False, False, True,  False, True,  True],   # fold|m
    [True,  True,  True,  True,  True,  True,  True,  True],   # mmm
    [False, False, False, True,  True,  True,  False, True],   # eee
]


def test_criterion_2_condensation_table():
    assert condensation_grid() == TABLE_GRID
    _pass(2, "condensation grid 8x8 cell-for-cell")


# -- 3, 4 -----------------------------------------------------------------------


def test_criterion_3_nested_count():
    report = classify_boundaries()
    assert report.nested_total == 70
    assert report.nested_breakdown == {
        "X-boundary": 56, "eee": 2, "fold|m": 6, "color": 6
    }
    assert list(report.orbit_size_multiset) == [8] * 8 + [2] * 14 + [1] * 8
    sizes = sorted((len(o) for o in report.orbits), reverse=True)
    assert sizes == [8] + [2] * 7 + [1] * 8
    _pass(3, "nested boundaries 70 = 56+2+6+6")


def test_criterion_4_total_classification():
    report = classify_boundaries()
    assert report.elementary_total == 30
    assert report.magic_designated == 1
    assert report.total == 101
    _pass(4, "total classification 30+70+1 = 101")


# -- 5 ------------------------------------------------------------------------


def test_criterion_5_minimal_model_census():
    model = build_minimal_model()
    code = assemble_color_code(model)
    assert code.n == 192
    by_color = {}
    for c in model.x_cells():
        by_color[c.color] = by_color.get(c.color, 0) + 1
    assert by_color == {"r": 8, "g": 4, "y": 5, "p": 28}
    assert len(code.x_generators) == 45
    assert len(code.z_generators) == 206
    assert relation_count(code) == 62
    assert logical_qubit_count(code) == 3
    _pass(5, "minimal model census 192/45(8,4,5,28)/206/62/k=3")


# -- 6 ------------------------------------------------------------------------


def test_criterion_6_sublattice_fixtures():
    expected = {
        "green": (28, 4, 32, 9),
        "yellow": (28, 5, 32, 10),
        "purple": (96, 28, 78, 11),
    }
    total_k = 0
    for name, (n, nx, nz, rel) in expected.items():
        code = sublattice_fixture(name)
        verify_commutation(code)
        assert code.n == n
        assert len(code.x_generators) == nx
        assert len(code.z_generators) == nz
        assert relation_count(code) == rel
        k = logical_qubit_count(code)
        assert k == 1
        total_k += k
        lx, lz = fixture_logicals(name)
        assert is_logical_pair_valid(code, LogicalPair(lx, lz, name))
    model_k = logical_qubit_count(assemble_color_code(build_minimal_model()))
    assert total_k == model_k == 3
    _pass(6, "sublattice fixtures and k sum 1+1+1 = 3")


# -- 7 ------------------------------------------------------------------------


def test_criterion_7_operator_algebra():
    X1 = XPOperator(1, 4, 0, BitVector(1, 1), (0,))
    XS = XPOperator(1, 4, 0, BitVector(1, 1), (1,))
    XSdag = XPOperator(1, 4, 0, BitVector(1, 1), (3,))
    iZ = XPOperator(1, 4, 2, BitVector(1, 0), (2,))
    minus_iZ = XPOperator(1, 4, 6, BitVector(1, 0), (2,))
    assert group_commutator(X1, XS) == iZ
    assert group_commutator(X1, XSdag) == minus_iZ

    rng = random.Random(0xC0DE)
    checked = 0
    while checked < 1000:
        n = rng.randint(1, 4)
        a = XPOperator(
            n, 4, rng.randrange(8), BitVector(n, rng.randrange(2**n)),
            [rng.randrange(4) for _ in range(n)],
        )
        b = XPOperator(
            n, 4, rng.randrange(8), BitVector(n, rng.randrange(2**n)),
            [rng.randrange(4) for _ in range(n)],
        )
        assert mat_eq(xp_matrix(a * b), xp_matrix(a) @ xp_matrix(b))
        assert mat_eq(xp_matrix(a.inverse()), np.linalg.inv(xp_matrix(a)))
        assert mat_eq(
            xp_matrix(group_commutator(a, b)),
            np.linalg.inv(xp_matrix(b))
            @ np.linalg.inv(xp_matrix(a))
            @ xp_matrix(b)
            @ xp_matrix(a),
        )
        checked += 1
    _pass(7, "operator algebra: K identities and 1000-pair oracle agreement")


# -- 8 ------------------------------------------------------------------------


def test_criterion_8_bulk_symmetry():
    result = bulk_symmetry_check(build_minimal_model())
    assert result["all_ok"]
    witnesses = [w for key, w in result.items() if key != "all_ok"]
    assert len(witnesses) == 63
    for w in witnesses:
        assert w.z_reducible and w.in_z_span and w.phase_exponent == 0
    _pass(8, "bulk 0-form symmetry: all commutators absorbed with unit phase")


# -- 9 ------------------------------------------------------------------------


def test_criterion_9_magic_boundary():
    report = magic_boundary_report(build_minimal_model())
    x_sides = [s for s in report.sides if s.startswith(("x", "y"))]
    z_sides = [s for s in report.sides if s.startswith("z")]
    for op in ("pg_x", "py_x", "yg_x"):
        for side in x_sides:
            cell = report.post[(op, side)]
            assert not cell.condenses
            assert len(cell.failing) >= 1, (op, side)
    for op in ("y_z", "g_z", "p_z"):
        for side in x_sides:
            cell = report.post[(op, side)]
            assert not cell.condenses
            assert len(cell.failing) >= 1, (op, side)
    assert report.z_sides_unchanged()
    for op in ("y_z", "g_z", "p_z"):
        for side in z_sides:
            assert report.pre[(op, side)].condenses
            assert report.post[(op, side)].condenses
    assert report.lattice_matches_symbolic()
    _pass(9, "magic boundary: verdict matrix exact and symbolically confirmed")


# -- 10 -----------------------------------------------------------------------


def test_criterion_10_gauging():
    torus = gauge_z2(cubic_torus(2))
    assert logical_qubit_count(torus) == 3
    matter = cubic_slab(2, 2, 2)
    slab = gauge_z2(matter)
    z_string, x_membrane = slab_logicals(matter, slab)
    assert condenses(slab, z_string, "rough string").condenses
    assert condenses(slab, x_membrane, "smooth membrane").condenses
    _pass(10, "gauging: 3-torus k=3; slab string/membrane condensation")


CRITERIA = [
    test_criterion_1_lagrangian_census,
    test_criterion_2_condensation_table,
    test_criterion_3_nested_count,
    test_criterion_4_total_classification,
    test_criterion_5_minimal_model_census,
    test_criterion_6_sublattice_fixtures,
    test_criterion_7_operator_algebra,
    test_criterion_8_bulk_symmetry,
    test_criterion_9_magic_boundary,
    test_criterion_10_gauging,
]


def main() -> int:
    failures = 0
    for i, fn in enumerate(CRITERIA, start=1):
        try:
            fn()
        except AssertionError as exc:
            failures += 1
            print("ACCEPTANCE %d %s: FAIL (%s)" % (i, fn.__name__, exc))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
