import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colorcode3d.gf2 import (
    BitMatrix,
    BitVector,
    Gf2DimensionError,
    in_span,
    kernel_basis,
    rank,
    reduce_mod_span,
    solve_kernel_right,
    subspace_equal,
    transpose,
)


def bm(n_cols, rows):
    return BitMatrix(n_cols, [BitVector.from_bits(r) for r in rows])


def test_rank_zero_matrix():
    assert rank(bm(5, [[0] * 5] * 3)) == 0


def test_rank_identity():
    assert rank(bm(4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])) == 4


def test_in_span_explicit():
    basis = bm(3, [[1, 0, 0], [0, 1, 0]])
    assert in_span(BitVector.from_bits([1, 1, 0]), basis)
    assert not in_span(BitVector.from_bits([0, 0, 1]), basis)
    assert in_span(BitVector(3), basis)


def test_in_span_dimension_error():
    with pytest.raises(Gf2DimensionError):
        in_span(BitVector(4), bm(3, [[1, 0, 0]]))


def test_kernel_identity_empty():
    assert kernel_basis(bm(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])).n_rows == 0


def test_kernel_equal_rows():
    k = kernel_basis(bm(3, [[1, 1, 0], [1, 1, 0]]))
    assert k.n_rows == 1
    assert k.rows[0] == BitVector.from_bits([1, 1])


def test_subspace_equal_basis_change():
    assert subspace_equal(bm(2, [[1, 0], [0, 1]]), bm(2, [[1, 1], [0, 1]]))
    assert not subspace_equal(bm(2, [[1, 0]]), bm(2, [[0, 1]]))


def test_subspace_equal_fusion_relabelling():
    # span(e1, e1+m2, m3) == span(e1, m2, m3) in the 6-bit label space
    e1 = [1, 0, 0, 0, 0, 0]
    m2 = [0, 0, 0, 0, 1, 0]
    m3 = [0, 0, 0, 0, 0, 1]
    e1m2 = [a ^ b for a, b in zip(e1, m2)]
    assert subspace_equal(bm(6, [e1, e1m2, m3]), bm(6, [e1, m2, m3]))


def test_reduce_mod_span_canonical():
    basis = bm(4, [[1, 1, 0, 0], [0, 0, 1, 1]])
    v = BitVector.from_bits([1, 0, 1, 0])
    r1 = reduce_mod_span(v, basis)
    r2 = reduce_mod_span(r1, basis)
    assert r1 == r2
    assert in_span(v ^ r1, basis)


def test_transpose_and_right_kernel():
    m = bm(3, [[1, 1, 0], [0, 1, 1]])
    t = transpose(m)
    assert t.n_cols == 2 and t.n_rows == 3
    k = solve_kernel_right(m)
    assert k.n_rows == 1
    assert k.rows[0] == BitVector.from_bits([1, 1, 1])


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    n_cols = draw(st.integers(1, max_cols))
    n_rows = draw(st.integers(0, max_rows))
    rows = draw(
        st.lists(
            st.integers(0, 2**n_cols - 1).map(lambda b: BitVector(n_cols, b)),
            min_size=n_rows,
            max_size=n_rows,
        )
    )
    return BitMatrix(n_cols, rows)


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_rank_bounds_and_row_membership(m):
    r = rank(m)
    assert r <= min(m.n_rows, m.n_cols)
    for row in m.rows:
        assert in_span(row, m)


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_rank_kernel_dimension(m):
    assert kernel_basis(m).n_rows + rank(m) == m.n_rows


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_kernel_rows_annihilate(m):
    for k in kernel_basis(m).rows:
        acc = BitVector(m.n_cols)
        for i, row in enumerate(m.rows):
            if k[i]:
                acc = acc ^ row
        assert acc.is_zero()


@given(matrices(), st.randoms())
@settings(max_examples=100, deadline=None)
def test_rank_invariant_under_row_ops(m, rnd):
    rows = list(m.rows)
    rnd.shuffle(rows)
    if len(rows) >= 2:
        i, j = rnd.sample(range(len(rows)), 2)
        rows[i] = rows[i] ^ rows[j]
    assert rank(BitMatrix(m.n_cols, rows)) == rank(m)


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_subspace_equal_reflexive_and_rref_stable(m):
    assert subspace_equal(m, m)
    assert subspace_equal(m, m.rref())
    assert m.rref() == m.rref().rref()


@given(matrices(max_rows=4, max_cols=4), matrices(max_rows=4, max_cols=4))
@settings(max_examples=100, deadline=None)
def test_subspace_equal_symmetric(a, b):
    if a.n_cols != b.n_cols:
        return
    assert subspace_equal(a, b) == subspace_equal(b, a)
    if subspace_equal(a, b):
        for row in a.rows:
            assert in_span(row, b)


def test_green_sublattice_z_rank():
    # 32 Z-generators interconnected by nine relations: rank 23
    from colorcode3d.fixtures import sublattice_fixture

    green = sublattice_fixture("green")
    assert rank(green.z_matrix()) == 23
    assert kernel_basis(green.z_matrix()).n_rows == 9


def test_minimal_model_dependency_kernel():
    # the full generator dependency matrix has kernel dimension 62
    from colorcode3d.codes import assemble_color_code
    from colorcode3d.lattice import build_minimal_model

    code = assemble_color_code(build_minimal_model())
    assert kernel_basis(code.symplectic_matrix()).n_rows == 62


@given(matrices(max_rows=4, max_cols=4), st.integers(0, 2**16 - 1))
@settings(max_examples=100, deadline=None)
def test_subspace_equal_transitive(a, seed):
    # a row-scrambled copy equals the original; equality is transitive
    rnd = __import__("random").Random(seed)
    rows = list(a.rows)
    rnd.shuffle(rows)
    if len(rows) >= 2:
        i, j = rnd.sample(range(len(rows)), 2)
        rows[i] = rows[i] ^ rows[j]
    b = BitMatrix(a.n_cols, rows)
    c = b.rref()
    assert subspace_equal(a, b) and subspace_equal(b, c)
    assert subspace_equal(a, c)
