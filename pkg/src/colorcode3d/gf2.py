"""Exact linear algebra over GF(2).

Vectors are immutable bit strings backed by Python integers (bit ``i`` of
``bits`` is entry ``i``), so XOR, popcount and dot products are single
operations on word blocks.  Row reduction is deterministic (leftmost
pivot, top down), which makes reduced forms canonical and lets subspace
comparisons work by direct equality.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class Gf2DimensionError(ValueError):
    """Operands have incompatible lengths or column counts."""


class BitVector:
    """Fixed-length vector over GF(2); addition is entrywise XOR."""

    __slots__ = ("bits", "length")

    def __init__(self, length: int, bits: int = 0):
        if length < 0:
            raise ValueError("length must be nonnegative")
        if bits < 0 or bits >> length:
            raise ValueError("bits out of range for length %d" % length)
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "length", length)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("BitVector is immutable")

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise IndexError("index %d out of range" % i)
            bits ^= 1 << i
        return cls(length, bits)

    @classmethod
    def from_bits(cls, entries: Sequence[int]) -> "BitVector":
        bits = 0
        for i, e in enumerate(entries):
            if e & 1:
                bits |= 1 << i
        return cls(len(entries), bits)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise Gf2DimensionError("length mismatch: %d vs %d" % (self.length, other.length))
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.length == other.length
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.length, self.bits))

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def dot(self, other: "BitVector") -> int:
        """Parity of the entrywise product."""
        if self.length != other.length:
            raise Gf2DimensionError("length mismatch: %d vs %d" % (self.length, other.length))
        return bin(self.bits & other.bits).count("1") & 1

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.length + other.length, self.bits | (other.bits << self.length))

    def __repr__(self) -> str:
        return "BitVector(%r)" % "".join(str((self.bits >> i) & 1) for i in range(self.length))


def _lowest_set_bit(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


def _forward_reduce(bits: int, table: dict[int, int]) -> int:
    """Reduce ``bits`` against a pivot table whose rows have their pivot as
    lowest set bit.  Returns the residue (0 if in the span)."""
    while bits:
        p = _lowest_set_bit(bits)
        row = table.get(p)
        if row is None:
            return bits
        bits ^= row
    return 0


class BitMatrix:
    """Immutable list of equal-length BitVector rows."""

    __slots__ = ("rows", "n_cols", "_rref_cache")

    def __init__(self, n_cols: int, rows: Iterable[BitVector] = ()):
        rows = tuple(rows)
        for r in rows:
            if r.length != n_cols:
                raise Gf2DimensionError("row length %d != n_cols %d" % (r.length, n_cols))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n_cols", n_cols)
        object.__setattr__(self, "_rref_cache", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("BitMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector]) -> "BitMatrix":
        if not rows:
            raise ValueError("cannot infer n_cols from empty rows; use BitMatrix(n_cols)")
        return cls(rows[0].length, rows)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.n_cols, self.rows))

    def _pivot_table(self) -> dict[int, int]:
        if self._rref_cache is not None:
            return self._rref_cache
        table: dict[int, int] = {}
        for row in self.rows:
            residue = _forward_reduce(row.bits, table)
            if residue:
                table[_lowest_set_bit(residue)] = residue
        # Back-eliminate foreign pivots.  Rows have their pivot as lowest set
        # bit, so foreign pivots sit strictly above; sweeping pivots in
        # decreasing order keeps already-cleaned rows clean.
        for p in sorted(table, reverse=True):
            bits = table[p]
            for q in sorted(table):
                if q > p and (bits >> q) & 1:
                    bits ^= table[q]
            table[p] = bits
        object.__setattr__(self, "_rref_cache", table)
        return table

    def rref(self) -> "BitMatrix":
        """Reduced row echelon form; zero rows dropped, pivots increasing."""
        table = self._pivot_table()
        return BitMatrix(
            self.n_cols, [BitVector(self.n_cols, table[p]) for p in sorted(table)]
        )

    def __repr__(self) -> str:
        return "BitMatrix(%d cols, %d rows)" % (self.n_cols, self.n_rows)


def rank(m: BitMatrix) -> int:
    """Dimension of the row space."""
    return len(m._pivot_table())


def in_span(v: BitVector, basis: BitMatrix) -> bool:
    """True iff ``v`` is a GF(2) combination of the rows of ``basis``."""
    if v.length != basis.n_cols:
        raise Gf2DimensionError("vector length %d != n_cols %d" % (v.length, basis.n_cols))
    return _forward_reduce(v.bits, basis._pivot_table()) == 0


def reduce_mod_span(v: BitVector, basis: BitMatrix) -> BitVector:
    """Canonical residue of ``v`` modulo the row space of ``basis``."""
    if v.length != basis.n_cols:
        raise Gf2DimensionError("vector length %d != n_cols %d" % (v.length, basis.n_cols))
    table = basis._pivot_table()
    bits = v.bits
    for p in sorted(table):
        if (bits >> p) & 1:
            bits ^= table[p]
    return BitVector(v.length, bits)


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the left kernel {x : x m = 0}; dimension = n_rows - rank(m)."""
    n = m.n_rows
    mask = (1 << m.n_cols) - 1
    table: dict[int, int] = {}  # data pivot -> augmented row
    kernel: list[int] = []
    for i, row in enumerate(m.rows):
        bits = row.bits | (1 << (m.n_cols + i))
        while bits & mask:
            p = _lowest_set_bit(bits & mask)
            r = table.get(p)
            if r is None:
                table[p] = bits
                bits = 0
                break
            bits ^= r
        else:
            kernel.append(bits >> m.n_cols)
    return BitMatrix(n, [BitVector(n, k) for k in kernel])


def subspace_equal(a: BitMatrix, b: BitMatrix) -> bool:
    """True iff the row spaces coincide."""
    if a.n_cols != b.n_cols:
        raise Gf2DimensionError("column counts differ: %d vs %d" % (a.n_cols, b.n_cols))
    return a.rref() == b.rref()


def transpose(m: BitMatrix) -> BitMatrix:
    return BitMatrix(
        m.n_rows,
        [
            BitVector(m.n_rows, sum(((row.bits >> j) & 1) << i for i, row in enumerate(m.rows)))
            for j in range(m.n_cols)
        ],
    )


def solve_kernel_right(m: BitMatrix) -> BitMatrix:
    """Basis of the right kernel {x : m x = 0}, returned as row vectors."""
    return kernel_basis(transpose(m))


def solve_right(m: BitMatrix, rhs: BitVector) -> BitVector | None:
    """One x with m x = rhs (free variables zero), or None if inconsistent."""
    if rhs.length != m.n_rows:
        raise Gf2DimensionError("rhs length %d != n_rows %d" % (rhs.length, m.n_rows))
    aug = BitMatrix(
        m.n_cols + 1,
        [
            BitVector(m.n_cols + 1, row.bits | (rhs[i] << m.n_cols))
            for i, row in enumerate(m.rows)
        ],
    )
    x = 0
    for row in aug.rref().rows:
        p = _lowest_set_bit(row.bits)
        if p == m.n_cols:
            return None  # row reads 0 = 1
        if (row.bits >> m.n_cols) & 1:
            x |= 1 << p
    return BitVector(m.n_cols, x)
