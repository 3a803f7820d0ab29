"""Pauli and XP operator algebra with exact phase tracking.

An XP operator of precision N is stored as ``w^phase * prod_j X_j^{x_j}
P_j^{z_j}`` where ``w = exp(i*pi/N)``, ``phase`` is kept modulo 2N, the
X word is a BitVector and the diagonal exponents are kept modulo N.  For
N = 4 the diagonal generator P is the S gate, so XS = XP_4(0|1|1) and a
Pauli ``i^k X^x Z^z`` embeds with doubled phase exponent and doubled Z
exponents.

All values are immutable; operations return new operators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import BitVector, Gf2DimensionError

OMEGA_TO_STR = {0: "+1", 1: "+w", 2: "+i", 3: "+iw", 4: "-1", 5: "-w", 6: "-i", 7: "-iw"}
_STR_TO_OMEGA = {v: k for k, v in OMEGA_TO_STR.items()}


class NotZTypeError(ValueError):
    """Operator is not a global phase times a Z-type Pauli."""


class ConventionViolationError(ValueError):
    """Transversal conjugation hit a support that is not sublattice balanced."""


class PauliOperator:
    """n-qubit Pauli ``i^phase * X^x * Z^z`` with phase exponent mod 4."""

    __slots__ = ("n", "phase", "x", "z")

    def __init__(self, n: int, phase: int, x: BitVector, z: BitVector):
        if x.length != n or z.length != n:
            raise Gf2DimensionError("support length != n")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "phase", phase % 4)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("PauliOperator is immutable")

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, BitVector(n), BitVector(n))

    @classmethod
    def x_on(cls, n: int, qubits: Iterable[int]) -> "PauliOperator":
        return cls(n, 0, BitVector.from_indices(n, qubits), BitVector(n))

    @classmethod
    def z_on(cls, n: int, qubits: Iterable[int]) -> "PauliOperator":
        return cls(n, 0, BitVector(n), BitVector.from_indices(n, qubits))

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise Gf2DimensionError("qubit counts differ")
        # Move other's X word past self's Z word: Z^z X^x = (-1)^(z.x) X^x Z^z.
        phase = (self.phase + other.phase + 2 * self.z.dot(other.x)) % 4
        return PauliOperator(self.n, phase, self.x ^ other.x, self.z ^ other.z)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PauliOperator)
            and self.n == other.n
            and self.phase == other.phase
            and self.x == other.x
            and self.z == other.z
        )

    def __hash__(self) -> int:
        return hash((self.n, self.phase, self.x, self.z))

    def is_identity(self) -> bool:
        return self.phase == 0 and self.x.is_zero() and self.z.is_zero()

    def symplectic(self) -> BitVector:
        """(x | z) row for GF(2) rank computations."""
        return self.x.concat(self.z)

    def weight(self) -> int:
        return BitVector(self.n, self.x.bits | self.z.bits).weight()

    def to_xp(self, precision: int = 4) -> "XPOperator":
        half = precision // 2
        if 2 * half != precision:
            raise ValueError("precision must be even to embed Paulis")
        z = tuple(half * b for b in _bits_of(self.z))
        return XPOperator(self.n, precision, self.phase * half, self.x, z)

    def __repr__(self) -> str:
        return "PauliOperator(%s)" % render_pauli(self)


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    """True iff the symplectic form a.x*b.z + a.z*b.x vanishes mod 2."""
    if a.n != b.n:
        raise Gf2DimensionError("qubit counts differ")
    return (a.x.dot(b.z) + a.z.dot(b.x)) % 2 == 0


def _bits_of(v: BitVector) -> tuple[int, ...]:
    return tuple((v.bits >> i) & 1 for i in range(v.length))


class XPOperator:
    """Precision-N generalized Pauli ``w^phase * X^x * P^z``."""

    __slots__ = ("n", "precision", "phase", "x", "z")

    def __init__(self, n: int, precision: int, phase: int, x: BitVector, z: Sequence[int]):
        if precision < 2:
            raise ValueError("precision must be >= 2")
        if x.length != n or len(z) != n:
            raise Gf2DimensionError("support length != n")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "phase", phase % (2 * precision))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", tuple(e % precision for e in z))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("XPOperator is immutable")

    @classmethod
    def identity(cls, n: int, precision: int = 4) -> "XPOperator":
        return cls(n, precision, 0, BitVector(n), (0,) * n)

    def _check_compatible(self, other: "XPOperator") -> None:
        if self.n != other.n:
            raise Gf2DimensionError("qubit counts differ: %d vs %d" % (self.n, other.n))
        if self.precision != other.precision:
            raise Gf2DimensionError(
                "precisions differ: %d vs %d" % (self.precision, other.precision)
            )

    def __mul__(self, other: "XPOperator") -> "XPOperator":
        """Operator product; per qubit P^a X = w^2a X P^-a."""
        self._check_compatible(other)
        pre = self.precision
        phase = self.phase + other.phase
        z = list(other.z)
        for j, a in enumerate(self.z):
            if a == 0:
                continue
            if other.x[j]:
                phase += 2 * a
                z[j] = (z[j] - a) % pre
            else:
                z[j] = (z[j] + a) % pre
        return XPOperator(self.n, pre, phase, self.x ^ other.x, z)

    def inverse(self) -> "XPOperator":
        pre = self.precision
        phase = -self.phase
        z = []
        for j, a in enumerate(self.z):
            if self.x[j]:
                phase -= 2 * a
                z.append(a)
            else:
                z.append((-a) % pre)
        return XPOperator(self.n, pre, phase, self.x, z)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, XPOperator)
            and self.n == other.n
            and self.precision == other.precision
            and self.phase == other.phase
            and self.x == other.x
            and self.z == other.z
        )

    def __hash__(self) -> int:
        return hash((self.n, self.precision, self.phase, self.x, self.z))

    def is_identity(self) -> bool:
        return self.phase == 0 and self.x.is_zero() and all(e == 0 for e in self.z)

    def is_diagonal(self) -> bool:
        return self.x.is_zero()

    def __repr__(self) -> str:
        return "XPOperator(%s)" % render_xp(self)


def multiply(a: XPOperator, b: XPOperator) -> XPOperator:
    return a * b


def group_commutator(t: XPOperator, v: XPOperator) -> XPOperator:
    """K(T, V) := V^-1 T^-1 V T; identity iff the operators commute."""
    return v.inverse() * t.inverse() * v * t


def z_reduction(op: XPOperator) -> tuple[BitVector, int]:
    """Split a Z-type operator into (Z support, residual w-phase exponent).

    Requires zero X part and even diagonal exponents (precision-4 Z content);
    anything else signals a genuinely non-absorbable commutator.
    """
    if not op.x.is_zero():
        raise NotZTypeError("operator has X support on qubits %s" % (op.x.indices(),))
    half = op.precision // 2
    support = []
    for j, e in enumerate(op.z):
        if e == 0:
            continue
        if e == half:
            support.append(j)
        else:
            raise NotZTypeError("qubit %d carries diagonal exponent %d" % (j, e))
    return BitVector.from_indices(op.n, support), op.phase


@dataclass(frozen=True)
class SublatticeSigning:
    """Per-qubit +1/-1 labels; transversal U acts as U on +1 and U^dagger on -1."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.signs)

    def is_balanced_on(self, qubits: Iterable[int]) -> bool:
        return sum(self.signs[q] for q in qubits) == 0


# Per-qubit conjugation of X by the gate on a sign-s qubit, from
# diag(1,d) X diag(1,d*) = d * X * diag(1, conj(d)^2):
#   T X T^dag = w^+1 X P^-1   T^dag X T = w^-1 X P^+1   -> z -= s, phase += s
#   S X S^dag = w^+2 X P^2    S^dag X S = w^-2 X P^2    -> z += 2, phase += 2s
_GATE_RULES = {"T": 1, "S": 2}


def conjugate_by_transversal_diagonal(
    op: XPOperator,
    gate: str,
    signing: SublatticeSigning,
    support: Iterable[int] | None = None,
    require_balanced: bool = False,
) -> XPOperator:
    """Conjugate ``op`` by a transversal diagonal gate (S or T).

    The gate acts as U on +1 qubits and U^dagger on -1 qubits of ``signing``,
    restricted to ``support`` (all qubits when omitted).  Diagonal operators
    are returned unchanged.  With ``require_balanced`` the affected support
    must split evenly between the sublattice classes, otherwise the residual
    phase cannot cancel and a ConventionViolationError is raised.
    """
    if gate not in _GATE_RULES:
        raise ValueError("unknown transversal gate %r" % gate)
    if signing.n != op.n:
        raise Gf2DimensionError("signing length != qubit count")
    if op.is_diagonal():
        return op
    sup = set(range(op.n)) if support is None else set(support)
    dp = _GATE_RULES[gate]
    touched = [j for j in sorted(sup) if op.x[j]]
    if require_balanced and not signing.is_balanced_on(touched):
        raise ConventionViolationError(
            "support not balanced between sublattice classes: %s" % (touched,)
        )
    pre = op.precision
    phase = op.phase
    z = list(op.z)
    for j in touched:
        s = signing.signs[j]
        if gate == "S":
            z[j] = (z[j] + 2) % pre
        else:
            z[j] = (z[j] - s) % pre
        phase += dp * s
    return XPOperator(op.n, pre, phase, op.x, z)


# ---------------------------------------------------------------------------
# Text rendering (stable, round-trippable)

def render_phase(exponent: int, precision: int = 4) -> str:
    if precision != 4:
        return "w^%d" % (exponent % (2 * precision))
    return OMEGA_TO_STR[exponent % 8]


def render_pauli(op: PauliOperator) -> str:
    """E.g. '+i Z1 Z4' (qubit indices, X before Z per qubit order)."""
    parts = []
    for j in range(op.n):
        xb, zb = op.x[j], op.z[j]
        if xb and zb:
            parts.append("Y%d" % j)
        elif xb:
            parts.append("X%d" % j)
        elif zb:
            parts.append("Z%d" % j)
    phase = op.phase
    n_y = sum(1 for j in range(op.n) if op.x[j] and op.z[j])
    if n_y:
        # X Z = -i Y per qubit; fold one -i per Y into the printed letter.
        phase = (phase - n_y) % 4
    head = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}[phase]
    return head if not parts else head + " " + " ".join(parts)


_XP_TERM = {0: None, 1: "XS(%d)", 2: "XZ(%d)", 3: "XS†(%d)"}


def render_xp(op: XPOperator) -> str:
    """E.g. '+1 XS(3) XS†(7) Z(1)'; precision-4 operators only."""
    if op.precision != 4:
        terms = ["X(%d)" % j if op.x[j] else "" for j in range(op.n)]
        return "w^%d %s z=%s" % (op.phase, " ".join(t for t in terms if t), list(op.z))
    parts = []
    for j in range(op.n):
        e = op.z[j]
        if op.x[j]:
            parts.append(("X(%d)" % j) if e == 0 else (_XP_TERM[e] % j))
        elif e:
            parts.append({1: "S(%d)", 2: "Z(%d)", 3: "S†(%d)"}[e] % j)
    head = OMEGA_TO_STR[op.phase]
    return head if not parts else head + " " + " ".join(parts)


_TOKEN_RE = re.compile(r"(X|XS†|XS|XZ|S†|S|Z|Y)\((\d+)\)|([XYZ])(\d+)")


def parse_xp(text: str, n: int, precision: int = 4) -> XPOperator:
    """Inverse of render_xp / render_pauli for precision-4 operators."""
    text = text.strip()
    head, _, rest = text.partition(" ")
    if head not in _STR_TO_OMEGA:
        raise ValueError("bad phase token %r" % head)
    phase = _STR_TO_OMEGA[head]
    x: set[int] = set()
    z = [0] * n
    for m in _TOKEN_RE.finditer(rest):
        if m.group(1) is not None:
            kind, qubit = m.group(1), int(m.group(2))
        else:
            kind, qubit = m.group(3), int(m.group(4))
        if kind in ("X", "XS", "XZ", "XS†", "Y"):
            x.add(qubit)
        if kind in ("XS", "S"):
            z[qubit] = (z[qubit] + 1) % 4
        elif kind in ("XZ", "Z", "Y"):
            z[qubit] = (z[qubit] + 2) % 4
        elif kind in ("XS†", "S†"):
            z[qubit] = (z[qubit] + 3) % 4
        if kind == "Y":
            phase = (phase + 2) % 8  # undo the -i folded into the printed Y
    return XPOperator(n, precision, phase, BitVector.from_indices(n, sorted(x)), z)
