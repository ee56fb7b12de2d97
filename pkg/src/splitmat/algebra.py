"""Split-complex and split-quaternion arithmetic.

Scalars are small frozen dataclasses; the array helpers at the bottom of the
module (``sq_mul_arrays`` and friends) work on ``(..., 4)`` component arrays
and are what the matrix layer uses internally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Structure constants over the basis (1, i, j, k):
#   i^2 = -1, j^2 = k^2 = +1, ij = k, ji = -k, jk = -i, kj = i, ki = j, ik = -j
# MULT_TABLE[a, b] = (sign, index) with e_a * e_b = sign * e_index.
MULT_TABLE = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (1, 0), (-1, 1)),
    ((1, 3), (1, 2), (1, 1), (1, 0)),
)

_STRUCT = np.zeros((4, 4, 4))
for _a, _row in enumerate(MULT_TABLE):
    for _b, (_s, _c) in enumerate(_row):
        _STRUCT[_a, _b, _c] = _s

_CONJ = np.array([1.0, -1.0, -1.0, -1.0])
_CONJ_I = np.array([1.0, -1.0, 1.0, 1.0])
_METRIC = np.array([1.0, 1.0, -1.0, -1.0])


@dataclass(frozen=True)
class SplitComplex:
    """``x + j y`` with ``j**2 = +1``."""

    x: float = 0.0
    y: float = 0.0

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return SplitComplex(self.x * other, self.y * other)
        return sc_mul(self, other)

    __rmul__ = __mul__

    def __add__(self, other):
        return SplitComplex(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return SplitComplex(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return SplitComplex(-self.x, -self.y)

    def conj(self):
        return SplitComplex(self.x, -self.y)

    @property
    def norm_sq(self):
        return self.x * self.x - self.y * self.y

    def to_quaternion(self):
        # j of the split-complex numbers is the j of the split-quaternions
        return SplitQuaternion(self.x, 0.0, self.y, 0.0)


@dataclass(frozen=True)
class SplitQuaternion:
    """``p0 + i p1 + j p2 + k p3``."""

    p0: float = 0.0
    p1: float = 0.0
    p2: float = 0.0
    p3: float = 0.0

    @classmethod
    def from_array(cls, a):
        return cls(*(float(v) for v in a))

    def as_array(self):
        return np.array([self.p0, self.p1, self.p2, self.p3])

    def __iter__(self):
        return iter((self.p0, self.p1, self.p2, self.p3))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return SplitQuaternion(*(c * other for c in self))
        return sq_mul(self, other)

    def __rmul__(self, other):
        return SplitQuaternion(*(c * other for c in self))

    def __add__(self, other):
        return SplitQuaternion(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return SplitQuaternion(*(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return SplitQuaternion(*(-c for c in self))

    def conj(self):
        return SplitQuaternion(self.p0, -self.p1, -self.p2, -self.p3)

    @property
    def norm_sq(self):
        return self.p0**2 + self.p1**2 - self.p2**2 - self.p3**2


ONE = SplitQuaternion(1.0, 0.0, 0.0, 0.0)
I = SplitQuaternion(0.0, 1.0, 0.0, 0.0)
J = SplitQuaternion(0.0, 0.0, 1.0, 0.0)
K = SplitQuaternion(0.0, 0.0, 0.0, 1.0)


def sc_mul(a: SplitComplex, b: SplitComplex) -> SplitComplex:
    return SplitComplex(a.x * b.x + a.y * b.y, a.x * b.y + a.y * b.x)


def sc_conj_norm(a: SplitComplex) -> tuple[SplitComplex, float]:
    return a.conj(), a.norm_sq


def sq_mul(p: SplitQuaternion, q: SplitQuaternion) -> SplitQuaternion:
    return SplitQuaternion.from_array(sq_mul_arrays(p.as_array(), q.as_array()))


def sq_conj_norm(p: SplitQuaternion) -> tuple[SplitQuaternion, float]:
    return p.conj(), p.norm_sq


def sc_real_rep(a: SplitComplex) -> np.ndarray:
    return np.array([[a.x, a.y], [a.y, a.x]])


def sq_complex_rep(p: SplitQuaternion) -> np.ndarray:
    return sq_complex_rep_arrays(p.as_array())


# -- array forms -------------------------------------------------------------


def sq_mul_arrays(p, q):
    """Componentwise split-quaternion product of broadcastable ``(..., 4)`` arrays."""
    return np.einsum("...a,...b,abc->...c", p, q, _STRUCT)


def sq_conj_arrays(p):
    return np.asarray(p) * _CONJ


def sq_conj_i_arrays(p):
    """Conjugate with respect to ``i`` only: ``(p0, -p1, p2, p3)``."""
    return np.asarray(p) * _CONJ_I


def sq_norm_sq_arrays(p):
    p = np.asarray(p)
    return np.sum(p * p * _METRIC, axis=-1)


def sq_complex_rep_arrays(p):
    """``(..., 4)`` components to ``(..., 2, 2)`` complex representations."""
    p = np.asarray(p, dtype=float)
    out = np.empty(p.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = p[..., 0] + 1j * p[..., 1]
    out[..., 0, 1] = p[..., 2] + 1j * p[..., 3]
    out[..., 1, 0] = p[..., 2] - 1j * p[..., 3]
    out[..., 1, 1] = p[..., 0] - 1j * p[..., 1]
    return out


def sq_from_complex_column(a, b):
    """Invert the first column ``(p0 + i p1, p2 - i p3)`` of the 2x2 representation."""
    a = np.asarray(a)
    b = np.asarray(b)
    return np.stack([a.real, a.imag, b.real, -b.imag], axis=-1)
