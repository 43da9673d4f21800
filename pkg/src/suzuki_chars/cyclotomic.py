"""Exact arithmetic in Z[zeta_N] and Q(zeta_N) for N = 4 or N an odd prime.

A :class:`CycloNum` is stored as a length-N coefficient vector in the group
ring Z[C_N], i.e. sum_j c_j zeta^j.  Products are index additions and no
reduction happens until equality, hashing or serialization asks for the
canonical form:

* N = 4: zeta^2 = -1, so the canonical vector is (c0 - c2, c1 - c3, 0, 0).
* N = p odd: 1 + zeta + ... + zeta^(p-1) = 0, so subtracting c_{p-1} from
  every coefficient gives the canonical vector with a zero last entry.

The nonzero part of a canonical vector (length 2 resp. p - 1) is the
coordinate vector in the integral basis 1, zeta, ..., which is what the
table arrays in :mod:`suzuki_chars.construct` store.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np


def check_root_order(N: int) -> None:
    if N == 4:
        return
    if N < 3 or any(N % f == 0 for f in range(2, int(N**0.5) + 1)):
        raise ValueError(f"root order N = {N} must be 4 or an odd prime")


def coord_dim(N: int) -> int:
    """Length of the canonical coordinate vector."""
    return 2 if N == 4 else N - 1


def canonical_coeffs(coeffs: Sequence[int], N: int) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    if len(c) != N:
        raise ValueError(f"expected {N} coefficients, got {len(c)}")
    if N == 4:
        return (c[0] - c[2], c[1] - c[3], 0, 0)
    last = c[-1]
    return tuple(x - last for x in c)


class CycloNum:
    """An element of Z[zeta_N] in lazily reduced group-ring form."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Sequence[int]):
        check_root_order(N)
        coeffs = tuple(int(x) for x in coeffs)
        if len(coeffs) != N:
            raise ValueError(f"expected {N} coefficients, got {len(coeffs)}")
        self.N = N
        self.coeffs = coeffs

    @classmethod
    def zero(cls, N: int) -> CycloNum:
        return cls(N, (0,) * N)

    @classmethod
    def integer(cls, N: int, k: int) -> CycloNum:
        return cls(N, (k,) + (0,) * (N - 1))

    @classmethod
    def from_coords(cls, N: int, coords: Sequence[int]) -> CycloNum:
        """Inverse of :meth:`coords`."""
        coords = [int(x) for x in coords]
        return cls(N, coords + [0] * (N - len(coords)))

    def canonicalize(self) -> CycloNum:
        return CycloNum(self.N, canonical_coeffs(self.coeffs, self.N))

    def canonical(self) -> tuple[int, ...]:
        return canonical_coeffs(self.coeffs, self.N)

    def coords(self) -> tuple[int, ...]:
        return self.canonical()[: coord_dim(self.N)]

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def _check(self, other: CycloNum) -> None:
        if other.N != self.N:
            raise ValueError(f"root orders differ: {self.N} vs {other.N}")

    def _coerce(self, other) -> CycloNum:
        if isinstance(other, CycloNum):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            return CycloNum.integer(self.N, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.N, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.N, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = self.N
        out = [0] * N
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % N] += a * b
        return CycloNum(N, out)

    __rmul__ = __mul__

    def scale(self, k: int) -> CycloNum:
        return CycloNum(self.N, [k * a for a in self.coeffs])

    def conjugate(self) -> CycloNum:
        N = self.N
        return CycloNum(N, [self.coeffs[(-j) % N] for j in range(N)])

    def norm_sq(self) -> int:
        """z * conj(z) when it is a rational integer, else ValueError."""
        w = (self * self.conjugate()).canonical()
        if any(w[1:]):
            raise ValueError(f"{self!r} times its conjugate is not rational")
        return w[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = CycloNum.integer(self.N, int(other))
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.N == other.N and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.N, self.canonical()))

    def to_complex(self) -> complex:
        """Floating-point value, for display only."""
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(c * z**j for j, c in enumerate(self.coeffs))

    def render(self) -> str:
        """Canonical text form ``c0+c1*z^1+...`` (used by the CSV writer)."""
        c = self.canonical()
        terms = [str(c[0])] + [f"{x}*z^{j}" for j, x in enumerate(c[1:], 1) if x]
        return "+".join(terms).replace("+-", "-")

    def __repr__(self) -> str:
        return f"CycloNum({self.N}, {list(self.canonical())})"


def root_power(N: int, e: int) -> CycloNum:
    """zeta_N ** e."""
    c = [0] * N
    c[e % N] = 1
    return CycloNum(N, c)


class CycloRat:
    """numerator / denominator with numerator in Z[zeta_N], kept reduced."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: CycloNum, denominator: int = 1):
        if denominator == 0:
            raise ZeroDivisionError("CycloRat with zero denominator")
        num = numerator.canonicalize()
        if denominator < 0:
            num, denominator = -num, -denominator
        g = denominator
        for c in num.coeffs:
            g = gcd(g, c)
        if g > 1:
            num = CycloNum(num.N, [c // g for c in num.coeffs])
            denominator //= g
        self.numerator = num
        self.denominator = denominator

    @property
    def N(self) -> int:
        return self.numerator.N

    def __add__(self, other: CycloRat) -> CycloRat:
        return CycloRat(
            self.numerator.scale(other.denominator) + other.numerator.scale(self.denominator),
            self.denominator * other.denominator,
        )

    def __mul__(self, other) -> CycloRat:
        if isinstance(other, CycloRat):
            return CycloRat(self.numerator * other.numerator, self.denominator * other.denominator)
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloRat(self.numerator.scale(f.numerator), self.denominator * f.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> CycloRat:
        return CycloRat(-self.numerator, self.denominator)

    def __sub__(self, other: CycloRat) -> CycloRat:
        return self + (-other)

    def is_integral(self) -> bool:
        return self.denominator == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            other = CycloRat(other)
        if not isinstance(other, CycloRat):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __repr__(self) -> str:
        return f"CycloRat({self.numerator!r}, {self.denominator})"


# -- array helpers -------------------------------------------------------------


def monomial_coords(N: int, amp: np.ndarray, exp: np.ndarray) -> np.ndarray:
    """Canonical coordinates of amp * zeta^exp, elementwise.

    Returns an integer array with one extra trailing axis of length
    :func:`coord_dim` ``(N)``.
    """
    amp = np.asarray(amp, dtype=np.int64)
    exp = np.asarray(exp, dtype=np.int64) % N
    D = coord_dim(N)
    out = np.zeros(amp.shape + (D,), dtype=np.int64)
    if N == 4:
        sign = np.where(exp >= 2, -1, 1)
        slot = exp % 2
        for s in range(2):
            out[..., s] = np.where(slot == s, sign * amp, 0)
    else:
        top = exp == N - 1
        for s in range(D):
            out[..., s] = np.where(exp == s, amp, 0) - np.where(top, amp, 0)
    return out


def ring_to_coords(N: int, ring: np.ndarray) -> np.ndarray:
    """Reduce group-ring vectors (trailing axis N) to canonical coordinates."""
    if N == 4:
        return np.stack([ring[..., 0] - ring[..., 2], ring[..., 1] - ring[..., 3]], axis=-1)
    return ring[..., : N - 1] - ring[..., N - 1 : N]


def coords_product_ring(N: int, x: np.ndarray, y: np.ndarray, conj_y: bool = False) -> np.ndarray:
    """Group-ring vector of x * y (or x * conj(y)) for coordinate arrays."""
    D = coord_dim(N)
    shape = np.broadcast_shapes(x.shape[:-1], y.shape[:-1])
    ring = np.zeros(shape + (N,), dtype=np.result_type(x, y, np.int64))
    for a in range(D):
        for b in range(D):
            e = (a - b) % N if conj_y else (a + b) % N
            ring[..., e] += x[..., a] * y[..., b]
    return ring
