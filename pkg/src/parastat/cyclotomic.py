"""Exact arithmetic with sums of roots of unity.

Classification results (bicharacter tables, R-matrix coefficients,
quasitriangularity checks) must be exact, so they are computed in the
cyclotomic field Q(zeta_m) rather than in floating point.  A value is kept
as its canonical coordinate vector over the power basis 1, zeta, ...,
zeta^(phi(m)-1), obtained by reducing modulo the m-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (ascending degree) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("index must be a positive integer")
    if m == 1:
        return (-1, 1)
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact integer division.
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def _exact_div(num, den):
    """Divide integer polynomials with zero remainder; den must be monic-ish exact."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    if any(num):
        raise ArithmeticError("nonzero remainder in exact division")
    return out


@lru_cache(maxsize=None)
def _phi_degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce(m: int, raw: list[Fraction]) -> tuple[Fraction, ...]:
    """Canonical coordinates of sum_k raw[k] * zeta_m^k (raw indexed mod m)."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    work = list(raw) + [Fraction(0)] * max(0, deg - len(raw))
    # long division by the monic Phi_m
    for k in range(len(work) - 1, deg - 1, -1):
        c = work[k]
        if c:
            for i in range(len(phi)):
                work[k - deg + i] -= c * phi[i]
    return tuple(work[:deg])


class CycNum:
    """Immutable element of Q(zeta_m)."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords: tuple[Fraction, ...]):
        self.order = order
        self.coords = coords

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "CycNum":
        return cls(m, tuple([Fraction(0)] * _phi_degree(m)))

    @classmethod
    def rational(cls, m: int, q) -> "CycNum":
        c = [Fraction(0)] * _phi_degree(m)
        c[0] = Fraction(q)
        return cls(m, tuple(c))

    @classmethod
    def one(cls, m: int) -> "CycNum":
        return cls.rational(m, 1)

    @classmethod
    def root(cls, m: int, k: int) -> "CycNum":
        """zeta_m^k."""
        raw = [Fraction(0)] * m
        raw[k % m] = Fraction(1)
        return cls(m, _reduce(m, raw))

    @classmethod
    def from_counts(cls, m: int, counts, scale=1) -> "CycNum":
        """scale * sum_k counts[k] * zeta_m^k."""
        s = Fraction(scale)
        raw = [Fraction(int(c)) * s for c in counts]
        return cls(m, _reduce(m, raw))

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other):
        self._check(other)
        return CycNum(self.order, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return CycNum(self.order, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CycNum(self.order, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum(self.order, tuple(a * q for a in self.coords))
        self._check(other)
        m = self.order
        raw = [Fraction(0)] * m
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        raw[(i + j) % m] += a * b
        return CycNum(m, _reduce(m, raw))

    __rmul__ = __mul__

    def times_root(self, k: int) -> "CycNum":
        """Multiply by zeta^k (cheap exponent shift)."""
        m = self.order
        raw = [Fraction(0)] * m
        for i, a in enumerate(self.coords):
            if a:
                raw[(i + k) % m] += a
        return CycNum(m, _reduce(m, raw))

    # -- predicates / conversions ---------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.order == other.order and self.coords == other.coords

    def __hash__(self):
        return hash((self.order, self.coords))

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_scaled_root(self):
        """Return (q, e) with self == q * zeta^e (smallest such e), or None.

        Zero is reported as (0, 0).
        """
        if self.is_zero():
            return Fraction(0), 0
        for e in range(self.order):
            t = self.times_root(-e)
            if t.is_rational():
                return t.coords[0], e
        return None

    def as_root_of_unity(self):
        """Exponent k with self == zeta^k, or None if self is not a root of unity."""
        sr = self.as_scaled_root()
        if sr is None:
            return None
        q, e = sr
        if q == 1:
            return e
        if q == -1 and self.order % 2 == 0:
            return (e + self.order // 2) % self.order
        return None

    def to_complex(self) -> complex:
        m = self.order
        return sum(
            float(a) * cmath.exp(2j * cmath.pi * k / m)
            for k, a in enumerate(self.coords)
            if a
        ) + 0j

    def __repr__(self):
        sr = self.as_scaled_root()
        if sr is not None:
            q, e = sr
            if e == 0:
                return f"CycNum({q})"
            return f"CycNum({q}*zeta_{self.order}^{e})"
        return f"CycNum(order={self.order}, coords={self.coords})"
