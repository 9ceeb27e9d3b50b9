"""Exact scalars: rationals, p-adic valuations and prime-field residues."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = Fraction
INF = math.inf


class NotPAdmissible(ArithmeticError):
    """Raised when a rational with negative p-adic valuation is reduced mod p."""


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"not a prime: {p!r}")


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _ival(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def pval(q, p: int):
    """p-adic valuation; ``math.inf`` for zero."""
    check_prime(p)
    q = as_rational(q)
    if q == 0:
        return INF
    return _ival(abs(q.numerator), p) - _ival(q.denominator, p)


def reduce_mod_p(q, p: int) -> "FpScalar":
    check_prime(p)
    q = as_rational(q)
    if q.denominator % p == 0:
        raise NotPAdmissible(f"{q} has negative {p}-adic valuation")
    return FpScalar(q.numerator * pow(q.denominator, -1, p) % p, p)


def format_rational(q) -> str:
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class FpScalar:
    residue: int
    p: int

    def __post_init__(self):
        if not 0 <= self.residue < self.p:
            object.__setattr__(self, "residue", self.residue % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other.residue
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return reduce_mod_p(other, self.p).residue
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar((self.residue + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar((self.residue - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar((o - self.residue) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpScalar(self.residue * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.residue % self.p, self.p)

    def inverse(self) -> "FpScalar":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpScalar(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FpScalar(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpScalar(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.p})"

    def __str__(self):
        return str(self.residue)
