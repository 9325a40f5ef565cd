"""Directed-rounding enclosures on raw mpmath floats.

A ``Box`` is a closed interval ``[lo, hi]`` whose endpoints are raw mpmath
mantissa/exponent tuples.  Every operation takes an explicit precision and
rounds the lower endpoint toward -inf and the upper toward +inf, so results
never depend on the global ``mp.prec``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from mpmath import libmp, mp

FLOOR = libmp.round_floor
CEIL = libmp.round_ceiling

ZERO = libmp.fzero
ONE = libmp.fone


def from_fraction(q: Fraction, prec: int, rnd: str) -> tuple:
    return libmp.from_rational(q.numerator, q.denominator, prec, rnd)


def to_fraction(raw: tuple) -> Fraction:
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


def cmp(s: tuple, t: tuple) -> int:
    return libmp.mpf_cmp(s, t)


def make(raw: tuple):
    return mp.make_mpf(raw)


@dataclass(frozen=True)
class Box:
    lo: tuple
    hi: tuple

    @classmethod
    def exact(cls, q: Fraction | int, prec: int) -> "Box":
        q = Fraction(q)
        lo = from_fraction(q, prec, FLOOR)
        hi = from_fraction(q, prec, CEIL)
        return cls(lo, hi)

    @classmethod
    def point(cls, raw: tuple) -> "Box":
        return cls(raw, raw)

    def add(self, other: "Box", prec: int) -> "Box":
        return Box(libmp.mpf_add(self.lo, other.lo, prec, FLOOR),
                   libmp.mpf_add(self.hi, other.hi, prec, CEIL))

    def sub(self, other: "Box", prec: int) -> "Box":
        return Box(libmp.mpf_sub(self.lo, other.hi, prec, FLOOR),
                   libmp.mpf_sub(self.hi, other.lo, prec, CEIL))

    def mul(self, other: "Box", prec: int) -> "Box":
        ends = [(s, t) for s in (self.lo, self.hi) for t in (other.lo, other.hi)]
        lows = [libmp.mpf_mul(s, t, prec, FLOOR) for s, t in ends]
        highs = [libmp.mpf_mul(s, t, prec, CEIL) for s, t in ends]
        return Box(min(lows, key=_key), max(highs, key=_key))

    def div(self, other: "Box", prec: int) -> "Box":
        if cmp(other.lo, ZERO) <= 0 <= cmp(other.hi, ZERO):
            raise ZeroDivisionError("divisor enclosure contains zero")
        ends = [(s, t) for s in (self.lo, self.hi) for t in (other.lo, other.hi)]
        lows = [libmp.mpf_div(s, t, prec, FLOOR) for s, t in ends]
        highs = [libmp.mpf_div(s, t, prec, CEIL) for s, t in ends]
        return Box(min(lows, key=_key), max(highs, key=_key))

    def square(self, prec: int) -> "Box":
        if cmp(self.lo, ZERO) >= 0:
            return Box(libmp.mpf_mul(self.lo, self.lo, prec, FLOOR),
                       libmp.mpf_mul(self.hi, self.hi, prec, CEIL))
        return self.mul(self, prec)

    def scale(self, q: Fraction, prec: int) -> "Box":
        return self.mul(Box.exact(q, prec), prec)

    def half(self) -> "Box":
        return Box(libmp.mpf_shift(self.lo, -1), libmp.mpf_shift(self.hi, -1))

    def midpoint(self) -> tuple:
        return libmp.mpf_shift(libmp.mpf_add(self.lo, self.hi, 0), -1)

    def radius(self) -> tuple:
        return libmp.mpf_shift(libmp.mpf_sub(self.hi, self.lo, 0), -1)

    def lower_fraction(self) -> Fraction:
        return to_fraction(self.lo)

    def upper_fraction(self) -> Fraction:
        return to_fraction(self.hi)


_key = cmp_to_key(libmp.mpf_cmp)
