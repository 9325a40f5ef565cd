"""Sections and remainders of the exponential series.

``S_n(x) = sum_{k<=n} x^k/k!`` and ``R_n(x) = e^x - S_n(x)``.  Remainders go
through ``R_n(x) = x^{n+1}/(n+1)! * 1F1(1; n+2; x)`` and never subtract two
nearly equal numbers.  The ratio

    f_n(x) = R_{n-1}(x) R_{n+1}(x) / R_n(x)^2 = (n+1)/(n+2) * g_n(x)

is evaluated through the Kummer form ``g_n`` so that ``x = 0`` is regular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from hyperratio._box import Box
from hyperratio.errors import DomainError, PrecisionError
from hyperratio.hyper_series import (
    Precision,
    SeriesValue,
    eval_1f1,
    to_rational,
)

THETA_LOWER = Fraction(1, 3)
THETA_UPPER = Fraction(1, 2)


def _nonnegative(x) -> Fraction:
    x = to_rational(x)
    if x < 0:
        raise DomainError(f"x = {x} is negative; only x >= 0 is supported")
    return x


def _require_index(n: int, least: int) -> None:
    if n < least:
        raise DomainError(f"n = {n} must be at least {least}")


def exact_section(n: int, x: Fraction) -> Fraction:
    """``S_n(x)`` as an exact rational, summed over a common denominator."""
    p, q = x.numerator, x.denominator
    # S_n = sum_k p^k q^(n-k) n!/k!  /  (q^n n!)
    total = 0
    falling = 1  # n!/k! for k running down from n
    for k in range(n, -1, -1):
        total += p**k * q ** (n - k) * falling
        falling *= k if k else 1
    return Fraction(total, q**n * math.factorial(n))


def section(n: int, x, prec: Precision | None = None) -> SeriesValue:
    """Enclose the exponential section ``S_n(x)``."""
    prec = prec or Precision()
    _require_index(n, 0)
    x = _nonnegative(x)
    return SeriesValue.from_fraction(exact_section(n, x), prec, terms_used=n + 1)


def _remainder_box(n: int, x: Fraction, prec: Precision) -> tuple[Box, int]:
    if x == 0:
        return Box.exact(0, prec.working_bits), 0
    lead = Fraction(x.numerator ** (n + 1), x.denominator ** (n + 1) * math.factorial(n + 1))
    kummer = eval_1f1(1, n + 2, x, prec)
    box = Box.exact(lead, prec.working_bits).mul(kummer.box(), prec.working_bits)
    return box, kummer.terms_used


def remainder(n: int, x, prec: Precision | None = None) -> SeriesValue:
    """Enclose the exponential remainder ``R_n(x) = sum_{k>n} x^k/k!``."""
    prec = prec or Precision()
    _require_index(n, 0)
    x = _nonnegative(x)
    box, terms = _remainder_box(n, x, prec)
    return SeriesValue.from_box(box, terms, Fraction(0) if x == 0 else None)


def exp_enclosure(x, prec: Precision | None = None) -> SeriesValue:
    """Enclose ``e^x`` as ``1F1(1; 1; x)``; no host floating exponential involved."""
    return eval_1f1(1, 1, _nonnegative(x), prec)


def _g_box(n: int, x: Fraction, prec: Precision) -> tuple[Box, int]:
    bits = prec.working_bits
    lo_b = eval_1f1(1, n + 1, x, prec)
    mid_b = eval_1f1(1, n + 2, x, prec)
    hi_b = eval_1f1(1, n + 3, x, prec)
    num = lo_b.box().mul(hi_b.box(), bits)
    box = num.div(mid_b.box().square(bits), bits)
    return box, max(lo_b.terms_used, mid_b.terms_used, hi_b.terms_used)


def ratio_g(n: int, x, prec: Precision | None = None) -> SeriesValue:
    """``g_n(x) = 1F1(1;n+1;x) 1F1(1;n+3;x) / 1F1(1;n+2;x)^2``."""
    prec = prec or Precision()
    _require_index(n, 1)
    x = _nonnegative(x)
    if x == 0:
        return SeriesValue.from_fraction(Fraction(1), prec, terms_used=1)
    box, terms = _g_box(n, x, prec)
    return SeriesValue.from_box(box, terms)


def ratio_f(n: int, x, prec: Precision | None = None) -> SeriesValue:
    """``f_n(x) = R_{n-1}(x) R_{n+1}(x) / R_n(x)^2``, equal to ``(n+1)/(n+2)`` at 0."""
    prec = prec or Precision()
    _require_index(n, 1)
    x = _nonnegative(x)
    sharp = Fraction(n + 1, n + 2)
    if x == 0:
        return SeriesValue.from_fraction(sharp, prec, terms_used=1)
    box, terms = _g_box(n, x, prec)
    return SeriesValue.from_box(box.scale(sharp, prec.working_bits), terms)


def ratio_f_direct(n: int, x, prec: Precision | None = None) -> SeriesValue:
    """``f_n`` assembled from three remainder enclosures; undefined at ``x = 0``."""
    prec = prec or Precision()
    _require_index(n, 1)
    x = _nonnegative(x)
    if x == 0:
        raise DomainError("the remainder quotient is 0/0 at x = 0; use ratio_f")
    bits = prec.working_bits
    below, t1 = _remainder_box(n - 1, x, prec)
    above, t2 = _remainder_box(n + 1, x, prec)
    middle, t3 = _remainder_box(n, x, prec)
    box = below.mul(above, bits).div(middle.square(bits), bits)
    return SeriesValue.from_box(box, max(t1, t2, t3))


@dataclass(frozen=True)
class ThetaResult:
    n: int
    theta: object
    error_radius: object
    in_bounds: bool
    literal_remainder: bool = False

    @property
    def lower(self) -> Fraction:
        return SeriesValue(self.theta, self.error_radius).lower

    @property
    def upper(self) -> Fraction:
        return SeriesValue(self.theta, self.error_radius).upper


def _exp_n(n: int, prec: Precision) -> SeriesValue:
    # theta loses about log2(sqrt(n)) bits to cancellation; tighten the tail goal
    target = prec.target_rel_error / (64 * (n + 1))
    return exp_enclosure(n, Precision(prec.working_bits, target))


def ramanujan_theta(n: int, prec: Precision | None = None, *,
                    literal_remainder: bool = False) -> ThetaResult:
    """Ramanujan's ``theta(n) = n! (e^n/2 - S_{n-1}(n)) / n^n``.

    With ``literal_remainder=True`` the remainder ``R_{n-1}(n)`` replaces the
    section, which gives ``-theta(n)`` and lies outside ``(1/3, 1/2)``.
    Raises :class:`PrecisionError` if the enclosure straddles 1/3 or 1/2.
    """
    prec = prec or Precision()
    _require_index(n, 1)
    bits = prec.working_bits
    half_e = _exp_n(n, prec).box().half()
    if literal_remainder:
        subtrahend, _ = _remainder_box(n - 1, Fraction(n), prec)
    else:
        subtrahend = Box.exact(exact_section(n - 1, Fraction(n)), bits)
    scale = Fraction(math.factorial(n), n**n)
    box = half_e.sub(subtrahend, bits).scale(scale, bits)
    lo, hi = box.lower_fraction(), box.upper_fraction()
    if THETA_LOWER < lo and hi < THETA_UPPER:
        inside = True
    elif hi <= THETA_LOWER or lo >= THETA_UPPER:
        inside = False
    else:
        raise PrecisionError(f"theta({n}) enclosure straddles a bound; raise working_bits")
    value = SeriesValue.from_box(box)
    return ThetaResult(n, value.value, value.error_radius, inside, literal_remainder)


@dataclass(frozen=True)
class EPowerBounds:
    """Rational bracket ``lower < e^n < upper`` and the enclosure used to check it."""

    n: int
    lower: Fraction
    upper: Fraction
    e_power: SeriesValue
    verified: bool


def e_power_bounds(n: int, prec: Precision | None = None) -> EPowerBounds:
    """``2n^n/(3 n!) + 2 S_{n-1}(n) < e^n < n^n/n! + 2 S_{n-1}(n)``."""
    prec = prec or Precision()
    _require_index(n, 1)
    twice_section = 2 * exact_section(n - 1, Fraction(n))
    peak = Fraction(n**n, math.factorial(n))
    lower = Fraction(2, 3) * peak + twice_section
    upper = peak + twice_section
    e_n = _exp_n(n, prec)
    lo, hi = e_n.lower, e_n.upper
    if lower < lo and hi < upper:
        ok = True
    elif hi <= lower or lo >= upper:
        ok = False
    else:
        raise PrecisionError(f"e^{n} enclosure straddles a rational bound")
    return EPowerBounds(n, lower, upper, e_n, ok)
