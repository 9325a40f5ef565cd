"""Exact coefficients and enclosed summation of generalized hypergeometric series.

Coefficients are exact ``Fraction`` values.  Numerical values are returned as
:class:`SeriesValue` enclosures: the partial sum is accumulated twice, once
rounding every operation toward -inf and once toward +inf, and a geometric
bound on the neglected tail is added to the upper end.  Because every term of
a series with positive parameters is increasing in ``x``, a non-dyadic ``x``
is handled by running the lower chain on ``floor(x)`` and the upper chain on
``ceil(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import mpmath
from mpmath import libmp

from hyperratio._box import CEIL, FLOOR, Box, from_fraction, make, to_fraction
from hyperratio.errors import DomainError, PrecisionError, PreconditionError

Rational = Fraction

DEFAULT_BITS = 128
DEFAULT_TARGET = Fraction(1, 10**30)


def to_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts ints, fractions, ``Decimal``, mpmath floats (converted exactly,
    they are dyadic rationals) and strings such as ``"3/7"``, ``"0.125"`` or
    ``"1e-3"``.  Python floats go through their shortest ``repr`` so that
    ``0.1`` means one tenth.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, mpmath.mpf):
        if not mpmath.isfinite(value):
            raise DomainError(f"non-finite value {value}")
        return to_fraction(value._mpf_)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite value {value}")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def _rational_tuple(values) -> tuple[Fraction, ...]:
    if isinstance(values, (str, bytes)) or not isinstance(values, Iterable):
        values = [values]
    return tuple(to_rational(v) for v in values)


def _is_nonpositive_integer(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


@dataclass(frozen=True)
class HyperParams:
    """Upper parameters ``a`` (length p >= 1) and lower parameters ``b`` (length q)."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", _rational_tuple(self.a))
        object.__setattr__(self, "b", _rational_tuple(self.b))
        if len(self.a) < 1:
            raise PreconditionError("need at least one upper parameter (p >= 1)")
        if self.p > self.q + 1:
            raise PreconditionError(f"p <= q + 1 violated: p={self.p}, q={self.q}")
        for j, bj in enumerate(self.b, 1):
            if _is_nonpositive_integer(bj):
                raise PreconditionError(f"b_{j} = {bj} is zero or a negative integer")

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b)

    def require_positive(self) -> None:
        for i, ai in enumerate(self.a, 1):
            if ai <= 0:
                raise DomainError(f"a_{i} = {ai} must be positive for evaluation")
        for j, bj in enumerate(self.b, 1):
            if bj <= 0:
                raise DomainError(f"b_{j} = {bj} must be positive for evaluation")


@dataclass(frozen=True)
class Precision:
    """Working precision in bits and the relative accuracy goal for truncation."""

    working_bits: int = DEFAULT_BITS
    target_rel_error: Fraction = DEFAULT_TARGET

    def __post_init__(self):
        object.__setattr__(self, "target_rel_error", to_rational(self.target_rel_error))
        if self.working_bits < 53:
            raise ValueError("working_bits must be at least 53")
        if not 0 < self.target_rel_error < 1:
            raise ValueError("target_rel_error must lie in (0, 1)")

    def escalated(self) -> "Precision":
        """Twice the bits, with the truncation goal tightened to match."""
        bits = 2 * self.working_bits
        return Precision(bits, min(self.target_rel_error, Fraction(1, 2**bits)))


@dataclass(frozen=True)
class SeriesValue:
    """A value with a rigorous absolute error radius.

    The true quantity lies in ``[value - error_radius, value + error_radius]``.
    ``exact`` is set when the quantity is known as an exact rational.
    """

    value: mpmath.mpf
    error_radius: mpmath.mpf
    terms_used: int = 0
    exact: Fraction | None = field(default=None, compare=False)

    @classmethod
    def from_box(cls, box: Box, terms_used: int = 0, exact: Fraction | None = None) -> "SeriesValue":
        return cls(make(box.midpoint()), make(box.radius()), terms_used, exact)

    @classmethod
    def from_fraction(cls, q: Fraction, prec: Precision, terms_used: int = 0) -> "SeriesValue":
        q = Fraction(q)
        box = Box.exact(q, prec.working_bits)
        if box.lo == box.hi:
            return cls(make(box.lo), make(libmp.fzero), terms_used, q)
        value = from_fraction(q, prec.working_bits, libmp.round_nearest)
        radius = max(abs(q - to_fraction(value)), Fraction(0))
        rad = from_fraction(radius, 53, CEIL)
        return cls(make(value), make(rad), terms_used, q)

    def box(self) -> Box:
        v, r = self.value._mpf_, self.error_radius._mpf_
        return Box(libmp.mpf_sub(v, r, 0), libmp.mpf_add(v, r, 0))

    @property
    def lower(self) -> Fraction:
        return to_fraction(self.value._mpf_) - to_fraction(self.error_radius._mpf_)

    @property
    def upper(self) -> Fraction:
        return to_fraction(self.value._mpf_) + to_fraction(self.error_radius._mpf_)

    def contains(self, q) -> bool:
        q = to_rational(q)
        return self.lower <= q <= self.upper

    def __float__(self) -> float:
        return float(self.value)


def pochhammer(z, n: int) -> Fraction:
    """Rising factorial ``z (z+1) ... (z+n-1)``; equals 1 for ``n = 0``."""
    if n < 0:
        raise ValueError("n must be a natural number")
    z = to_rational(z)
    out = Fraction(1)
    for i in range(n):
        out *= z + i
    return out


def coeff(params: HyperParams, n: int) -> Fraction:
    """``prod (a_i)_n / (prod (b_j)_n * n!)`` as an exact rational."""
    num = Fraction(1)
    for ai in params.a:
        num *= pochhammer(ai, n)
    den = Fraction(math.factorial(n))
    for bj in params.b:
        den *= pochhammer(bj, n)
    if den == 0:
        raise PreconditionError("a lower Pochhammer factor vanishes")
    return num / den


def coeff_list(params: HyperParams, count: int) -> list[Fraction]:
    """First ``count`` coefficients, built by the term-ratio recurrence."""
    out = [Fraction(1)] if count > 0 else []
    for n in range(count - 1):
        out.append(out[-1] * term_ratio(params, 1, n))
    return out


def term_ratio(params: HyperParams, x, n: int) -> Fraction:
    """Exact ``t_{n+1} / t_n = x prod(a_i + n) / (prod(b_j + n) (n + 1))``."""
    x = to_rational(x)
    if x < 0:
        raise DomainError("x must be nonnegative")
    num = x
    for ai in params.a:
        num *= ai + n
    den = Fraction(n + 1)
    for bj in params.b:
        den *= bj + n
    if den == 0:
        raise PreconditionError("a lower Pochhammer factor vanishes")
    return num / den


def iteration_cap(x: Fraction) -> int:
    return 10 * math.ceil(x) + 10_000


def _ratio_sup(upper: Sequence[Fraction], lower: Sequence[Fraction], x: Fraction, m: int) -> Fraction:
    """Upper bound for ``t_{n+1}/t_n`` over all ``n >= m``.

    ``lower`` already includes the ``n + 1`` factor as parameter 1.  Upper
    parameter ``a_i`` is paired with lower parameter ``d_i``; the pair
    ``(a + n)/(d + n)`` is monotone in ``n``, so its supremum is either its
    value at ``m`` or its limit 1.  Unpaired lower parameters contribute
    ``1/(d + m)``.
    """
    rho = x
    for ai, di in zip(upper, lower):
        if ai > di:
            rho *= (ai + m) / (di + m)
    for di in lower[len(upper):]:
        rho /= di + m
    return rho


def _ratio_sup_float(upper, lower, x: float, m: int) -> float:
    rho = x
    for ai, di in zip(upper, lower):
        if ai > di:
            rho *= (ai + m) / (di + m)
    for di in lower[len(upper):]:
        rho /= di + m
    return rho


def _check_domain(params: HyperParams, x: Fraction) -> None:
    if x < 0:
        raise DomainError(f"x = {x} is negative; only x >= 0 is supported")
    if params.p == params.q + 1 and x >= 1:
        raise DomainError(f"x = {x} outside [0, 1) where the p = q + 1 series converges")
    params.require_positive()


def eval_pfq(params: HyperParams, x, prec: Precision | None = None) -> SeriesValue:
    """Enclose ``pFq(a; b; x)`` for ``x >= 0`` (``x < 1`` when ``p = q + 1``).

    Raises :class:`DomainError` outside the domain and :class:`PrecisionError`
    when the tail bound cannot be established within the iteration cap.
    """
    prec = prec or Precision()
    x = to_rational(x)
    _check_domain(params, x)
    lo, hi, terms = _pfq_enclosure(params.a, params.b, x, prec.working_bits, prec.target_rel_error)
    box = Box(lo, hi)
    exact = Fraction(1) if x == 0 else None
    return SeriesValue.from_box(box, terms, exact)


def eval_1f1(a, b, x, prec: Precision | None = None) -> SeriesValue:
    """Enclose Kummer's ``1F1(a; b; x)`` for ``x >= 0``."""
    return eval_pfq(HyperParams((a,), (b,)), x, prec)


@lru_cache(maxsize=8192)
def _pfq_enclosure(a: tuple[Fraction, ...], b: tuple[Fraction, ...], x: Fraction,
                   bits: int, target: Fraction) -> tuple[tuple, tuple, int]:
    one = libmp.fone
    if x == 0:
        return one, one, 1

    # integer form of (a_i + n) and (b_j + n): (num + n*den)/den
    a_num = [(q.numerator, q.denominator) for q in a]
    b_num = [(q.numerator, q.denominator) for q in b]
    a_den_prod = math.prod(d for _, d in a_num)
    b_den_prod = math.prod(d for _, d in b_num)

    x_lo = from_fraction(x, bits, FLOOR)
    x_hi = from_fraction(x, bits, CEIL)
    # tail decisions use a 53-bit upward rounding of x so that the stopping
    # index is the same at every working precision
    x_dec = to_fraction(from_fraction(x, 53, CEIL))
    lower_params = tuple(b) + (Fraction(1),)
    upper_f = [float(q) for q in a]
    lower_f = [float(q) for q in lower_params]
    x_f = float(x_dec)
    log_x = math.log(x_f) if x_f > 0 else -math.inf
    log_target = math.log(target.numerator) - math.log(target.denominator)

    t_lo = t_hi = s_lo = s_hi = one
    log_t = log_s = 0.0
    cap = iteration_cap(x)
    n = 0
    while True:
        if n >= cap:
            raise PrecisionError(f"tail bound not reached within {cap} terms")
        num = b_den_prod * math.prod(p + n * d for p, d in a_num)
        den = a_den_prod * (n + 1) * math.prod(p + n * d for p, d in b_num)
        log_ratio = log_x + math.log(num) - math.log(den)
        rho_f = _ratio_sup_float(upper_f, lower_f, x_f, n + 1)
        if rho_f < 1:
            log_tail = log_t + log_ratio - math.log1p(-rho_f)
            if log_tail <= log_target + log_s:
                rho = _ratio_sup(a, lower_params, x_dec, n + 1)
                if rho < 1:
                    break
        t_lo = _next_term(t_lo, x_lo, num, den, bits, FLOOR)
        t_hi = _next_term(t_hi, x_hi, num, den, bits, CEIL)
        s_lo = libmp.mpf_add(s_lo, t_lo, bits, FLOOR)
        s_hi = libmp.mpf_add(s_hi, t_hi, bits, CEIL)
        log_t += log_ratio
        log_s = log_s + math.log1p(math.exp(log_t - log_s)) if log_t <= log_s else \
            log_t + math.log1p(math.exp(log_s - log_t))
        n += 1

    # tail: sum_{k>n} t_k <= t_{n+1} / (1 - rho)
    t_next = _next_term(t_hi, x_hi, num, den, bits, CEIL)
    factor = from_fraction(1 / (1 - rho), bits, CEIL)
    tail = libmp.mpf_mul(t_next, factor, bits, CEIL)
    s_hi = libmp.mpf_add(s_hi, tail, bits, CEIL)
    return s_lo, s_hi, n + 1


def _next_term(t: tuple, x: tuple, num: int, den: int, bits: int, rnd: str) -> tuple:
    sign, man, exp, _ = x
    if not man:
        return libmp.fzero
    t = libmp.mpf_mul_int(t, int(man) * num, bits, rnd)
    t = libmp.mpf_shift(t, exp)
    return libmp.mpf_div(t, libmp.from_int(den), bits, rnd)
