"""Ratio functions h, h_{p,q} and grid verification of monotonicity and Turán bounds.

    h(a, b, c, x)       = 1F1(a; b-c; x) 1F1(a; b+c; x) / 1F1(a; b; x)^2
    h_{p,q}(a, b, c, x) = pFq(a; b-c; x) pFq(a; b+c; x) / pFq(a; b; x)^2

Grid checks are sampled: a decrease is reported only when two enclosures are
separated, and overlapping pairs are re-evaluated at doubled precision before
being declared inconclusive.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from hyperratio.errors import DomainError, LengthMismatchError, PreconditionError
from hyperratio.exp_sections import ratio_f, ratio_g
from hyperratio.hyper_series import (
    HyperParams,
    Precision,
    SeriesValue,
    _rational_tuple,
    eval_pfq,
    to_rational,
)

MAX_ESCALATIONS = 4
DEFAULT_POINTS = 129


@dataclass(frozen=True)
class AbcParams:
    """Scalar parameters of the Kummer ratio ``h(a, b, c, x)``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.a <= 0:
            raise PreconditionError(f"a = {self.a} must be positive")
        if self.b - self.c <= 0:
            raise PreconditionError(f"b - c = {self.b - self.c} must be positive")
        s = self.b + self.c
        if s.denominator == 1 and s <= 0:
            raise PreconditionError(f"b + c = {s} is zero or a negative integer")

    def as_vector(self) -> "AbcVecParams":
        return AbcVecParams((self.a,), (self.b,), (self.c,))


@dataclass(frozen=True)
class AbcVecParams:
    """Vector parameters of ``h_{p,q}``: ``a`` of length p, ``b`` and ``c`` of length q."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _rational_tuple(getattr(self, name)))
        if len(self.b) != len(self.c):
            raise LengthMismatchError(f"b has length {len(self.b)} but c has length {len(self.c)}")
        if not self.a:
            raise PreconditionError("need at least one upper parameter")
        if self.p > self.q + 1:
            raise PreconditionError(f"p <= q + 1 violated: p={self.p}, q={self.q}")
        for i, (bi, ci) in enumerate(zip(self.b, self.c), 1):
            if bi <= 0:
                raise PreconditionError(f"b_{i} = {bi} must be positive")
            if bi - ci <= 0:
                raise PreconditionError(f"b_{i} - c_{i} = {bi - ci} must be positive")

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b)

    def shifted(self, sign: int) -> HyperParams:
        return HyperParams(self.a, tuple(bi + sign * ci for bi, ci in zip(self.b, self.c)))

    def base(self) -> HyperParams:
        return HyperParams(self.a, self.b)


@dataclass(frozen=True)
class Clause:
    name: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class ConditionReport:
    theorem: str
    clauses: tuple[Clause, ...]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.clauses)

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.holds]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "passed": self.passed,
            "clauses": [{"clause": c.name, "holds": c.holds, "detail": c.detail} for c in self.clauses],
        }

    def format(self) -> str:
        lines = [f"{self.theorem} hypotheses: {'pass' if self.passed else 'FAIL'}"]
        for c in self.clauses:
            lines.append(f"  [{'ok' if c.holds else 'FAIL'}] {c.name}  ({c.detail})")
        return "\n".join(lines)


def check_theorem1_conditions(params: AbcParams) -> ConditionReport:
    """Clauses ``0 < a``, ``a < b - c`` and ``b > 1``, exactly as stated."""
    a, b, c = params.a, params.b, params.c
    return ConditionReport("scalar 1F1", (
        Clause("0 < a", a > 0, f"a = {a}"),
        Clause("a < b - c", a < b - c, f"{a} < {b - c}"),
        Clause("b > 1", b > 1, f"b = {b}"),
    ))


def check_theorem2_conditions(params: AbcVecParams) -> ConditionReport:
    """Clauses of the vector theorem, including the ``a_i > b_i`` clause for i >= 2.

    When ``p = q + 1`` the last index has no ``b_i``; it is compared with
    ``b_q`` instead.  The clause is not used by the coefficient argument but is
    kept so that reports match the stated hypotheses.
    """
    a, b, c = params.a, params.b, params.c
    clauses = [Clause("p <= q + 1", params.p <= params.q + 1, f"p = {params.p}, q = {params.q}")]
    for i, (bi, ci) in enumerate(zip(b, c), 1):
        clauses.append(Clause(f"b_{i} > 0", bi > 0, f"b_{i} = {bi}"))
        clauses.append(Clause(f"b_{i} - c_{i} > 0", bi - ci > 0, f"b_{i} - c_{i} = {bi - ci}"))
    for i in range(2, params.p + 1):
        j = min(i, params.q)
        if j == 0:
            continue
        clauses.append(Clause(f"a_{i} > b_{j}", a[i - 1] > b[j - 1], f"{a[i - 1]} > {b[j - 1]}"))
    for i, bi in enumerate(b, 1):
        clauses.append(Clause(f"b_{i} > 1", bi > 1, f"b_{i} = {bi}"))
    return ConditionReport("vector pFq", tuple(clauses))


def _ratio_of_series(params: AbcVecParams, x: Fraction, prec: Precision) -> SeriesValue:
    if x == 0 or all(ci == 0 for ci in params.c):
        return SeriesValue.from_fraction(Fraction(1), prec, terms_used=1)
    bits = prec.working_bits
    minus = eval_pfq(params.shifted(-1), x, prec)
    plus = eval_pfq(params.shifted(+1), x, prec)
    base = eval_pfq(params.base(), x, prec)
    box = minus.box().mul(plus.box(), bits).div(base.box().square(bits), bits)
    return SeriesValue.from_box(box, max(minus.terms_used, plus.terms_used, base.terms_used))


def h_kummer(params: AbcParams, x, prec: Precision | None = None) -> SeriesValue:
    """Enclose ``h(a, b, c, x)``; exactly 1 at ``x = 0`` or ``c = 0``."""
    prec = prec or Precision()
    x = to_rational(x)
    if x < 0:
        raise DomainError(f"x = {x} is negative")
    return _ratio_of_series(params.as_vector(), x, prec)


def h_pfq(params: AbcVecParams, x, prec: Precision | None = None) -> SeriesValue:
    """Enclose ``h_{p,q}(a, b, c, x)``; requires ``x < 1`` when ``p = q + 1``."""
    prec = prec or Precision()
    x = to_rational(x)
    if x < 0:
        raise DomainError(f"x = {x} is negative")
    if params.p == params.q + 1 and x >= 1:
        raise DomainError(f"x = {x} outside [0, 1) for p = q + 1")
    return _ratio_of_series(params, x, prec)


@dataclass(frozen=True)
class Target:
    """A function of ``x`` that the grid checks know how to evaluate."""

    kind: str
    n: int | None = None
    params: AbcParams | AbcVecParams | None = None

    @classmethod
    def f(cls, n: int) -> "Target":
        return cls("f", n=n)

    @classmethod
    def g(cls, n: int) -> "Target":
        return cls("g", n=n)

    @classmethod
    def h(cls, a, b, c) -> "Target":
        return cls("h", params=AbcParams(a, b, c))

    @classmethod
    def hpq(cls, a, b, c) -> "Target":
        return cls("hpq", params=AbcVecParams(a, b, c))

    def evaluate(self, x: Fraction, prec: Precision) -> SeriesValue:
        if self.kind == "f":
            return ratio_f(self.n, x, prec)
        if self.kind == "g":
            return ratio_g(self.n, x, prec)
        if self.kind == "h":
            return h_kummer(self.params, x, prec)
        if self.kind == "hpq":
            return h_pfq(self.params, x, prec)
        raise ValueError(f"unknown target kind {self.kind!r}")

    @property
    def baseline(self) -> Fraction:
        """Value at ``x = 0``: the Turán-type lower bound."""
        return Fraction(self.n + 1, self.n + 2) if self.kind == "f" else Fraction(1)

    @property
    def ceiling(self) -> Fraction | None:
        """Strict upper bound known in closed form: ``f_n < 1``, ``g_n < (n+2)/(n+1)``."""
        if self.kind == "f":
            return Fraction(1)
        if self.kind == "g":
            return Fraction(self.n + 2, self.n + 1)
        return None

    @property
    def domain_limit(self) -> Fraction | None:
        if self.kind == "hpq" and self.params.p == self.params.q + 1:
            return Fraction(1)
        return None

    @property
    def theorem_limit(self) -> Fraction | None:
        return Fraction(1) if self.kind == "hpq" else None

    def conditions(self) -> ConditionReport:
        if self.kind in ("f", "g"):
            return check_theorem1_conditions(AbcParams(1, self.n + 2, 1))
        if self.kind == "h":
            return check_theorem1_conditions(self.params)
        return check_theorem2_conditions(self.params)

    def describe(self) -> str:
        if self.kind in ("f", "g"):
            return f"{self.kind}_{self.n}"
        p = self.params
        if self.kind == "h":
            return f"h(a={p.a}, b={p.b}, c={p.c})"
        fmt = lambda v: "(" + ", ".join(str(t) for t in v) + ")"
        return f"h_{p.p},{p.q}(a={fmt(p.a)}, b={fmt(p.b)}, c={fmt(p.c)})"


def _decimal(q: Fraction, digits: int = 6) -> Fraction:
    return Fraction(format(float(q), f".{digits}g")) if q else Fraction(0)


def default_grid(x_max, points: int = DEFAULT_POINTS, spacing: str = "log", x_min=0) -> list[Fraction]:
    """Grid on ``[x_min, x_max]``.

    ``log`` spacing with ``x_min = 0`` is ``0`` followed by ``points - 1``
    geometric points from ``x_max * 1e-4`` to ``x_max``; points are rounded to
    6 significant decimal digits so they print cleanly.
    """
    lo, hi = to_rational(x_min), to_rational(x_max)
    if not lo < hi:
        raise ValueError("grid min must be below max")
    if points < 2:
        raise ValueError("a grid needs at least 2 points")
    if spacing == "linear":
        step = (hi - lo) / (points - 1)
        return [lo + i * step for i in range(points)]
    if spacing != "log":
        raise ValueError(f"unknown spacing {spacing!r}")
    if lo < 0:
        raise ValueError("log spacing needs a nonnegative minimum")
    head: list[Fraction] = []
    start, count = lo, points
    if lo == 0:
        head, start, count = [Fraction(0)], hi / 10_000, points - 1
    if count == 1:
        return head + [hi]
    ratio = (math.log(hi) - math.log(start)) / (count - 1)
    tail = [_decimal(Fraction(math.exp(math.log(start) + i * ratio))) for i in range(count)]
    tail[0], tail[-1] = start, hi
    grid = head + tail
    if any(u >= v for u, v in zip(grid, grid[1:])):
        raise ValueError("grid too dense for 6-digit rounding")
    return grid


def parse_grid(text: str) -> list[Fraction]:
    """Parse ``min:max:points`` with an optional ``@log`` or ``@linear`` suffix,
    or an explicit comma-separated list such as ``0,1/4,1/2``."""
    if "," in text:
        grid = [to_rational(t) for t in text.split(",")]
        if any(u >= v for u, v in zip(grid, grid[1:])):
            raise ValueError(f"grid {text!r} is not strictly increasing")
        return grid
    body, _, spacing = text.partition("@")
    parts = body.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid {text!r} is not of the form min:max:points")
    lo, hi, points = to_rational(parts[0]), to_rational(parts[1]), int(parts[2])
    return default_grid(hi, points, spacing or "linear", x_min=lo)


@dataclass
class MonotoneReport:
    """Result of evaluating a target on a grid.

    ``nondecreasing`` is False only when some pair of consecutive enclosures
    certifies a decrease.  ``worst_margin`` is the smallest
    ``value[i+1] - value[i] + radius[i] + radius[i+1]`` and ``turan_min`` is the
    smallest ``value - radius - baseline``.  When the target has a known strict
    ``ceiling``, every enclosure must also lie strictly below it.
    """

    target: str
    grid: list[Fraction]
    values: list[SeriesValue]
    nondecreasing: bool
    worst_margin: Fraction
    worst_location: tuple[Fraction, Fraction]
    turan_min: Fraction
    turan_holds: bool
    baseline: Fraction = Fraction(1)
    decreases: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    inconclusive: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    turan_violations: list[Fraction] = field(default_factory=list)
    turan_inconclusive: list[Fraction] = field(default_factory=list)
    ceiling: Fraction | None = None
    ceiling_violations: list[Fraction] = field(default_factory=list)
    ceiling_inconclusive: list[Fraction] = field(default_factory=list)
    beyond_theorem_domain: bool = False
    escalations: int = 0

    @property
    def ceiling_holds(self) -> bool | None:
        if self.ceiling is None:
            return None
        return not self.ceiling_violations and not self.ceiling_inconclusive

    @property
    def verdict(self) -> str:
        if self.decreases or self.turan_violations or self.ceiling_violations:
            return "violated"
        if self.inconclusive or self.turan_inconclusive or self.ceiling_inconclusive:
            return "inconclusive"
        return "verified"

    @property
    def monotone_verified(self) -> bool:
        return self.nondecreasing and not self.inconclusive

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "verdict": self.verdict,
            "nondecreasing": self.nondecreasing,
            "turan_holds": self.turan_holds,
            "baseline": format_rational(self.baseline),
            "worst_margin": format_number(self.worst_margin),
            "worst_location": [format_rational(x) for x in self.worst_location],
            "turan_min": format_number(self.turan_min),
            "ceiling": None if self.ceiling is None else format_rational(self.ceiling),
            "ceiling_holds": self.ceiling_holds,
            "beyond_theorem_domain": self.beyond_theorem_domain,
            "escalations": self.escalations,
            "decreases": [[format_rational(u), format_rational(v)] for u, v in self.decreases],
            "inconclusive": [[format_rational(u), format_rational(v)] for u, v in self.inconclusive],
            "turan_violations": [format_rational(x) for x in self.turan_violations],
            "grid": [format_rational(x) for x in self.grid],
            "values": [
                {"value": format_number(v.value), "error_radius": format_number(v.error_radius, 6)}
                for v in self.values
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "value", "error_radius"])
        for x, v in zip(self.grid, self.values):
            writer.writerow([format_rational(x), format_number(v.value), format_number(v.error_radius, 6)])
        return buf.getvalue()


def format_rational(q: Fraction) -> str:
    """Exact decimal when the denominator is 2^i 5^j, else ``p/q``."""
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    scaled = q * 10**places
    text = str(abs(scaled.numerator)).rjust(places + 1, "0")
    sign = "-" if q < 0 else ""
    if not places:
        return sign + text
    return f"{sign}{text[:-places]}.{text[-places:]}"


def format_number(v, digits: int = 36) -> str:
    if isinstance(v, Fraction):
        v = mpmath.mpf(v.numerator) / v.denominator if v else mpmath.mpf(0)
    return mpmath.nstr(v, digits, min_fixed=-4, max_fixed=6)


def _pair_state(u: SeriesValue, v: SeriesValue) -> int:
    """+1 certified nondecreasing, -1 certified decrease, 0 overlap."""
    if u.exact is not None and v.exact is not None:
        return 1 if v.exact >= u.exact else -1
    if v.lower >= u.upper:
        return 1
    if v.upper < u.lower:
        return -1
    return 0


def _turan_state(v: SeriesValue, baseline: Fraction) -> int:
    if v.exact is not None:
        return 1 if v.exact >= baseline else -1
    if v.lower >= baseline:
        return 1
    if v.upper < baseline:
        return -1
    return 0


def _ceiling_state(v: SeriesValue, ceiling: Fraction | None) -> int:
    if ceiling is None:
        return 1
    if v.exact is not None:
        return 1 if v.exact < ceiling else -1
    if v.upper < ceiling:
        return 1
    if v.lower >= ceiling:
        return -1
    return 0


def _check_grid(target: Target, grid: Sequence) -> list[Fraction]:
    xs = [to_rational(x) for x in grid]
    if len(xs) < 2:
        raise ValueError("grid needs at least two points")
    if any(u >= v for u, v in zip(xs, xs[1:])):
        raise ValueError("grid must be strictly increasing")
    if xs[0] < 0:
        raise DomainError("grid contains negative x")
    limit = target.domain_limit
    if limit is not None and xs[-1] >= limit:
        raise DomainError(f"grid reaches x = {xs[-1]}, outside [0, {limit}) for p = q + 1")
    return xs


def _survey(target: Target, grid: Sequence, prec: Precision | None) -> MonotoneReport:
    prec = prec or Precision()
    xs = _check_grid(target, grid)
    precs = [prec] * len(xs)
    values = [target.evaluate(x, prec) for x in xs]
    baseline = target.baseline
    ceiling = target.ceiling

    escalations = 0
    while True:
        pair = [_pair_state(u, v) for u, v in zip(values, values[1:])]
        turan = [_turan_state(v, baseline) for v in values]
        top = [_ceiling_state(v, ceiling) for v in values]
        redo = {i for i, s in enumerate(pair) if s == 0} | {i + 1 for i, s in enumerate(pair) if s == 0}
        redo |= {i for i, s in enumerate(turan) if s == 0}
        redo |= {i for i, s in enumerate(top) if s == 0}
        if not redo or escalations == MAX_ESCALATIONS:
            break
        escalations += 1
        for i in sorted(redo):
            precs[i] = precs[i].escalated()
            values[i] = target.evaluate(xs[i], precs[i])

    margins = [v.upper - u.lower for u, v in zip(values, values[1:])]
    worst = min(range(len(margins)), key=margins.__getitem__)
    lows = [(v.exact if v.exact is not None else v.lower) - baseline for v in values]
    limit = target.theorem_limit
    return MonotoneReport(
        target=target.describe(),
        grid=xs,
        values=values,
        nondecreasing=all(s >= 0 for s in pair),
        worst_margin=margins[worst],
        worst_location=(xs[worst], xs[worst + 1]),
        turan_min=min(lows),
        turan_holds=all(s > 0 for s in turan),
        baseline=baseline,
        decreases=[(xs[i], xs[i + 1]) for i, s in enumerate(pair) if s < 0],
        inconclusive=[(xs[i], xs[i + 1]) for i, s in enumerate(pair) if s == 0],
        turan_violations=[xs[i] for i, s in enumerate(turan) if s < 0],
        turan_inconclusive=[xs[i] for i, s in enumerate(turan) if s == 0],
        ceiling=ceiling,
        ceiling_violations=[xs[i] for i, s in enumerate(top) if s < 0],
        ceiling_inconclusive=[xs[i] for i, s in enumerate(top) if s == 0],
        beyond_theorem_domain=limit is not None and xs[-1] >= limit,
        escalations=escalations,
    )


def grid_monotone_check(target: Target, grid: Sequence, prec: Precision | None = None) -> MonotoneReport:
    """Evaluate ``target`` on ``grid`` and look for certified decreases."""
    return _survey(target, grid, prec)


def turan_check(target: Target, grid: Sequence, prec: Precision | None = None) -> MonotoneReport:
    """Same survey; the verdict of interest is ``turan_holds``.

    For ``h`` and ``g`` this is the Turán inequality ``value >= 1``; for
    ``f_n`` the bound is its value at zero, ``(n+1)/(n+2)``.
    """
    return _survey(target, grid, prec)
