"""Exact-rational certificates for coefficient-ratio monotonicity.

Everything here is ``Fraction`` arithmetic; no floating value ever enters a
certificate, so any certificate can be replayed bit for bit.

For ``h_{p,q}(a, b, c, x) = sum A_n x^n / sum B_n x^n`` the numerator and
denominator coefficients are Cauchy products

    A_n = sum_k u_{n,k},   u_{n,k} = alpha_k beta_{n-k}
    B_n = sum_k v_{n,k},   v_{n,k} = gamma_k gamma_{n-k}

of the coefficients of ``pFq(a; b-c)``, ``pFq(a; b+c)`` and ``pFq(a; b)``.
``w_{n,k} = u_{n,k} / v_{n,k}`` depends on ``b, c`` only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from hyperratio.errors import LengthMismatchError, PreconditionError
from hyperratio.hyper_series import HyperParams, _rational_tuple, coeff_list, pochhammer, to_rational

DEFAULT_DEPTH = 64


HYPOTHESES_FAIL = "parameters satisfy neither the scalar nor the vector hypotheses"


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class Violation:
    """First index where the expected order fails: ``lhs`` should be >= ``rhs``."""

    index: int
    lhs: Fraction
    rhs: Fraction
    subindex: int | None = None

    def to_dict(self) -> dict:
        out = {"index": self.index, "lhs": format_fraction(self.lhs), "rhs": format_fraction(self.rhs)}
        if self.subindex is not None:
            out["subindex"] = self.subindex
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Violation":
        return cls(d["index"], parse_fraction(d["lhs"]), parse_fraction(d["rhs"]), d.get("subindex"))


@dataclass(frozen=True)
class Certificate:
    """Outcome of an exact monotonicity check over ``range_checked``.

    ``holds`` is True exactly when ``first_violation`` is None; ``strict``
    records whether every comparison was strict.  ``direction`` is
    ``"increasing"`` (nondecreasing) or ``"decreasing"`` (nonincreasing).
    """

    kind: str
    range_checked: tuple[int, int]
    holds: bool
    strict: bool
    first_violation: Violation | None = None
    direction: str = "increasing"
    forced: bool = False
    supporting: tuple["Certificate", ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.holds != (self.first_violation is None):
            raise ValueError("holds must be True exactly when there is no violation")

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "range": list(self.range_checked),
            "holds": self.holds,
            "strict": self.strict,
            "violation": self.first_violation.to_dict() if self.first_violation else None,
            "direction": self.direction,
        }
        if self.forced:
            out["forced"] = True
        if self.supporting:
            out["supporting"] = [c.to_dict() for c in self.supporting]
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        v = d.get("violation")
        return cls(
            kind=d["kind"],
            range_checked=tuple(d["range"]),
            holds=d["holds"],
            strict=d["strict"],
            first_violation=Violation.from_dict(v) if v else None,
            direction=d.get("direction", "increasing"),
            forced=d.get("forced", False),
            supporting=tuple(cls.from_dict(s) for s in d.get("supporting", ())),
            notes=tuple(d.get("notes", ())),
        )


@dataclass(frozen=True)
class CoeffSeq:
    """A total function ``index -> Fraction`` with a label.

    ``batch``, when given, returns the first ``count`` values at once and is
    used by :meth:`take` for sequences that are cheaper to build recursively.
    """

    generator: Callable[[int], Fraction]
    description: str = ""
    batch: Callable[[int], list[Fraction]] | None = field(default=None, compare=False)

    def __call__(self, n: int) -> Fraction:
        return to_rational(self.generator(n))

    def take(self, count: int) -> list[Fraction]:
        if self.batch is not None:
            return [to_rational(v) for v in self.batch(count)]
        return [self(i) for i in range(count)]

    @classmethod
    def from_values(cls, values: Sequence, description: str = "") -> "CoeffSeq":
        vals = [to_rational(v) for v in values]

        def gen(n: int) -> Fraction:
            return vals[n] if n < len(vals) else Fraction(0)

        return cls(gen, description or "explicit values")

    @classmethod
    def hypergeometric(cls, params: HyperParams) -> "CoeffSeq":
        from hyperratio.hyper_series import coeff

        return cls(lambda n: coeff(params, n),
                   f"pFq coefficients a={_fmt(params.a)} b={_fmt(params.b)}",
                   batch=lambda count: coeff_list(params, count))


def _fmt(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _sequence_certificate(kind: str, seq: Sequence[Fraction], lo: int, direction: str) -> Certificate:
    strict = True
    for i in range(len(seq) - 1):
        nxt, cur = seq[i + 1], seq[i]
        if direction == "increasing":
            ok, tight = nxt >= cur, nxt > cur
            lhs, rhs = nxt, cur
        else:
            ok, tight = nxt <= cur, nxt < cur
            lhs, rhs = cur, nxt
        if not ok:
            return Certificate(kind, (lo, lo + len(seq) - 1), False, False,
                               Violation(lo + i + 1, lhs, rhs), direction)
        strict = strict and tight
    return Certificate(kind, (lo, lo + len(seq) - 1), True, strict, None, direction)


def _direction_of(seq: Sequence[Fraction]) -> str | None:
    ups = all(v >= u for u, v in zip(seq, seq[1:]))
    downs = all(v <= u for u, v in zip(seq, seq[1:]))
    if ups:
        return "increasing"
    if downs:
        return "decreasing"
    return None


def prefix_ratio_monotone(a: CoeffSeq, b: CoeffSeq, N: int, direction: str | None = None) -> Certificate:
    """Certify the prefix-sum ratio ``(a_0+...+a_n)/(b_0+...+b_n)`` on ``[0, N]``.

    The direction defaults to that of the termwise ratio ``a_n/b_n``; if the
    termwise ratio is not monotone the prefix ratio is checked for
    ``increasing`` and a note records that the hypothesis failed.
    """
    av, bv = a.take(N + 1), b.take(N + 1)
    for n, bn in enumerate(bv):
        if bn <= 0:
            raise PreconditionError(f"b({n}) = {bn} is not positive")
    termwise = [x / y for x, y in zip(av, bv)]
    found = _direction_of(termwise)
    notes: tuple[str, ...] = ()
    if direction is None:
        direction = found or "increasing"
        if found is None:
            notes = ("termwise ratio a_n/b_n is not monotone",)
    prefix = []
    sa = sb = Fraction(0)
    for x, y in zip(av, bv):
        sa += x
        sb += y
        prefix.append(sa / sb)
    cert = _sequence_certificate("prefix-ratio", prefix, 0, direction)
    return Certificate(cert.kind, cert.range_checked, cert.holds, cert.strict,
                       cert.first_violation, direction, notes=notes)


def cauchy_product_coeffs(c1, c2, N: int) -> list[Fraction]:
    """``[sum_{k<=n} c1(k) c2(n-k) for n in 0..N]``, exact."""
    x = c1.take(N + 1) if isinstance(c1, CoeffSeq) else [to_rational(v) for v in c1[: N + 1]]
    y = c2.take(N + 1) if isinstance(c2, CoeffSeq) else [to_rational(v) for v in c2[: N + 1]]
    return _cauchy(x, y, N)


def _cauchy(x: Sequence[Fraction], y: Sequence[Fraction], N: int) -> list[Fraction]:
    # sum each anti-diagonal over the lcm of denominators, canonicalize once
    out = []
    for n in range(N + 1):
        num, den = 0, 1
        for k in range(n + 1):
            t = x[k] * y[n - k]
            common = math.lcm(den, t.denominator)
            num = num * (common // den) + t.numerator * (common // t.denominator)
            den = common
        out.append(Fraction(num, den))
    return out


def theorem1_w(b, c, n: int, k: int) -> Fraction:
    """``w_{n,k} = (b)_k (b)_{n-k} / ((b-c)_k (b+c)_{n-k})``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    b, c = to_rational(b), to_rational(c)
    return (pochhammer(b, k) * pochhammer(b, n - k)) / (pochhammer(b - c, k) * pochhammer(b + c, n - k))


def theorem1_w_ratio(b, c, n: int, k: int, *, verify: bool = True) -> Fraction:
    """``w_{n,k+1}/w_{n,k} = (b+k)(b+c+n-k-1) / ((b-c+k)(b+n-k-1))``.

    With ``verify`` the closed form is compared against the raw quotient of
    Pochhammer products and an ``ArithmeticError`` is raised on mismatch.
    """
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    b, c = to_rational(b), to_rational(c)
    ratio = ((b + k) * (b + c + n - k - 1)) / ((b - c + k) * (b + n - k - 1))
    if verify and ratio != theorem1_w(b, c, n, k + 1) / theorem1_w(b, c, n, k):
        raise ArithmeticError("closed-form w ratio disagrees with Pochhammer quotient")
    return ratio


def theorem2_w(b, c, n: int, k: int) -> Fraction:
    """Vector ``W_{n,k}``: product of the scalar ``w_{n,k}`` over coordinates."""
    b, c = _pair(b, c)
    out = Fraction(1)
    for bj, cj in zip(b, c):
        out *= theorem1_w(bj, cj, n, k)
    return out


def theorem2_w_ratio(b, c, n: int, k: int) -> Fraction:
    """``W_{n,k+1}/W_{n,k} = prod_j (b_j+k)/(b_j-c_j+k) * (b_j+c_j+n-k-1)/(b_j+n-k-1)``."""
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    b, c = _pair(b, c)
    out = Fraction(1)
    for bj, cj in zip(b, c):
        out *= (bj + k) / (bj - cj + k)
        out *= (bj + cj + n - k - 1) / (bj + n - k - 1)
    return out


def _pair(b, c) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    b, c = _rational_tuple(b), _rational_tuple(c)
    if len(b) != len(c):
        raise LengthMismatchError(f"b has length {len(b)} but c has length {len(c)}")
    return b, c


@dataclass(frozen=True)
class CoefficientTables:
    """Exact ``A_n``, ``B_n`` and ``C_n = A_n/B_n`` for ``n = 0..N``."""

    A: list[Fraction]
    B: list[Fraction]
    alpha: list[Fraction]
    beta: list[Fraction]
    gamma: list[Fraction]

    @property
    def C(self) -> list[Fraction]:
        return [x / y for x, y in zip(self.A, self.B)]


def coefficient_tables(a, b, c, N: int) -> CoefficientTables:
    a = _rational_tuple(a)
    b, c = _pair(b, c)
    minus = HyperParams(a, tuple(bj - cj for bj, cj in zip(b, c)))
    plus = HyperParams(a, tuple(bj + cj for bj, cj in zip(b, c)))
    base = HyperParams(a, b)
    alpha, beta, gamma = (coeff_list(p, N + 1) for p in (minus, plus, base))
    return CoefficientTables(_cauchy(alpha, beta, N), _cauchy(gamma, gamma, N), alpha, beta, gamma)


def _hypotheses_hold(a, b, c) -> bool:
    from hyperratio.turan_suite import (
        AbcParams,
        AbcVecParams,
        check_theorem1_conditions,
        check_theorem2_conditions,
    )

    try:
        vec = AbcVecParams(a, b, c)
    except PreconditionError:
        return False
    if vec.p == 1 and vec.q == 1:
        try:
            if check_theorem1_conditions(AbcParams(a[0], b[0], c[0])).passed:
                return True
        except PreconditionError:
            pass
    return check_theorem2_conditions(vec).passed


def certify_coeff_monotone(a, b, c, N: int = DEFAULT_DEPTH, *, unsafe: bool = False) -> Certificate:
    """Certify ``C_n = A_n/B_n`` nondecreasing on ``[0, N]``.

    The supporting certificate checks, from the definition ``u/v``, that
    ``w_{n,k}`` is nondecreasing in ``k`` for every ``n <= N``.  The two are
    reported side by side and may disagree: monotone ``w`` in ``k`` for each
    fixed ``n`` does not by itself force ``C_n`` to increase in ``n``.

    Parameters must satisfy the scalar or the vector theorem hypotheses
    unless ``unsafe=True``, in which case the certificate is marked forced.
    """
    a, b, c = _rational_tuple(a), _rational_tuple(b), _rational_tuple(c)
    if len(b) != len(c):
        raise LengthMismatchError(f"b has length {len(b)} but c has length {len(c)}")
    if not _hypotheses_hold(a, b, c):
        if not unsafe:
            raise PreconditionError(HYPOTHESES_FAIL + "; pass unsafe=True to force")
    tables = coefficient_tables(a, b, c, N)
    main = _sequence_certificate("coeff-ratio", tables.C, 0, "increasing")
    support = certify_w_monotone_from_tables(tables, N)
    notes = ()
    if support.holds and not main.holds:
        notes = ("w_{n,k} nondecreasing in k for every n, yet C_n decreases",)
    return Certificate(main.kind, main.range_checked, main.holds, main.strict, main.first_violation,
                       "increasing", forced=unsafe and not _hypotheses_hold(a, b, c),
                       supporting=(support,), notes=notes)


def certify_w_monotone_from_tables(tables: CoefficientTables, N: int) -> Certificate:
    """``w_{n,k} = u_{n,k}/v_{n,k}`` nondecreasing in ``k``, checked for all ``n <= N``."""
    al, be, ga = tables.alpha, tables.beta, tables.gamma
    strict = True
    for n in range(1, N + 1):
        prev = None
        for k in range(n + 1):
            w = (al[k] * be[n - k]) / (ga[k] * ga[n - k])
            if prev is not None:
                if w < prev:
                    return Certificate("w-ratio", (0, N), False, False, Violation(n, w, prev, subindex=k))
                strict = strict and w > prev
            prev = w
    return Certificate("w-ratio", (0, N), True, strict)
