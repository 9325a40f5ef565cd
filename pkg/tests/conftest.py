"""Shared oracles and the acceptance summary hook."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

ACCEPTANCE_LINES: list[str] = []

# reference values use a separate mpmath context far above working precision
REF = mpmath.MPContext()
REF.dps = 120


def ref(expr):
    """Evaluate ``expr(ctx)`` in the high-precision reference context."""
    return expr(REF)


def encloses(value, reference, slack=None) -> bool:
    """True if the reference lies in the enclosure, up to the reference's own error."""
    slack = REF.mpf(10) ** -100 if slack is None else slack
    lo = REF.mpf(value.lower.numerator) / value.lower.denominator
    hi = REF.mpf(value.upper.numerator) / value.upper.denominator
    return lo - slack <= reference <= hi + slack


def fraction_tail(n: int, x: Fraction, terms: int) -> Fraction:
    """``sum_{k=n+1}^{n+terms} x^k/k!`` exactly."""
    term = Fraction(1)
    for k in range(1, n + 2):
        term *= x / k
    total = Fraction(0)
    for k in range(n + 1, n + 1 + terms):
        total += term
        term *= x / (k + 1)
    return total


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def acceptance():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
