"""Random rational parameters drawn from the theorem hypothesis regions."""

from __future__ import annotations

import random
from fractions import Fraction

from hyperratio.turan_suite import AbcParams, AbcVecParams


def _unit(rng: random.Random, den: int = 100) -> Fraction:
    """Uniform on ``{1/den, ..., (den-1)/den}``."""
    return Fraction(rng.randint(1, den - 1), den)


def theorem1_draw(rng: random.Random, b_max: int = 12) -> AbcParams:
    """``b > 1``, ``0 <= c < b`` and ``0 < a < b - c``, all with small denominators."""
    b = 1 + Fraction(rng.randint(1, 8 * (b_max - 1)), 8)
    c = b * Fraction(rng.randint(0, 19), 20)
    a = (b - c) * _unit(rng)
    return AbcParams(a, b, c)


def theorem2_draw(rng: random.Random, q: int, p: int | None = None) -> AbcVecParams:
    """Vector parameters satisfying every clause of the vector theorem, with ``c >= 0``.

    ``b_j`` in ``(1, 5]``, ``c_j = b_j * t`` with ``t`` in ``[0, 0.9]``,
    ``a_1`` in ``(0, 3]`` and ``a_i`` exceeding its paired ``b`` by at most 1.
    """
    if p is None:
        p = rng.randint(1, q + 1)
    b = [1 + Fraction(rng.randint(1, 32), 8) for _ in range(q)]
    c = [bj * Fraction(rng.randint(0, 9), 10) for bj in b]
    a = [Fraction(rng.randint(1, 24), 8)]
    for i in range(2, p + 1):
        paired = b[min(i, q) - 1]
        a.append(paired + Fraction(rng.randint(1, 8), 8))
    return AbcVecParams(tuple(a), tuple(b), tuple(c))
