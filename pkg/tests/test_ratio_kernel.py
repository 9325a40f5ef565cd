import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperratio import (
    Certificate,
    CoeffSeq,
    HyperParams,
    LengthMismatchError,
    PreconditionError,
    cauchy_product_coeffs,
    certify_coeff_monotone,
    prefix_ratio_monotone,
    theorem1_w,
    theorem1_w_ratio,
    theorem2_w_ratio,
)
from hyperratio.ratio_kernel import coefficient_tables, theorem2_w
from hyperratio.sampling import theorem1_draw, theorem2_draw


def random_ratio_pair(rng: random.Random, length: int, decreasing: bool = False):
    """Positive ``b`` and ``a = r * b`` with ``r`` sorted."""
    b = [Fraction(rng.randint(1, 40), rng.randint(1, 9)) for _ in range(length)]
    r = sorted((Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(length)), reverse=decreasing)
    return [ri * bi for ri, bi in zip(r, b)], b


def sympy_product(x, y, N):
    t = sympy.Symbol("t")
    px = sympy.Poly([sympy.Rational(v.numerator, v.denominator) for v in reversed(x[: N + 1])], t, domain="QQ")
    py = sympy.Poly([sympy.Rational(v.numerator, v.denominator) for v in reversed(y[: N + 1])], t, domain="QQ")
    coeffs = (px * py).all_coeffs()[::-1]
    coeffs += [0] * (2 * N + 1 - len(coeffs))
    return [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs[: N + 1]]


# --- prefix ratios ------------------------------------------------------------

def test_identical_sequences_give_constant_prefix_ratio():
    seq = CoeffSeq.from_values([Fraction(k + 1, 3) for k in range(10)])
    cert = prefix_ratio_monotone(seq, seq, 9)
    assert cert.holds and not cert.strict


def test_linear_over_constant():
    cert = prefix_ratio_monotone(CoeffSeq(lambda n: Fraction(n)), CoeffSeq(lambda n: Fraction(1)), 3)
    assert cert.holds and cert.strict and cert.direction == "increasing"


def test_decreasing_termwise_ratio():
    cert = prefix_ratio_monotone(CoeffSeq(lambda n: Fraction(1)), CoeffSeq(lambda n: Fraction(2) ** n), 4)
    assert cert.holds and cert.direction == "decreasing"


def test_prefix_ratio_rejects_nonpositive_denominators():
    with pytest.raises(PreconditionError):
        prefix_ratio_monotone(CoeffSeq(lambda n: Fraction(1)), CoeffSeq(lambda n: Fraction(n)), 3)


def test_prefix_ratio_reports_a_violation_when_forced():
    a = CoeffSeq.from_values([0, 5, 0, 0])
    b = CoeffSeq.from_values([1, 1, 1, 1])
    cert = prefix_ratio_monotone(a, b, 3, direction="increasing")
    assert not cert.holds
    v = cert.first_violation
    assert v.index == 2 and v.lhs < v.rhs


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.booleans())
def test_monotone_termwise_ratio_gives_monotone_prefix_ratio(seed, decreasing):
    a, b = random_ratio_pair(random.Random(seed), 31, decreasing)
    cert = prefix_ratio_monotone(CoeffSeq.from_values(a), CoeffSeq.from_values(b), 30)
    assert cert.holds
    assert cert.direction == ("decreasing" if decreasing else "increasing") or len(set(x / y for x, y in zip(a, b))) == 1


def _poly(coeffs, x):
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_monotone_coefficient_ratio_gives_monotone_series_ratio(seed):
    a, b = random_ratio_pair(random.Random(seed), 31)
    grid = [Fraction(k, 8) for k in range(0, 17)]
    ratios = [_poly(a, x) / _poly(b, x) for x in grid]
    assert all(u <= v for u, v in zip(ratios, ratios[1:]))


# --- Cauchy products ----------------------------------------------------------

def test_cauchy_square_of_kummer_1_2():
    seq = CoeffSeq.hypergeometric(HyperParams((1,), (2,)))
    assert cauchy_product_coeffs(seq, seq, 2) == [1, 1, Fraction(7, 12)]


def test_cauchy_first_terms():
    x = [Fraction(3, 7), Fraction(2)]
    y = [Fraction(-5, 2), Fraction(1, 9)]
    assert cauchy_product_coeffs(x, y, 0) == [Fraction(3, 7) * Fraction(-5, 2)]


def test_numerator_product_first_coefficient():
    one = CoeffSeq.hypergeometric(HyperParams((1,), (1,)))
    three = CoeffSeq.hypergeometric(HyperParams((1,), (3,)))
    assert cauchy_product_coeffs(one, three, 1)[1] == Fraction(4, 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 64), st.integers(0, 2**32))
def test_cauchy_matches_polynomial_multiplication(N, seed):
    rng = random.Random(seed)
    x = [Fraction(rng.randint(-99, 99), rng.randint(1, 50)) for _ in range(N + 1)]
    y = [Fraction(rng.randint(-99, 99), rng.randint(1, 50)) for _ in range(N + 1)]
    assert cauchy_product_coeffs(x, y, N) == sympy_product(x, y, N)


def test_cauchy_hypergeometric_against_sympy():
    params = HyperParams((Fraction(1, 3), 2), (Fraction(7, 4),))
    seq = CoeffSeq.hypergeometric(params)
    values = seq.take(65)
    assert cauchy_product_coeffs(seq, seq, 64) == sympy_product(values, values, 64)


# --- w sequences --------------------------------------------------------------

def test_w_examples():
    assert theorem1_w(2, 1, 2, 1) == Fraction(4, 3)
    b, c = Fraction(5, 2), Fraction(1, 3)
    assert theorem1_w(b, c, 6, 0) == _rising(b, 6) / _rising(b + c, 6)
    for n in range(6):
        for k in range(n + 1):
            assert theorem1_w(Fraction(7, 3), 0, n, k) == 1


def _rising(z, n):
    out = Fraction(1)
    for j in range(n):
        out *= z + j
    return out


def test_w_ratio_examples():
    assert theorem1_w_ratio(2, 1, 2, 0) == Fraction(8, 3)
    assert theorem1_w_ratio(Fraction(9, 4), 0, 7, 3) == 1
    assert theorem1_w_ratio(3, Fraction(1, 2), 4, 1) == theorem1_w(3, Fraction(1, 2), 4, 2) / theorem1_w(3, Fraction(1, 2), 4, 1)


def test_w_ratio_gamma_identity_on_random_inputs():
    rng = random.Random(2024)
    checked = 0
    while checked < 200:
        b = Fraction(rng.randint(1, 80), rng.randint(1, 12))
        c = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
        n = rng.randint(1, 30)
        k = rng.randint(0, n - 1)
        try:
            raw = theorem1_w(b, c, n, k + 1) / theorem1_w(b, c, n, k)
        except ZeroDivisionError:
            continue
        assert theorem1_w_ratio(b, c, n, k, verify=False) == raw
        checked += 1


def test_w_ratio_at_least_one_under_scalar_hypotheses():
    rng = random.Random(31)
    for _ in range(25):
        p = theorem1_draw(rng)
        for n in range(1, 41):
            for k in range(n):
                assert theorem1_w_ratio(p.b, p.c, n, k, verify=False) >= 1


def test_vector_w_ratio_examples():
    assert theorem2_w_ratio((2, 3), (1, 1), 2, 0) == 5
    assert theorem2_w_ratio((2, Fraction(7, 2)), (0, 0), 5, 2) == 1
    rng = random.Random(4)
    for _ in range(30):
        b, c = Fraction(rng.randint(2, 40), 4), Fraction(rng.randint(0, 7), 4)
        n = rng.randint(1, 20)
        k = rng.randint(0, n - 1)
        assert theorem2_w_ratio((b,), (c,), n, k) == theorem1_w_ratio(b, c, n, k)
        assert theorem2_w((b, b + 1), (c, c), n, k) == theorem1_w(b, c, n, k) * theorem1_w(b + 1, c, n, k)


def test_vector_w_ratio_length_mismatch():
    with pytest.raises(LengthMismatchError):
        theorem2_w_ratio((2, 3), (1,), 2, 0)


# --- coefficient certificates -------------------------------------------------

def test_certificate_first_two_coefficients():
    tables = coefficient_tables((1,), (2,), (1,), 1)
    assert tables.A == [1, Fraction(4, 3)] and tables.B == [1, 1]
    assert tables.C == [1, Fraction(4, 3)]
    assert certify_coeff_monotone((1,), (2,), (1,), 1).holds


def test_zero_shift_is_constant():
    cert = certify_coeff_monotone((Fraction(3, 2),), (Fraction(5, 2),), (0,), 20)
    assert cert.holds and not cert.strict
    assert all(c == 1 for c in coefficient_tables((Fraction(3, 2),), (Fraction(5, 2),), (0,), 20).C)


@pytest.mark.parametrize("n", range(1, 6))
def test_exponential_remainder_coefficients_increase(n):
    cert = certify_coeff_monotone((1,), (n + 2,), (1,), 50)
    assert cert.holds and cert.strict
    assert cert.supporting[0].holds


def test_vector_certificate_example():
    assert certify_coeff_monotone((1,), (2, 3), (1, 1), 32).holds


def test_hypotheses_are_enforced_unless_unsafe():
    with pytest.raises(PreconditionError):
        certify_coeff_monotone((1,), (Fraction(1, 2),), (Fraction(1, 4),), 8)
    cert = certify_coeff_monotone((1,), (Fraction(1, 2),), (Fraction(1, 4),), 8, unsafe=True)
    assert cert.forced
    assert "forced" in cert.to_json()


def test_certificate_json_round_trip():
    cert = certify_coeff_monotone((Fraction(1, 2),), (3,), (1,), 40)
    again = Certificate.from_dict(cert.to_dict())
    assert again.holds == cert.holds and again.first_violation == cert.first_violation
    assert (cert.first_violation is None) == cert.holds


def test_reported_violation_replays_exactly():
    cert = certify_coeff_monotone((Fraction(1, 2),), (3,), (1,), 40)
    v = cert.first_violation
    C = coefficient_tables((Fraction(1, 2),), (3,), (1,), 40).C
    assert (v.lhs, v.rhs) == (C[v.index], C[v.index - 1])
    assert v.lhs < v.rhs


def test_w_monotone_does_not_force_coefficient_monotone():
    # small a: every w_{n,.} is increasing yet C_n eventually drops
    cert = certify_coeff_monotone((Fraction(1, 2),), (3,), (1,), 64)
    assert cert.supporting[0].holds
    assert not cert.holds
    assert cert.notes


def test_coefficient_certificate_holds_for_scalar_draws_with_a_at_least_one():
    rng = random.Random(8)
    seen = 0
    while seen < 15:
        p = theorem1_draw(rng)
        if p.a < 1:
            continue
        seen += 1
        cert = certify_coeff_monotone((p.a,), (p.b,), (p.c,), 48)
        assert cert.holds, p


def test_vector_w_ratio_at_least_one_for_draws():
    rng = random.Random(12)
    for q in (2, 3):
        for _ in range(10):
            p = theorem2_draw(rng, q)
            for n in range(1, 31):
                for k in range(n):
                    assert theorem2_w_ratio(p.b, p.c, n, k) >= 1
