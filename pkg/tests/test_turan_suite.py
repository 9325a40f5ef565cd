import csv
import io
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperratio import (
    AbcParams,
    AbcVecParams,
    DomainError,
    LengthMismatchError,
    Precision,
    PreconditionError,
    Target,
    certify_coeff_monotone,
    check_theorem1_conditions,
    check_theorem2_conditions,
    default_grid,
    grid_monotone_check,
    h_kummer,
    h_pfq,
    ratio_g,
    turan_check,
)
from hyperratio.sampling import theorem1_draw, theorem2_draw
from hyperratio.turan_suite import parse_grid

from conftest import REF, encloses


def overlap(u, v) -> bool:
    return u.lower <= v.upper and v.lower <= u.upper


def q(t):
    return REF.mpf(t.numerator) / t.denominator


# --- parameters and hypotheses ------------------------------------------------

def test_scalar_params_validation():
    with pytest.raises(PreconditionError):
        AbcParams(0, 3, 1)
    with pytest.raises(PreconditionError):
        AbcParams(1, 2, 2)
    with pytest.raises(PreconditionError):
        AbcParams(1, -3, 1)


def test_vector_params_validation():
    with pytest.raises(LengthMismatchError):
        AbcVecParams((1,), (2, 3), (1,))
    with pytest.raises(PreconditionError):
        AbcVecParams((1, 2, 3), (4,), (1,))
    with pytest.raises(PreconditionError):
        AbcVecParams((1,), (2,), (2,))


def test_scalar_condition_examples():
    assert check_theorem1_conditions(AbcParams(1, 3, 1)).passed
    bad = check_theorem1_conditions(AbcParams(1, Fraction(3, 2), 1))
    assert [c.name for c in bad.failures()] == ["a < b - c"]
    edge = check_theorem1_conditions(AbcParams(1, 1, 0))
    assert "b > 1" in [c.name for c in edge.failures()]


def test_vector_condition_examples():
    assert check_theorem2_conditions(AbcVecParams((1,), (3,), (1,))).passed
    report = check_theorem2_conditions(AbcVecParams((1, 1), (2,), (Fraction(1, 2),)))
    assert [c.name for c in report.failures()] == ["a_2 > b_1"]
    small = check_theorem2_conditions(AbcVecParams((1,), (Fraction(1, 2),), (Fraction(1, 4),)))
    assert [c.name for c in small.failures()] == ["b_1 > 1"]
    assert json.loads(json.dumps(report.to_dict()))["passed"] is False
    assert "FAIL" in report.format()


# --- evaluation ---------------------------------------------------------------

def test_h_normalization():
    rng = random.Random(1)
    for _ in range(10):
        p = theorem1_draw(rng)
        assert h_kummer(p, 0).exact == 1
        v = theorem2_draw(rng, 2)
        assert h_pfq(v, 0).exact == 1


def test_h_with_zero_shift_is_one():
    for x in (Fraction(0), Fraction(3), Fraction(250)):
        assert h_kummer(AbcParams(Fraction(2, 3), 3, 0), x).exact == 1


def test_h_against_mpmath():
    p = AbcParams(Fraction(3, 2), Fraction(7, 2), Fraction(5, 4))
    x = Fraction(13, 3)
    a, b, c, X = q(p.a), q(p.b), q(p.c), q(x)
    expected = REF.hyp1f1(a, b - c, X) * REF.hyp1f1(a, b + c, X) / REF.hyp1f1(a, b, X) ** 2
    assert encloses(h_kummer(p, x), expected)


@settings(max_examples=30, deadline=None)
@given(
    st.fractions(min_value=Fraction(1, 8), max_value=5, max_denominator=8),
    st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8),
    st.fractions(min_value=0, max_value=Fraction(7, 8), max_denominator=8),
    st.fractions(min_value=0, max_value=50, max_denominator=4),
)
def test_sign_symmetry(a, b, t, x):
    c = b * t
    assert overlap(h_kummer(AbcParams(a, b, c), x), h_kummer(AbcParams(a, b, -c), x))


@pytest.mark.parametrize("n", range(1, 11))
def test_h_matches_g_code_path(n):
    for x in (Fraction(0), Fraction(1), Fraction(5), Fraction(20)):
        assert overlap(h_kummer(AbcParams(1, n + 2, 1), x), ratio_g(n, x))


def test_h_pfq_specializes_to_h_kummer():
    rng = random.Random(3)
    for _ in range(8):
        p = theorem1_draw(rng)
        x = Fraction(rng.randint(0, 80), 4)
        assert h_pfq(p.as_vector(), x) == h_kummer(p, x)


def test_h_pfq_gauss_example_exceeds_one():
    v = h_pfq(AbcVecParams((2, 1), (Fraction(3, 2),), (Fraction(1, 2),)), Fraction(1, 2))
    assert v.lower > 1
    expected = REF.hyp2f1(2, 1, 1, 0.5) * REF.hyp2f1(2, 1, 2, 0.5) / REF.hyp2f1(2, 1, 1.5, 0.5) ** 2
    assert encloses(v, expected)


def test_h_pfq_domain():
    with pytest.raises(DomainError):
        h_pfq(AbcVecParams((2, 1), (Fraction(3, 2),), (Fraction(1, 2),)), 1)
    with pytest.raises(DomainError):
        h_kummer(AbcParams(1, 3, 1), -1)


# --- grids --------------------------------------------------------------------

def test_default_grid_shape():
    g = default_grid(100)
    assert len(g) == 129 and g[0] == 0 and g[-1] == 100
    assert all(u < v for u, v in zip(g, g[1:]))
    lin = default_grid(Fraction(99, 100), 5, "linear")
    assert lin == [0, Fraction(99, 400), Fraction(99, 200), Fraction(297, 400), Fraction(99, 100)]


def test_parse_grid():
    assert parse_grid("0:10:11") == [Fraction(k) for k in range(11)]
    assert len(parse_grid("0:200:129@log")) == 129
    with pytest.raises(ValueError):
        parse_grid("3:1:5")
    with pytest.raises(ValueError):
        parse_grid("0:1")


def test_f_on_small_grid():
    r = grid_monotone_check(Target.f(1), [0, 1, 2, 5, 10])
    assert r.nondecreasing and r.verdict == "verified"
    assert r.values[0].exact == Fraction(2, 3)
    assert r.ceiling_holds


def test_h_zero_shift_grid_is_flat():
    r = grid_monotone_check(Target.h(1, 3, 0), parse_grid("0:10:11"))
    assert r.nondecreasing and r.worst_margin >= 0
    assert all(v.exact == 1 for v in r.values)


def test_gauss_regime_grid():
    grid = [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    r = grid_monotone_check(Target.hpq((1,), (2,), (1,)), grid)
    assert r.verdict == "verified"
    assert certify_coeff_monotone((1,), (2,), (1,), 64).strict


def test_turan_examples():
    assert turan_check(Target.h(1, 3, 1), [0, 1, 10]).turan_holds
    flat = turan_check(Target.h(Fraction(5, 2), 4, 0), [0, 1, 10])
    assert flat.turan_holds and flat.turan_min == 0
    g = turan_check(Target.g(1), [0, 1])
    assert g.turan_holds and g.values[1].lower > Fraction(109, 100)


def test_grid_must_increase():
    with pytest.raises(ValueError):
        grid_monotone_check(Target.f(2), [0, 2, 1])


def test_grid_must_stay_in_domain():
    with pytest.raises(DomainError):
        grid_monotone_check(Target.hpq((1, 1), (2,), (1,)), [0, Fraction(1, 2), 1])


def test_beyond_domain_label():
    r = grid_monotone_check(Target.hpq((1,), (2,), (1,)), [0, 1, 2])
    assert r.beyond_theorem_domain
    assert not grid_monotone_check(Target.hpq((1,), (2,), (1,)), [0, Fraction(1, 2)]).beyond_theorem_domain


def test_report_serialization():
    r = grid_monotone_check(Target.g(2), [0, 1, 3])
    d = json.loads(r.to_json())
    assert d["verdict"] == "verified"
    assert d["grid"] == ["0", "1", "3"]
    assert set(d["values"][1]) == {"value", "error_radius"}
    assert set(d) >= {"grid", "values", "verdict", "worst_margin", "turan_min"}
    rows = list(csv.reader(io.StringIO(r.to_csv())))
    assert rows[0] == ["x", "value", "error_radius"] and len(rows) == 4


def test_escalation_resolves_low_precision():
    r = grid_monotone_check(Target.f(1), [Fraction(100), Fraction(100) + Fraction(1, 10**6)], Precision(53))
    assert r.verdict == "verified" and r.escalations >= 1


def test_results_do_not_depend_on_evaluation_order():
    grid = [Fraction(k, 3) for k in range(10)]
    forward = grid_monotone_check(Target.h(2, 5, 1), grid)
    single = [h_kummer(AbcParams(2, 5, 1), x) for x in reversed(grid)][::-1]
    assert list(forward.values) == single


# --- theorem regimes ----------------------------------------------------------

def test_small_a_counterexample_decreases():
    # 0 < a < 1 satisfies the stated scalar hypotheses but h overshoots its limit
    p = AbcParams(Fraction(1, 2), 3, 1)
    assert check_theorem1_conditions(p).passed
    r = grid_monotone_check(Target.h(p.a, p.b, p.c), [Fraction(5), Fraction(10), Fraction(20), Fraction(40)])
    assert r.verdict == "violated"
    assert r.decreases
    assert r.turan_holds


def test_scalar_draws_with_a_at_least_one_are_monotone():
    rng = random.Random(17)
    seen = 0
    grid = default_grid(100, 64)
    while seen < 8:
        p = theorem1_draw(rng)
        if p.a < 1:
            continue
        seen += 1
        r = grid_monotone_check(Target.h(p.a, p.b, p.c), grid)
        assert r.verdict == "verified", p


def test_turan_holds_for_all_scalar_draws():
    rng = random.Random(19)
    grid = default_grid(100, 64)
    for _ in range(8):
        p = theorem1_draw(rng)
        assert turan_check(Target.h(p.a, p.b, p.c), grid).turan_holds, p


def test_vector_draws_monotone_below_one():
    rng = random.Random(23)
    grid = default_grid(Fraction(99, 100), 64)
    for q in (1, 2, 3):
        for _ in range(3):
            p = theorem2_draw(rng, q)
            assert grid_monotone_check(Target.hpq(p.a, p.b, p.c), grid).verdict == "verified", p


def test_strict_certificate_agrees_with_grid():
    rng = random.Random(29)
    grid = default_grid(100, 64)
    checked = 0
    while checked < 6:
        p = theorem1_draw(rng)
        cert = certify_coeff_monotone((p.a,), (p.b,), (p.c,), 64)
        if not (cert.holds and cert.strict):
            continue
        checked += 1
        assert not grid_monotone_check(Target.h(p.a, p.b, p.c), grid).decreases


def test_vector_counterexample_beyond_unit_interval():
    # hypotheses hold and h increases on [0, 1), but it decreases once x is large
    p = AbcVecParams((1, Fraction(23, 8)), (Fraction(27, 8), Fraction(5, 2)), (Fraction(81, 80), Fraction(1, 2)))
    assert check_theorem2_conditions(p).passed
    target = Target.hpq(p.a, p.b, p.c)
    assert grid_monotone_check(target, default_grid(Fraction(99, 100), 32)).verdict == "verified"
    far = grid_monotone_check(target, [20, 40, 60, 80, 100])
    assert far.verdict == "violated" and far.beyond_theorem_domain
    cert = certify_coeff_monotone(p.a, p.b, p.c, 48)
    assert not cert.holds and cert.supporting[0].holds
