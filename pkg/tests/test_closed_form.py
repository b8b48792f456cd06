import random
from fractions import Fraction

import pytest
from mpmath import mp

from core.closed_form import (
    beta_half_integral,
    integrate_linear_family,
    integrate_quartic_family,
    integrate_sym8_family,
    linear_power,
    pm_polynomial,
    quartic,
    quartic_from_pm,
    quartic_scaled,
    sym8,
    sym8_via_reduction,
    wallis,
)
from core.errors import ConvergenceRange, HypothesisViolation, NonPositiveScale
from core.expression import PI, const, eval_expression, power, sqrt, to_mpf, to_string
from core.models import EvenRationalIntegrand, QuarticSpec, Sym8Spec
from core.polynomial import EvenPolynomial
from core.oracle import integrate_numeric

ORACLE_DIGITS = 35


def assert_matches_oracle(expression, r, digits=25):
    numeric = integrate_numeric(r, ORACLE_DIGITS)
    with mp.workdps(ORACLE_DIGITS):
        exact = to_mpf(expression, ORACLE_DIGITS - 5)
        assert abs(exact - numeric.value) <= mp.mpf(10) ** (-digits) * abs(numeric.value)


def test_wallis_values():
    assert to_string(wallis(0)) == "pi/2"
    assert wallis(1) == const(Fraction(1, 4)) * PI
    assert wallis(3) == const(Fraction(5, 32)) * PI
    with pytest.raises(ConvergenceRange):
        wallis(-1)


def test_beta_and_linear_power():
    assert beta_half_integral(0, 1) == PI
    assert linear_power(0, Fraction(1), Fraction(1), 1) == const(Fraction(1, 2)) * PI
    assert linear_power(1, Fraction(1), Fraction(1), 2) == const(Fraction(1, 4)) * PI
    with pytest.raises(ConvergenceRange):
        linear_power(2, Fraction(1), Fraction(1), 2)
    with pytest.raises(NonPositiveScale):
        linear_power(0, Fraction(0), Fraction(1), 1)


def test_linear_power_against_oracle():
    r = EvenRationalIntegrand.from_lists([0, 1], [3, 2], 4)
    assert_matches_oracle(integrate_linear_family(r), r)


def test_quartic_degenerates_to_wallis():
    # (z^4 + 2 z^2 + 1)^2 = (1 + z^2)^4
    assert quartic(QuarticSpec(a=Fraction(1), m=1, n=0)) == const(Fraction(5, 32)) * PI
    assert quartic(QuarticSpec(a=Fraction(1), m=1, n=0)) == wallis(3)


def test_quartic_example_with_sqrt6():
    r = EvenRationalIntegrand.from_lists([0, 1], [1, 4, 1], 9)
    value = integrate_quartic_family(r)
    assert to_string(value) == "23698523*pi/(12230590464*sqrt(6))"
    assert_matches_oracle(value, r)


def test_scaled_quartic_example():
    r = EvenRationalIntegrand.from_lists([0, 0, 0, 1], [3, 2, 2], 11)
    value = integrate_quartic_family(r)
    expected = (
        const(11)
        * PI
        * (const(14229567) + const(4937288) * sqrt(6))
        / (const(440301256704) * power(const(1) + sqrt(6), Fraction(21, 2)))
    )
    assert eval_expression(value, 30) == eval_expression(expected, 30)
    assert_matches_oracle(value, r)


def test_quartic_reflection_symmetry():
    a = Fraction(3, 2)
    assert quartic(QuarticSpec(a=a, m=2, n=1)) == quartic(QuarticSpec(a=a, m=2, n=4))


@pytest.mark.parametrize("m", range(5))
def test_pm_polynomial_matches_quartic(m):
    a = Fraction(3, 2)
    assert eval_expression(quartic_from_pm(a, m), 30) == eval_expression(quartic(QuarticSpec(a=a, m=m, n=0)), 30)


def test_pm_polynomial_low_orders():
    assert pm_polynomial(0) == (1,)
    assert pm_polynomial(1) == (Fraction(3, 2), 1)


def test_quartic_hypotheses():
    with pytest.raises(HypothesisViolation):
        quartic(QuarticSpec(a=Fraction(-1), m=0, n=0))
    with pytest.raises(ConvergenceRange):
        quartic(QuarticSpec(a=Fraction(1), m=0, n=2))
    with pytest.raises(NonPositiveScale):
        quartic_scaled(QuarticSpec(a=Fraction(1), m=0, n=0, b=Fraction(0), c=Fraction(1)))
    with pytest.raises(HypothesisViolation):
        quartic_scaled(QuarticSpec(a=Fraction(-3), m=0, n=0, b=Fraction(1), c=Fraction(4)))


def test_scaled_quartic_with_negative_middle_term():
    # z^4 - z^2 + 1 stays positive
    r = EvenRationalIntegrand.from_lists([1], [1, -1, 1], 2)
    assert_matches_oracle(integrate_quartic_family(r), r)


def test_symmetric_octic_example():
    r = EvenRationalIntegrand.from_lists([1], [1, 5, 14, 5, 1], 4)
    value = integrate_sym8_family(r)
    root26 = sqrt(26)
    expected = (
        (const(14325195794) + const(2815367209) * root26)
        * PI
        / (const(14623232) * power(const(9) + const(2) * root26, Fraction(7, 2)))
    )
    assert eval_expression(value, 30) == eval_expression(expected, 30)
    assert_matches_oracle(value, r)


@pytest.mark.parametrize("m,n", [(0, 0), (0, 2), (1, 3), (1, 6)])
def test_sym8_agrees_with_reduction_route(m, n):
    spec = Sym8Spec(a1=Fraction(7), a2=Fraction(5), m=m, n=n)
    assert eval_expression(sym8(spec), 30) == eval_expression(sym8_via_reduction(spec), 30)


def test_sym8_agrees_with_reduction_route_on_random_parameters():
    rng = random.Random(8)
    for _ in range(20):
        m = rng.randint(0, 2)
        spec = Sym8Spec(
            a1=_positive(rng),
            a2=_positive(rng),
            m=m,
            n=rng.randint(0, 4 * m + 3),
        )
        assert eval_expression(sym8(spec), 30) == eval_expression(sym8_via_reduction(spec), 30)


def test_sym8_with_unnormalized_lead_against_oracle():
    r = EvenRationalIntegrand.from_lists([0, 1], [2, 3, 10, 3, 2], 2)
    assert_matches_oracle(integrate_sym8_family(r), r)


def test_sym8_range_checks():
    with pytest.raises(ConvergenceRange):
        sym8(Sym8Spec(a1=Fraction(7), a2=Fraction(5), m=0, n=4))
    with pytest.raises(HypothesisViolation):
        sym8(Sym8Spec(a1=Fraction(-10), a2=Fraction(0), m=0, n=0))


def _positive(rng):
    return Fraction(rng.randint(1, 30), rng.randint(1, 5))


def _numerator(rng, top):
    coeffs = [rng.randint(0, 5) for _ in range(top + 1)]
    coeffs[rng.randint(0, top)] += 1
    return EvenPolynomial(tuple(coeffs))


def _random_linear(rng):
    s = rng.randint(1, 4)
    den = EvenPolynomial.of(_positive(rng), _positive(rng))
    return EvenRationalIntegrand(_numerator(rng, s - 1), den, s), integrate_linear_family


def _random_quartic(rng):
    m = rng.randint(0, 2)
    den = EvenPolynomial.of(_positive(rng), 2 * _positive(rng), _positive(rng))
    return EvenRationalIntegrand(_numerator(rng, 2 * m + 1), den, m + 1), integrate_quartic_family


def _random_sym8(rng):
    m = rng.randint(0, 1)
    lead, a1, a2 = rng.randint(1, 3), _positive(rng), _positive(rng)
    den = EvenPolynomial.of(1, a2, 2 * a1, a2, 1).scale(lead)
    return EvenRationalIntegrand(_numerator(rng, 4 * m + 3), den, m + 1), integrate_sym8_family


@pytest.mark.parametrize("make", [_random_linear, _random_quartic, _random_sym8])
def test_closed_forms_match_quadrature_on_random_instances(make):
    rng = random.Random(make.__name__)
    for _ in range(100):
        r, closed_form = make(rng)
        assert_matches_oracle(closed_form(r), r)
