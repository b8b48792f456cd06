import random
from fractions import Fraction

import pytest
from mpmath import mp

from core.computability import (
    classify,
    solve_symmetry_family,
    x1_curve_holds,
    x1_point,
    xcd_family,
)
from core.errors import DomainViolation, NonPositiveParameters
from core.expression import PI, const, eval_expression, sqrt, to_mpf
from core.landen import phi6
from core.models import EvenRationalIntegrand, ParameterPoint, Verdict, binomial_denominator_point
from core.oracle import integrate_numeric
from core.polynomial import EvenPolynomial, is_symmetric
from core.reduction import SymmetricDenominator, build_Ep, reduce_function

ORACLE_DIGITS = 35


def oracle_value(r):
    return integrate_numeric(r, ORACLE_DIGITS).value


def assert_closed_form_matches_oracle(report, r):
    assert report.verdict is Verdict.CLOSED_FORM
    numeric = oracle_value(r)
    with mp.workdps(ORACLE_DIGITS):
        assert abs(to_mpf(report.value, 30) - numeric) <= mp.mpf(10) ** -25 * abs(numeric)


def relative_gap(expression, reference):
    with mp.workdps(30):
        value = to_mpf(expression, 25)
        return abs(value - reference) / abs(reference)


def path_of(report):
    return [str(step) for step in report.path]


def test_quartic_base_case():
    r = EvenRationalIntegrand.from_lists([0, 1], [1, 4, 1], 9)
    report = classify(r)
    assert path_of(report) == ["QuarticBase"]
    assert str(report.value) == "23698523*pi/(12230590464*sqrt(6))"


def test_symmetric_octic_base_case():
    r = EvenRationalIntegrand.from_lists([1], [1, 5, 14, 5, 1], 4)
    report = classify(r)
    assert path_of(report) == ["Sym8Base"]
    assert_closed_form_matches_oracle(report, r)


def test_sextic_with_unit_root_splits():
    # x^8 / ((x^2 + 1)(x^4 + 3x^2 + 1))^5
    r = EvenRationalIntegrand.from_lists([0, 0, 0, 0, 1], [1, 4, 4, 1], 5)
    report = classify(r)
    assert "Split" in path_of(report)
    assert {"WallisBase", "QuarticBase"} <= set(path_of(report))
    expected = (const(1407326) * sqrt(5) - const(3146875)) * PI / const(160000)
    assert eval_expression(report.value, 25) == eval_expression(expected, 25)
    assert_closed_form_matches_oracle(report, r)


def test_degree_twelve_symmetric_uses_symmetry_rule():
    r = EvenRationalIntegrand.from_lists([0] * 9 + [1], [1, 14, 15, 4, 15, 14, 1], 3)
    report = classify(r)
    assert path_of(report)[:2] == ["Reduce(3)", "SymmetryRule"]
    assert_closed_form_matches_oracle(report, r)
    reduced = reduce_function(r)
    assert reduced.denominator == (EvenPolynomial.of(1, 1) * EvenPolynomial.of(1, 4, 1)).scale(32)
    # a known wrong quoted value; the pipeline value matches the oracle
    printed = const(25) * PI * (const(25) * sqrt(56) - const(54)) / const(301989888)
    assert relative_gap(printed, oracle_value(r)) > 0.5


def test_degree_twenty_with_negative_coefficients():
    q = [1, 6, 93, -24, 162, 548, 162, -24, 93, 6, 1]
    r = EvenRationalIntegrand.from_lists([0] * 5 + [1], q, 2)
    report = classify(r)
    steps = path_of(report)
    assert steps[0] == "Reduce(5)"
    assert "Split" in steps and "Sym8Base" in steps
    assert_closed_form_matches_oracle(report, r)
    printed = (const(6480) - const(509) * sqrt(15)) * PI / const(24159191040)
    assert relative_gap(printed, oracle_value(r)) > 0.5


def test_degree_sixteen_family_member_reduces_to_octic():
    family = solve_symmetry_family(4)
    den = family.denominator([1, 1])
    assert den == EvenPolynomial.of(1, 1, 1, 115, 20, 115, 1, 1, 1)
    r = EvenRationalIntegrand(EvenPolynomial.monomial(2), den, 2)
    reduced = reduce_function(r)
    assert reduced.denominator == EvenPolynomial.of(16, 36, 27, 36, 16).scale(8)
    assert reduced.numerator == EvenPolynomial.of(0, 0, 1024, 2304, 1792, 560, 60, 1).scale(Fraction(1, 2))
    report = classify(r)
    assert path_of(report) == ["Reduce(4)", "Sym8Base"]
    assert_closed_form_matches_oracle(report, r)
    root = sqrt(131)
    expected = (
        (const(149288517) + const(12947003) * root)
        * PI
        / (const(1124663296) * sqrt(const(54925) + const(4798) * root))
    )
    with mp.workdps(40):
        assert relative_gap(expected, to_mpf(report.value, 35)) < 1e-24


def test_depth_limit_gives_numeric_only():
    family = solve_symmetry_family(4)
    r = EvenRationalIntegrand(EvenPolynomial.monomial(2), family.denominator([1, 1]), 2)
    report = classify(r, max_depth=0)
    assert report.verdict is Verdict.NUMERIC_ONLY
    assert report.value is None


def test_non_symmetric_without_unit_root_is_numeric_only():
    r = EvenRationalIntegrand.from_lists([1230, 25000, 45], [1, 3000, 1, 1])
    report = classify(r)
    assert report.verdict is Verdict.NUMERIC_ONLY
    assert not report.closed_form


def test_symmetry_family_of_degree_sixteen():
    family = solve_symmetry_family(4)
    assert family.free == ("d3", "d4")
    assert family.bound == ("d1", "d2")
    assert family.offset == (15, 112)
    assert family.matrix == ((3, -8), (-4, 7))
    assert family.member([1, 1]) == (10, 115, 1, 1)
    shifted = family.shifted()
    assert shifted.offset == (0, 0)
    assert shifted.matrix == family.matrix
    assert shifted.free == ("e3", "e4")


def test_symmetry_family_of_degree_thirty_two():
    family = solve_symmetry_family(8)
    assert family.free == ("d7", "d8")
    assert family.offset == tuple(-31 * v for v in (63475, -100800, 47936, -13664, 2220, -224))
    d7 = (9166, -14392, 6895, -1964, 322, -28)
    d8 = (54640, -86645, 41664, -11471, 2000, -189)
    assert family.matrix == tuple(zip(d7, d8))


@pytest.mark.parametrize("p", [4, 8])
def test_binomial_denominator_lies_in_the_family(p):
    star = binomial_denominator_point(p)
    family = solve_symmetry_family(p)
    assert family.member(star[-2:]) == star
    assert family.denominator(star[-2:]) == EvenPolynomial.one_plus_z2_power(2 * p)
    assert family.shifted().offset == (0,) * (p - 2)


# perturbation scale keeps every bound coefficient positive
FAMILY_STEPS = {4: Fraction(1, 100), 8: Fraction(1, 10000)}


@pytest.mark.parametrize("p", [4, 8])
def test_random_family_members_reduce_to_symmetric_denominators(p):
    family = solve_symmetry_family(p)
    star = binomial_denominator_point(p)[-2:]
    rng = random.Random(p)
    for _ in range(20):
        free = [v + rng.randint(-100, 100) * FAMILY_STEPS[p] for v in star]
        den = family.denominator(free)
        assert den.degree == 2 * p
        assert is_symmetric(den)
        assert is_symmetric(build_Ep(SymmetricDenominator.from_polynomial(den)))


def test_symmetry_family_needs_a_power_of_two():
    for p in (2, 3, 6):
        with pytest.raises(DomainViolation):
            solve_symmetry_family(p)


def test_factored_sextic_family():
    member = xcd_family(2, 3)
    assert member.verified
    assert (member.a1, member.a2) == (5, Fraction(19, 3))
    member.require_domain()
    r = EvenRationalIntegrand(EvenPolynomial.constant(1), member.denominator, 1)
    report = classify(r, factors=member.factors)
    assert "Split" in path_of(report)
    assert_closed_form_matches_oracle(report, r)


def test_factored_sextic_outside_the_domain():
    member = xcd_family(-5, 1)
    assert member.verified
    assert not member.in_domain
    with pytest.raises(NonPositiveParameters):
        member.require_domain()
    with pytest.raises(DomainViolation):
        xcd_family(1, 0)


def test_wrong_factor_witness_is_rejected():
    r = EvenRationalIntegrand.from_lists([1], [1, 4, 4, 1])
    with pytest.raises(DomainViolation):
        classify(r, factors=(EvenPolynomial.of(1, 1), EvenPolynomial.of(1, 1)))


def test_curve_mapped_to_the_diagonal():
    assert x1_point(1) == (3, 3)
    assert x1_point(2) == (Fraction(31, 4), Fraction(47, 8))
    for t in (Fraction(1, 2), 2, 3, Fraction(7, 3)):
        a1, a2 = x1_point(t)
        assert x1_curve_holds(a1, a2)
    image = phi6(ParameterPoint(a=x1_point(2), b=(1, 1, 1)))
    assert image.a[0] == image.a[1] == Fraction(157, 50)
    assert not x1_curve_holds(1, 3000)
    with pytest.raises(NonPositiveParameters):
        x1_point(0)


def test_scaled_wallis_through_unit_root():
    # 1 / (2 (1 + z^2))^2 = 1/4 * 1/(1 + z^2)^2
    r = EvenRationalIntegrand.from_lists([1], [2, 2], 2)
    report = classify(r)
    assert report.value == const(Fraction(1, 16)) * PI
    r2 = EvenRationalIntegrand.from_lists([1], [2, 4, 2])
    report2 = classify(r2)
    assert report2.closed_form
    assert eval_expression(report2.value, 20) == eval_expression(const(Fraction(1, 8)) * PI, 20)
