import random
from fractions import Fraction

import pytest
from mpmath import mp

from core.errors import DomainViolation, NotSymmetric, OutOfConvergenceRange
from core.models import EvenRationalIntegrand
from core.oracle import integrate_numeric
from core.polynomial import EvenPolynomial
from core.reduction import (
    SymmetricDenominator,
    build_Ep,
    convergence_limit,
    ep_matrix,
    fold_exponent,
    monomial_terms,
    reduce_function,
    uses_symmetry_rule,
)


def test_symmetric_denominator_round_trip():
    q = EvenPolynomial.of(1, 5, 14, 5, 1)
    den = SymmetricDenominator.from_polynomial(q)
    assert den.p == 2
    assert den.d == (7, 5)
    assert den.coefficients == (7, 5, 1)
    assert den.expand() == q


def test_non_palindromic_or_odd_half_degree_is_rejected():
    with pytest.raises(NotSymmetric):
        SymmetricDenominator.from_polynomial(EvenPolynomial.of(1, 2, 3))
    with pytest.raises(NotSymmetric):
        SymmetricDenominator.from_polynomial(EvenPolynomial.of(1, 3, 3, 1))
    with pytest.raises(DomainViolation):
        SymmetricDenominator(2, (Fraction(-5), Fraction(0)))


def test_ep_matrix_small_cases():
    assert ep_matrix(1) == ((0, 2), (1, 1))
    assert ep_matrix(2) == ((0, 0, 8), (0, 2, 8), (1, 1, 1))


def test_binomial_denominator_reduces_to_binomial():
    den = SymmetricDenominator.from_polynomial(EvenPolynomial.one_plus_z2_power(4))
    assert build_Ep(den) == EvenPolynomial.one_plus_z2_power(2).scale(8)


def test_quartic_reduction_matches_the_known_landen_form():
    # 1 / (z^4 + 2a z^2 + 1) becomes 1 / (2 + (1 + a) z^2)
    a = Fraction(3, 2)
    den = SymmetricDenominator.from_polynomial(EvenPolynomial.of(1, 2 * a, 1))
    assert build_Ep(den) == EvenPolynomial.of(2, 1 + a)


def test_convergence_range_and_folding():
    assert convergence_limit(2, 0) == 3
    assert fold_exponent(3, 2, 0) == 0
    assert fold_exponent(1, 2, 0) == 1
    with pytest.raises(OutOfConvergenceRange):
        monomial_terms(4, 2, 0)
    with pytest.raises(OutOfConvergenceRange):
        monomial_terms(-1, 2, 0)


def test_monomial_terms_for_a_symmetric_octic():
    terms = monomial_terms(0, 2, 3)
    by_exponent = {t.exponent: t.coefficient for t in terms}
    assert by_exponent[7] == Fraction(1, 8)
    assert by_exponent[0] == 2048
    assert len(terms) == 8
    assert all(t.coefficient > 0 for t in terms)


def test_reduce_function_symmetric_octic():
    r = EvenRationalIntegrand.from_lists([1], [1, 5, 14, 5, 1], 4)
    reduced = reduce_function(r)
    assert reduced.denominator == EvenPolynomial.of(8, 18, 13)
    assert reduced.power == 4
    assert reduced.numerator.coefficient(7) == Fraction(1, 8)
    assert reduced.numerator.coefficient(0) == 2048


def test_uses_symmetry_rule():
    den = [1, 5, 14, 5, 1]
    assert not uses_symmetry_rule(EvenRationalIntegrand.from_lists([1], den, 1))
    assert uses_symmetry_rule(EvenRationalIntegrand.from_lists([0, 0, 0, 1], den, 1))


def _random_symmetric(rng: random.Random, p: int) -> EvenPolynomial:
    half = [Fraction(rng.randint(1, 9)) for _ in range(p)]
    middle = Fraction(rng.randint(1, 20))
    return EvenPolynomial((*half, middle, *reversed(half)))


@pytest.mark.parametrize("seed", range(6))
def test_reduce_function_preserves_the_integral(seed):
    rng = random.Random(seed)
    p = rng.randint(1, 3)
    m = rng.randint(0, 2)
    den = _random_symmetric(rng, p)
    top = 2 * p * (m + 1) - 1
    numerator = [Fraction(rng.randint(0, 5)) for _ in range(top + 1)]
    numerator[rng.randint(0, top)] += 1
    r = EvenRationalIntegrand(EvenPolynomial(tuple(numerator)), den, m + 1)
    before = integrate_numeric(r, 30)
    after = integrate_numeric(reduce_function(r), 30)
    with mp.workdps(30):
        assert abs(before.value - after.value) < mp.mpf(10) ** -25 * abs(before.value)
