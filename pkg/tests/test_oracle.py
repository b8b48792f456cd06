import random
import warnings
from fractions import Fraction

import pytest
from mpmath import mp

from core.errors import NonConvergentIntegrand, RangeViolation
from core.models import EvenRationalIntegrand, ParameterPoint
from core.oracle import (
    agm_quadrature,
    integrate_coefficients,
    integrate_numeric,
    integrate_point,
    lemma_a1,
    lemma_a2_identity,
    lemma_a3,
    lemma_a4_identity,
    wz_certificate_holds,
)


def test_quadrature_of_known_integrals():
    result = integrate_coefficients([1], [1, 1], 1, 30)
    with mp.workdps(30):
        assert abs(result.value - mp.pi / 2) < mp.mpf(10) ** -28
    assert result.evaluations > 0
    assert result.error_estimate >= 0


def test_quadrature_with_widely_spread_coefficients():
    # z^2 / (z^4 + 10^6 z^2 + 1) has features near z = 10^-3 and z = 10^3
    result = integrate_coefficients([0, 1], [1, 10**6, 1], 1, 30)
    with mp.workdps(30):
        root = mp.sqrt(2 * (1 + mp.mpf(10) ** 6 / 2))
        assert abs(result.value - mp.pi / (2 * root)) < mp.mpf(10) ** -25 * result.value


def test_quadrature_detects_sign_change():
    with pytest.raises(NonConvergentIntegrand):
        integrate_coefficients([1], [-1, 1], 1, 20)


def test_integrate_point_of_the_binomial_point():
    result = integrate_point(ParameterPoint(a=(3, 3), b=(1, 2, 1)), 30)
    with mp.workdps(30):
        assert abs(result.value - mp.pi / 2) < mp.mpf(10) ** -28


def test_lemma_a1_and_a3_for_all_small_arguments():
    for n in range(1, 31):
        for k in range(1, n + 1):
            lhs, rhs = lemma_a1(k, n)
            assert lhs == rhs
        for k in range(0, n + 1):
            lhs, rhs = lemma_a3(k, n)
            assert lhs == rhs


def test_lemma_ranges():
    with pytest.raises(RangeViolation):
        lemma_a1(0, 3)
    with pytest.raises(RangeViolation):
        lemma_a3(4, 3)
    with pytest.raises(RangeViolation):
        wz_certificate_holds(3, 3, 0)


def test_lemma_a2_polynomial_identity():
    assert all(lemma_a2_identity(n) for n in range(26))


def test_lemma_a4_for_random_rational_vectors():
    rng = random.Random(7)
    for p in range(1, 7):
        for _ in range(10):
            d = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(p + 1)]
            assert lemma_a4_identity(p, d)
    assert lemma_a4_identity(2, [Fraction(3), Fraction(4)])
    with pytest.raises(RangeViolation):
        lemma_a4_identity(2, [Fraction(1)])


def test_wz_certificate_on_sampled_triples():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 25)
        k = rng.randint(1, n - 1)
        j = rng.randint(0, n + 1)
        assert wz_certificate_holds(n, k, j)


def test_agm_quadrature_against_closed_values():
    with mp.workdps(30):
        # a = b gives pi / (2a)
        assert abs(agm_quadrature(2, 2, 30) - mp.pi / 4) < mp.mpf(10) ** -28


def test_quadrature_of_rational_integrands_without_deprecations():
    # 1 / (1/2 + z^2) integrates to pi / sqrt(2)
    r = EvenRationalIntegrand.from_lists([Fraction(1)], [Fraction(1, 2), Fraction(1)])
    with warnings.catch_warnings():
        warnings.simplefilter("error", DeprecationWarning)
        result = integrate_numeric(r, 30)
    with mp.workdps(30):
        assert abs(result.value - mp.pi / mp.sqrt(2)) < mp.mpf(10) ** -27
