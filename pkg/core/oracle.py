"""Independent checks: tanh-sinh quadrature and brute-force binomial identities."""

from __future__ import annotations

import logging
from fractions import Fraction
from math import factorial
from typing import Any, Sequence

from mpmath import mp
from mpmath.calculus.quadrature import TanhSinh

from core.errors import NonConvergentIntegrand, PrecisionNotReached, RangeViolation
from core.models import EvenRationalIntegrand, ParameterPoint, QuadratureResult
from core.parsing import as_mpf
from core.polynomial import EvenPolynomial, binomial, poly_sum
from core.reduction import ep_coefficients
from core.settings import DEFAULT_ORACLE_DIGITS

logger = logging.getLogger(__name__)

GUARD_DIGITS = 10
EXTRA_DEGREES = 3


def _horner(coeffs: Sequence[Any], t: Any):
    """Ascending coefficients evaluated at t."""
    value = mp.zero
    for c in reversed(coeffs):
        value = value * t + c
    return value


def _breakpoints(denominator: Sequence[Any]) -> list[Any]:
    """sqrt(q_k / q_{k+1}) for consecutive positive coefficients, where the terms trade dominance."""
    points = set()
    for low, high in zip(denominator, denominator[1:]):
        if low > 0 and high > 0:
            points.add(mp.sqrt(low / high))
    return sorted(points)


def integrate_coefficients(
    numerator: Sequence[Any], denominator: Sequence[Any], power: int = 1, digits: int = DEFAULT_ORACLE_DIGITS
) -> QuadratureResult:
    """Quadrature of numerator(z^2) / denominator(z^2)^power over [0, inf); ascending coefficients."""
    with mp.workdps(digits + GUARD_DIGITS):
        num = [as_mpf(c) for c in numerator]
        den = [as_mpf(c) for c in denominator]
        evaluations = 0

        def integrand(z):
            nonlocal evaluations
            evaluations += 1
            t = z * z
            q = _horner(den, t)
            if q <= 0:
                raise NonConvergentIntegrand(f"denominator vanishes or changes sign near z = {mp.nstr(z, 10)}")
            return _horner(num, t) / q ** power

        if not num:
            return QuadratureResult(mp.zero, mp.zero, 0)
        points = [mp.zero, *_breakpoints(den), mp.inf]
        degree = None
        tolerance = mp.mpf(10) ** (-digits)
        for _ in range(EXTRA_DEGREES + 1):
            value, error = mp.quad(integrand, points, error=True, maxdegree=degree)
            if error <= tolerance * max(1, abs(value)):
                return QuadratureResult(+value, +error, evaluations)
            degree = (degree or TanhSinh(mp).guess_degree(mp.prec)) + 1
            logger.warning("quadrature error %s above target, raising degree to %d", mp.nstr(error, 5), degree)
    raise PrecisionNotReached(value, error, digits)


def integrate_numeric(r: EvenRationalIntegrand, digits: int = DEFAULT_ORACLE_DIGITS) -> QuadratureResult:
    return integrate_coefficients(r.numerator.coeffs, r.denominator.coeffs, r.power, digits)


def integrate_point(x: ParameterPoint, digits: int = DEFAULT_ORACLE_DIGITS) -> QuadratureResult:
    return integrate_coefficients(x.numerator_ascending(), x.denominator_ascending(), 1, digits)


def agm_quadrature(a: Any, b: Any, digits: int = DEFAULT_ORACLE_DIGITS):
    """Integral of 1 / sqrt(a^2 cos^2 + b^2 sin^2) over [0, pi/2]."""
    with mp.workdps(digits + GUARD_DIGITS):
        a, b = as_mpf(a), as_mpf(b)
        value = mp.quad(lambda theta: 1 / mp.sqrt((a * mp.cos(theta)) ** 2 + (b * mp.sin(theta)) ** 2), [0, mp.pi / 2])
    return +value


def lemma_a1(k: int, n: int) -> tuple[int, int]:
    """sum_j C(2N+1, 2j) C(N-j, k) against C(2N-k, k) 4^(N-k)."""
    if not 1 <= k <= n:
        raise RangeViolation(f"need 1 <= k <= N, got k={k}, N={n}")
    lhs = sum(binomial(2 * n + 1, 2 * j) * binomial(n - j, k) for j in range(n + 1))
    rhs = binomial(2 * n - k, k) * 4 ** (n - k)
    return lhs, rhs


def _a3_rhs(k: int, n: int) -> Fraction:
    if k == 0:
        return Fraction(1)
    return Fraction(2 ** (2 * k - 1) * n * binomial(k + n - 1, n - k), k)


def lemma_a3(k: int, n: int) -> tuple[int, int | Fraction]:
    """sum_j C(2N, 2j) C(N-j, N-k) against 2^(2k-1) (N/k) C(k+N-1, N-k)."""
    if not 0 <= k <= n or n < 1:
        raise RangeViolation(f"need 0 <= k <= N and N >= 1, got k={k}, N={n}")
    lhs = sum(binomial(2 * n, 2 * j) * binomial(n - j, n - k) for j in range(n + 1))
    rhs = _a3_rhs(k, n)
    return lhs, rhs.numerator if rhs.denominator == 1 else rhs


def lemma_a2_identity(n: int) -> bool:
    if n < 0:
        raise RangeViolation(f"need N >= 0, got {n}")
    lhs = poly_sum(EvenPolynomial.one_plus_z2_power(n - j).scale(binomial(2 * n + 1, 2 * j)) for j in range(n + 1))
    rhs = poly_sum(EvenPolynomial.monomial(n - j, binomial(n + j, 2 * j) * 4 ** j) for j in range(n + 1))
    return lhs == rhs


def lemma_a4_identity(p: int, d: Sequence[Fraction | int]) -> bool:
    """Expanded binomial form of E_p against build_Ep; ``d`` is d_1..d_p with d_{p+1} = 1, or d_1..d_{p+1}."""
    if p < 1:
        raise RangeViolation(f"need p >= 1, got {p}")
    full = [Fraction(v) for v in d]
    if len(full) == p:
        full.append(Fraction(1))
    if len(full) != p + 1:
        raise RangeViolation(f"expected {p} or {p + 1} values, got {len(full)}")
    lhs = EvenPolynomial()
    for k in range(p + 1):
        inner = poly_sum(
            EvenPolynomial.one_plus_z2_power(p - k - j).scale(binomial(2 * p - 2 * k, 2 * j))
            for j in range(p - k + 1)
        )
        lhs = lhs + inner.shift(k).scale(full[p - k])
    return lhs == EvenPolynomial(ep_coefficients(full))


def _wz_f(n: int, k: int, j: int) -> Fraction:
    return Fraction(binomial(2 * n, 2 * j) * binomial(n - j, n - k)) / _a3_rhs(k, n)


def _wz_g(n: int, k: int, j: int) -> Fraction:
    if j < 0 or j > n or k - j + 1 < 0:
        return Fraction(0)
    ratio = Fraction(factorial(n - j), factorial(n - k) * factorial(k - j + 1))
    return binomial(2 * n, 2 * j) * Fraction(j * (2 * j - 1), 2 * (n + k)) * ratio / _a3_rhs(k, n)


def wz_certificate_holds(n: int, k: int, j: int) -> bool:
    """F(k, j) - F(k+1, j) == G(k, j+1) - G(k, j) for the summand F normalized by the right-hand side."""
    if not 1 <= k <= n - 1:
        raise RangeViolation(f"need 1 <= k <= N-1, got k={k}, N={n}")
    return _wz_f(n, k, j) - _wz_f(n, k + 1, j) == _wz_g(n, k, j + 1) - _wz_g(n, k, j)
