from __future__ import annotations

import logging
from fractions import Fraction

from core.errors import ConvergenceRange, HypothesisViolation, NonPositiveScale
from core.expression import PI, AlgebraicExpression, add, const, mul, power
from core.models import EvenRationalIntegrand, QuarticSpec, Sym8Spec
from core.polynomial import binomial
from core.reduction import monomial_terms

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def wallis(m: int) -> AlgebraicExpression:
    """Integral of 1/(1+z^2)^(m+1)."""
    if m < 0:
        raise ConvergenceRange(f"Wallis needs m >= 0, got {m}")
    return mul(const(Fraction(binomial(2 * m, m), 2 ** (2 * m + 1))), PI)


def beta_half_integral(r: int, s: int) -> AlgebraicExpression:
    """Integral of u^(r-1/2) / (1+u)^s over [0, inf)."""
    if r < 0 or s < r + 1:
        raise ConvergenceRange(f"beta integral diverges for r={r}, s={s}")
    value = Fraction(binomial(2 * r, r) * binomial(2 * (s - r - 1), s - r - 1), 4 ** (s - 1) * binomial(s - 1, r))
    return mul(const(value), PI)


def linear_power(n: int, b: Fraction, c: Fraction, s: int) -> AlgebraicExpression:
    """Integral of z^(2n) / (b z^2 + c)^s, through u = b z^2 / c."""
    b, c = Fraction(b), Fraction(c)
    if b <= 0 or c <= 0:
        raise NonPositiveScale(f"b z^2 + c needs b, c > 0, got b={b}, c={c}")
    if n < 0 or n > s - 1:
        raise ConvergenceRange(f"z^{2 * n} over a quadratic to power {s} diverges")
    ratio = power(const(c / b), Fraction(2 * n + 1, 2))
    return mul(const(Fraction(1, 2) / c ** s), ratio, beta_half_integral(n, s))


def _check_quartic_range(m: int, n: int) -> None:
    if m < 0 or n < 0 or n > 2 * m + 1:
        raise ConvergenceRange(f"quartic integral needs 0 <= n <= 2m+1, got m={m}, n={n}")


def _inner_range(m: int, n: int) -> range:
    """j-range of the quartic sum; for n > m the binomials run over negative upper indices."""
    return range(m - n + 1) if n <= m else range(n - m)


def _quartic_weight(m: int, n: int, j: int) -> Fraction:
    return Fraction(
        2 ** j
        * binomial(2 * m - 2 * j, m - j)
        * binomial(m - n + j, 2 * j, extended=True)
        * binomial(2 * j, j),
        binomial(m, j),
    )


def quartic(spec: QuarticSpec) -> AlgebraicExpression:
    """Integral of z^(2n) / (z^4 + 2a z^2 + 1)^(m+1)."""
    if spec.scaled:
        return quartic_scaled(spec)
    a, m, n = spec.a, spec.m, spec.n
    _check_quartic_range(m, n)
    if a <= -1:
        raise HypothesisViolation(f"z^4 + 2a z^2 + 1 needs a > -1, got a={a}")
    if n > m:
        n = 2 * m + 1 - n
    total = sum((_quartic_weight(m, n, j) * (1 + a) ** j for j in range(m - n + 1)), Fraction(0))
    return mul(
        const(total),
        PI,
        power(const(2), -(3 * m + Fraction(3, 2))),
        power(const(1 + a), -(m + HALF)),
    )


def quartic_scaled(spec: QuarticSpec) -> AlgebraicExpression:
    """Integral of z^(2n) / (b z^4 + 2a z^2 + c)^(m+1)."""
    a, b, c, m, n = spec.a, spec.b, spec.c, spec.m, spec.n
    _check_quartic_range(m, n)
    if b <= 0 or c <= 0:
        raise NonPositiveScale(f"scaled quartic needs b, c > 0, got b={b}, c={c}")
    if not (a > 0 or a * a < b * c):
        raise HypothesisViolation(f"a + sqrt(bc) must be positive, got a={a}, bc={b * c}")
    root = power(const(b * c), HALF)
    shifted = add(const(a), root)
    terms = [
        mul(const(_quartic_weight(m, n, j)), power(shifted, j - m - HALF), power(const(b * c), Fraction(-j, 2)))
        for j in _inner_range(m, n)
    ]
    prefactor = mul(
        PI,
        power(const(c), -HALF),
        power(const(c / b), Fraction(n - m, 2)),
        power(const(8), -(m + HALF)),
    )
    return mul(prefactor, add(*terms))


def _check_sym8(spec: Sym8Spec) -> None:
    m, n = spec.m, spec.n
    if m < 0 or n < 0 or n > 4 * m + 3:
        raise ConvergenceRange(f"degree-8 integral needs 0 <= n <= 4m+3, got m={m}, n={n}")
    c1, c2 = spec.c1, spec.c2
    if c2 <= 0:
        raise HypothesisViolation(f"1 + a1 + a2 must be positive, got {c2}")
    if not (c1 > 0 or c1 * c1 < 8 * c2):
        raise HypothesisViolation(f"c1 + sqrt(8 c2) must be positive, got c1={c1}, c2={c2}")


def sym8(spec: Sym8Spec) -> AlgebraicExpression:
    """Integral of z^(2n) / (z^8 + a2 z^6 + 2a1 z^4 + a2 z^2 + 1)^(m+1).

    Sum of t_{k,j} over k = n..2m+1, one block per reduced exponent k.
    """
    _check_sym8(spec)
    m, n = spec.m, spec.n
    if n > 2 * m + 1:
        n = 4 * m + 3 - n
    c1, c2 = spec.c1, spec.c2
    shifted = add(const(c1), power(const(8 * c2), HALF))
    terms = []
    for k in range(n, 2 * m + 2):
        outer = binomial(4 * m - n - k + 2, k - n)
        for j in _inner_range(m, k):
            terms.append(
                mul(
                    const(outer * _quartic_weight(m, k, j) / 2 ** j),
                    power(const(2), Fraction(-(3 * m + 2 + k + j), 2)),
                    power(const(c2), Fraction(m - k - j, 2)),
                    power(shifted, j - m - HALF),
                )
            )
    return mul(PI, add(*terms))


def sym8_via_reduction(spec: Sym8Spec) -> AlgebraicExpression:
    """The same integral as reduction to (c2 z^4 + 2 c1 z^2 + 8) followed by the scaled quartic."""
    _check_sym8(spec)
    pieces = [
        mul(
            const(term.coefficient),
            quartic_scaled(QuarticSpec(a=spec.c1, m=spec.m, n=term.exponent, b=spec.c2, c=8)),
        )
        for term in monomial_terms(spec.n, 2, spec.m)
    ]
    return add(*pieces)


def pm_polynomial(m: int) -> tuple[Fraction, ...]:
    """Coefficients of P_m(a), ascending in a."""
    coeffs = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        weight = Fraction(2 ** k * binomial(2 * m - 2 * k, m - k) * binomial(m + k, m), 4 ** m)
        for i in range(k + 1):
            coeffs[i] += weight * binomial(k, i)
    return tuple(coeffs)


def quartic_from_pm(a: Fraction, m: int) -> AlgebraicExpression:
    """pi P_m(a) / (2^(m+3/2) (1+a)^(m+1/2)), the n = 0 quartic integral."""
    a = Fraction(a)
    value = sum((c * a ** i for i, c in enumerate(pm_polynomial(m))), Fraction(0))
    return mul(const(value), PI, power(const(2), -(m + Fraction(3, 2))), power(const(1 + a), -(m + HALF)))


def integrate_quartic_family(r: EvenRationalIntegrand) -> AlgebraicExpression:
    den = r.denominator
    if den.degree != 2:
        raise ConvergenceRange(f"expected a quartic denominator, got {den}")
    c, middle, b = den.coeffs
    pieces = [
        mul(const(r.numerator.coeffs[n]), quartic(QuarticSpec(a=middle / 2, m=r.m, n=n, b=b, c=c)))
        for n in r.numerator.support()
    ]
    return add(*pieces)


def integrate_linear_family(r: EvenRationalIntegrand) -> AlgebraicExpression:
    den = r.denominator
    if den.degree != 1:
        raise ConvergenceRange(f"expected a quadratic denominator, got {den}")
    c, b = den.coeffs
    return add(*(mul(const(r.numerator.coeffs[n]), linear_power(n, b, c, r.power)) for n in r.numerator.support()))


def integrate_sym8_family(r: EvenRationalIntegrand) -> AlgebraicExpression:
    """Numerator over (l z^8 + u z^6 + v z^4 + u z^2 + l)^(m+1)."""
    den = r.denominator
    if den.degree != 4 or den.coeffs != tuple(reversed(den.coeffs)):
        raise HypothesisViolation(f"expected a palindromic degree-8 denominator, got {den}")
    lead = den.leading
    a2 = den.coeffs[1] / lead
    a1 = den.coeffs[2] / (2 * lead)
    scale = const(1 / lead ** r.power)
    pieces = [
        mul(const(r.numerator.coeffs[n]), sym8(Sym8Spec(a1=a1, a2=a2, m=r.m, n=n)))
        for n in r.numerator.support()
    ]
    return mul(scale, add(*pieces))
