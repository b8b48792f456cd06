"""Which integrals the symmetric-descent algorithm evaluates in closed form.

``classify`` walks the integrand down: symmetric denominators of even
half-degree are reduced, factors of (1 + z^2) are split off by partial
fractions, and the recursion ends at the linear, quartic and symmetric
octic base cases.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from core.closed_form import integrate_linear_family, integrate_quartic_family, integrate_sym8_family, linear_power
from core.errors import DomainViolation, NonPositiveParameters
from core.expression import AlgebraicExpression, add, const, mul
from core.linear import AffineForm, combine, solve_affine
from core.models import ComputabilityReport, EvenRationalIntegrand, PathStep, SymmetryConstraintFamily, Verdict
from core.partial_fractions import ONE_PLUS_T, find_unit_root_power, split_two_factors
from core.polynomial import EvenPolynomial, is_symmetric, poly_mul
from core.reduction import ep_matrix, reduce_function, uses_symmetry_rule
from core.settings import DEFAULT_MAX_DEPTH

logger = logging.getLogger(__name__)


class _NotComputable(Exception):
    pass


def classify(
    r: EvenRationalIntegrand,
    max_depth: int = DEFAULT_MAX_DEPTH,
    factors: Optional[tuple[EvenPolynomial, EvenPolynomial]] = None,
) -> ComputabilityReport:
    """``factors`` is an optional coprime factorization U V of the denominator."""
    path: list[PathStep] = []
    try:
        value = _evaluate(r, max_depth, path, factors)
    except _NotComputable:
        logger.debug("no closed form for %s after %s", r, [str(step) for step in path])
        return ComputabilityReport(Verdict.NUMERIC_ONLY, path, None, factors)
    logger.debug("closed form for %s via %s", r, [str(step) for step in path])
    return ComputabilityReport(Verdict.CLOSED_FORM, path, value, factors)


def _evaluate(
    r: EvenRationalIntegrand,
    depth: int,
    path: list[PathStep],
    factors: Optional[tuple[EvenPolynomial, EvenPolynomial]] = None,
) -> AlgebraicExpression:
    den = r.denominator
    try:
        if den.degree == 1:
            path.append(PathStep("WallisBase"))
            return integrate_linear_family(r)
        if den.degree == 2:
            path.append(PathStep("QuarticBase"))
            return integrate_quartic_family(r)
        if den.degree == 4 and is_symmetric(den):
            path.append(PathStep("Sym8Base"))
            return integrate_sym8_family(r)
    except DomainViolation as exc:
        logger.debug("base case rejected %s: %s", r, exc)
        raise _NotComputable from exc
    if depth <= 0:
        raise _NotComputable
    if factors is not None:
        return _split(r, factors[0], factors[1], depth, path)
    if is_symmetric(den) and den.degree % 2 == 0:
        path.append(PathStep("Reduce", den.degree // 2))
        if uses_symmetry_rule(r):
            path.append(PathStep("SymmetryRule"))
        try:
            reduced = reduce_function(r)
        except DomainViolation as exc:
            raise _NotComputable from exc
        return _evaluate(reduced, depth - 1, path)
    multiplicity, rest = find_unit_root_power(den)
    if multiplicity == 0:
        raise _NotComputable
    if rest.degree == 0:
        path.append(PathStep("WallisBase"))
        scale = 1 / rest.constant_term ** r.power
        return mul(const(scale), _wallis_terms(r.numerator, multiplicity * r.power))
    return _split(r, ONE_PLUS_T ** multiplicity, rest, depth, path)


def _wallis_terms(numerator: EvenPolynomial, power: int) -> AlgebraicExpression:
    """Integral of numerator / (1 + z^2)^power."""
    return add(*(mul(const(numerator.coeffs[i]), linear_power(i, 1, 1, power)) for i in numerator.support()))


def _split(
    r: EvenRationalIntegrand, u: EvenPolynomial, v: EvenPolynomial, depth: int, path: list[PathStep]
) -> AlgebraicExpression:
    if poly_mul(u, v) != r.denominator:
        raise DomainViolation(f"({u}) * ({v}) is not the denominator {r.denominator}")
    try:
        a, b = split_two_factors(r.numerator, u ** r.power, v ** r.power)
    except DomainViolation as exc:
        logger.debug("factors share a root: %s", exc)
        raise _NotComputable from exc
    path.append(PathStep("Split"))
    logger.debug("split %s over (%s)^%d and (%s)^%d", r, u, r.power, v, r.power)
    pieces = []
    for numerator, factor in ((a, u), (b, v)):
        if numerator.is_zero:
            continue
        try:
            piece = EvenRationalIntegrand(numerator, factor, r.power)
        except DomainViolation as exc:
            raise _NotComputable from exc
        pieces.append(_evaluate(piece, depth - 1, path))
    return add(*pieces)


def _palindromic_conditions(forms: list[AffineForm]) -> list[AffineForm]:
    top = len(forms) - 1
    return [forms[k] - forms[top - k] for k in range(top + 1) if k < top - k]


def solve_symmetry_family(p: int) -> SymmetryConstraintFamily:
    """Symmetric D_p whose reductions stay symmetric down to the octic base.

    p must be a power of two, at least 4; d_1..d_{p-2} come out as affine
    functions of d_{p-1} and d_p.
    """
    if p < 4 or p & (p - 1):
        raise DomainViolation(f"symmetry families exist for p = 4, 8, 16, ..., got {p}")
    d_forms = [AffineForm.variable(i, p) for i in range(p)] + [AffineForm.constant_form(1, p)]
    level = p
    equations: list[AffineForm] = []
    while True:
        e_forms = [combine(row, d_forms) for row in ep_matrix(level)]
        equations += _palindromic_conditions(e_forms)
        if level == 4:
            break
        half = level // 2
        d_forms = [e_forms[half].scale(Fraction(1, 2))] + [e_forms[half - j + 1] for j in range(2, half + 1)]
        d_forms.append(e_forms[0])
        level = half
    offset, matrix = solve_affine(equations, list(range(p - 2)), [p - 2, p - 1])
    logger.debug("symmetry family p=%d: %d conditions", p, len(equations))
    return SymmetryConstraintFamily(
        p=p,
        free=(f"d{p - 1}", f"d{p}"),
        bound=tuple(f"d{j}" for j in range(1, p - 1)),
        matrix=matrix,
        offset=offset,
    )


@dataclass(frozen=True, slots=True)
class FactoredSextic:
    """z^6 + a1 z^4 + a2 z^2 + 1 = (z^2 + d)(z^4 + c z^2 + 1/d)."""

    c: Fraction
    d: Fraction
    a1: Fraction
    a2: Fraction
    factors: tuple[EvenPolynomial, EvenPolynomial]

    @property
    def denominator(self) -> EvenPolynomial:
        return EvenPolynomial.of(1, self.a2, self.a1, 1)

    @property
    def in_domain(self) -> bool:
        return self.a1 > 0 and self.a2 > 0

    @property
    def verified(self) -> bool:
        return poly_mul(*self.factors) == self.denominator

    def require_domain(self) -> "FactoredSextic":
        if not self.in_domain:
            raise NonPositiveParameters(f"X(c, d) point ({self.a1}, {self.a2}) is not positive", witness=self)
        return self


def xcd_family(c: Fraction | int, d: Fraction | int) -> FactoredSextic:
    c, d = Fraction(c), Fraction(d)
    if d == 0:
        raise DomainViolation("X(c, d) needs d != 0")
    factors = (EvenPolynomial.of(d, 1), EvenPolynomial.of(1 / d, c, 1))
    member = FactoredSextic(c=c, d=d, a1=c + d, a2=c * d + 1 / d, factors=factors)
    if not member.in_domain:
        logger.debug("X(%s, %s) leaves the positive quadrant", c, d)
    return member


def x1_point(t: Fraction | int) -> tuple[Fraction, Fraction]:
    """Rational parametrization of the curve mapped onto the diagonal a1 = a2 by one step."""
    t = Fraction(t)
    if t <= 0:
        raise NonPositiveParameters(f"x1_point needs t > 0, got {t}", witness=t)
    a1 = (t ** 5 - t ** 4 + 2 * t ** 3 - t ** 2 + t + 1) / t ** 2
    a2 = (t ** 5 + t ** 4 - t ** 3 + 2 * t ** 2 - t + 1) / t ** 3
    return a1, a2


def x1_curve_holds(a1: Fraction | int, a2: Fraction | int) -> bool:
    a1, a2 = Fraction(a1), Fraction(a2)
    return (9 + 5 * a1 + 5 * a2 + a1 * a2) ** 3 == (a1 + a2 + 2) ** 2 * (a1 + a2 + 6) ** 3
