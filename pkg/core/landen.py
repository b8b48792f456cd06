"""The rational Landen transformation and its iteration.

One step symmetrizes the denominator (Q times its reflection), halves the
degree with the reduction identity and rescales z so the new denominator is
normalized again. Iterating drives the denominator towards (1 + z^2)^p and
the numerator towards L (1 + z^2)^(p-1), so the integral is L pi / 2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from mpmath import mp

from core.errors import DomainViolation, NonPositiveParameters, NotNormalized, UnsupportedPower
from core.expression import AlgebraicExpression, RationalConst, const, eval_expression, exact_root, mul, power
from core.models import (
    EvenRationalIntegrand,
    IterationResult,
    IterationStatus,
    ParameterPoint,
    normalized_point,
)
from core.parsing import as_mpf
from core.polynomial import EvenPolynomial
from core.reduction import ep_matrix, monomial_terms
from core.settings import DEFAULT_MAX_ITER, MIN_ITERATION_DIGITS

logger = logging.getLogger(__name__)


def _convolve(f: Sequence[Any], g: Sequence[Any], zero: Any) -> list[Any]:
    out = [zero] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        for j, gj in enumerate(g):
            out[i + j] += fi * gj
    return out


def _reduced_coefficients(
    numerator: Sequence[Any], denominator: Sequence[Any], convert: Callable[[Fraction], Any]
) -> tuple[list[Any], list[Any]]:
    """Numerator and E_p (ascending) of the reduced integrand for power 1.

    Works over any field whose elements accept ``convert``ed rationals.
    """
    p = len(denominator) - 1
    zero = convert(Fraction(0))
    reflected = list(reversed(denominator))
    c = _convolve(numerator, reflected, zero)
    d = _convolve(denominator, reflected, zero)
    # d-vector of the symmetric product: d_1 = D[p] / 2, d_j = D[p - j + 1], d_{p+1} = D[0]
    full = [d[p] / 2] + [d[p - j + 1] for j in range(2, p + 1)] + [d[0]]
    e = [sum((convert(w) * v for w, v in zip(row, full)), zero) for row in ep_matrix(p)]
    n = [zero] * p
    for k, coefficient in enumerate(c):
        if coefficient == 0:
            continue
        for term in monomial_terms(k, p, 0):
            n[term.exponent] += convert(term.coefficient) * coefficient
    return n, e


@dataclass(frozen=True, slots=True)
class ExactLandenStep:
    """An exact step: the rational reduced integrand and its normalized coefficients.

    ``scale_squared`` is lambda^2 = (e_0 / e_p)^(1/p); the coefficients are
    exact algebraic numbers, rational only when that root is.
    """

    reduced: EvenRationalIntegrand
    scale_squared: AlgebraicExpression
    a: tuple[AlgebraicExpression, ...]
    b: tuple[AlgebraicExpression, ...]

    def rational_point(self) -> Optional[ParameterPoint]:
        values = [_rational_value(e) for e in (*self.a, *self.b)]
        if any(v is None for v in values):
            return None
        return ParameterPoint(a=tuple(values[: len(self.a)]), b=tuple(values[len(self.a) :]))

    def to_point(self, digits: int = 50) -> ParameterPoint:
        point = self.rational_point()
        if point is not None:
            return point
        with mp.workdps(digits + 10):
            return ParameterPoint(
                a=tuple(mp.mpf(eval_expression(e, digits)) for e in self.a),
                b=tuple(mp.mpf(eval_expression(e, digits)) for e in self.b),
            )

    def to_integrand(self) -> EvenRationalIntegrand:
        point = self.rational_point()
        if point is None:
            raise DomainViolation(f"step scale {self.scale_squared} is irrational; use to_point()")
        return point.to_integrand()


def _rational_value(e: AlgebraicExpression) -> Optional[Fraction]:
    return e.value if isinstance(e, RationalConst) else None


def landen_step_exact(r: EvenRationalIntegrand, p: Optional[int] = None, power_: int = 1) -> ExactLandenStep:
    if r.power != 1 or power_ != 1:
        raise UnsupportedPower("Landen steps are implemented for denominator power 1 only")
    if not r.normalized:
        raise NotNormalized(f"denominator {r.denominator} must have unit constant and leading coefficients")
    degree = r.denominator.degree
    if p is not None and p != degree:
        raise DomainViolation(f"expected half-degree {p}, got {degree}")
    p = degree
    if p < 2:
        raise DomainViolation("Landen steps need half-degree p >= 2")
    numerator = [r.numerator.coefficient(k) for k in range(p)]
    n, e = _reduced_coefficients(numerator, list(r.denominator.coeffs), Fraction)
    reduced = EvenRationalIntegrand(EvenPolynomial(tuple(n)), EvenPolynomial(tuple(e)), 1)
    e0, ep = e[0], e[p]
    ratio = const(e0 / ep)
    a_asc = [mul(const(e[i] / e0), power(ratio, Fraction(i, p))) for i in range(1, p)]
    b_asc = [mul(const(n[i] / e0), power(ratio, Fraction(2 * i + 1, 2 * p))) for i in range(p)]
    logger.debug("exact Landen step on %s: E = %s", r, reduced.denominator)
    return ExactLandenStep(
        reduced=reduced,
        scale_squared=power(ratio, Fraction(1, p)),
        a=tuple(reversed(a_asc)),
        b=tuple(reversed(b_asc)),
    )


def landen_step(x: ParameterPoint) -> ParameterPoint:
    """Float-mode step at the current mp precision."""
    den = [as_mpf(v) for v in x.denominator_ascending()]
    num = [as_mpf(v) for v in x.numerator_ascending()]
    n, e = _reduced_coefficients(num, den, as_mpf)
    if any(v <= 0 for v in e):
        raise NonPositiveParameters(f"reduced denominator left the positive orthant at {x}", witness=x)
    return normalized_point(n, e)


def _exact_fraction_point(x: ParameterPoint) -> tuple[list[Fraction], list[Fraction]]:
    return [Fraction(v) for v in x.a], [Fraction(v) for v in x.b]


def phi6(x: ParameterPoint) -> ParameterPoint:
    """Coefficient map of one step at p = 3; exact when the cube root of a1 + a2 + 2 is rational."""
    if x.p != 3:
        raise DomainViolation(f"phi6 acts on p = 3 points, got p = {x.p}")
    root = None
    if x.exact:
        (a1, a2), (b0, b1, b2) = _exact_fraction_point(x)
        s = a1 + a2 + 2
        root = exact_root(s, 3)
    if root is None:
        a1, a2, b0, b1, b2 = (as_mpf(v) for v in (*x.a, *x.b))
        s = a1 + a2 + 2
        root = mp.cbrt(s)
    return ParameterPoint(
        a=((9 + 5 * a1 + 5 * a2 + a1 * a2) / root ** 4, (a1 + a2 + 6) / root ** 2),
        b=(
            (b0 + b1 + b2) / root ** 2,
            (b0 * (a2 + 3) + 2 * b1 + b2 * (a1 + 3)) / s,
            (b0 + b2) / root,
        ),
    )


def phi8(x: ParameterPoint) -> ParameterPoint:
    """Coefficient map of one step at p = 4; exact when the fourth root of a1 + a2 + a3 + 2 is rational."""
    if x.p != 4:
        raise DomainViolation(f"phi8 acts on p = 4 points, got p = {x.p}")
    root = None
    if x.exact:
        (a1, a2, a3), (b0, b1, b2, b3) = _exact_fraction_point(x)
        s = a1 + a2 + a3 + 2
        root = exact_root(s, 4)
    if root is None:
        a1, a2, a3, b0, b1, b2, b3 = (as_mpf(v) for v in (*x.a, *x.b))
        s = a1 + a2 + a3 + 2
        root = mp.root(s, 4)
    return ParameterPoint(
        a=(
            (a2 * (a1 + a3) + 4 * a1 * a3 + 10 * (a1 + a3) + 8 * (a2 + 2)) / root ** 6,
            (a1 * a3 + 6 * (a1 + a3) + 2 * (a2 + 10)) / s,
            (a1 + a3 + 8) / root ** 2,
        ),
        b=(
            (b0 + b1 + b2 + b3) / root ** 3,
            (b3 * (3 * a1 + a2 + 6) + b2 * (a1 + 4) + b1 * (a3 + 4) + b0 * (3 * a3 + a2 + 6)) / root ** 5,
            (b3 * (a1 + 5) + b2 + b1 + b0 * (a3 + 5)) / root ** 3,
            (b0 + b3) / root,
        ),
    )


def _float_point(x: ParameterPoint) -> ParameterPoint:
    return ParameterPoint(a=tuple(as_mpf(v) for v in x.a), b=tuple(as_mpf(v) for v in x.b))


def _converged(point: ParameterPoint, previous: Optional[ParameterPoint], tol) -> bool:
    if any(abs(v - t) > tol for v, t in zip(point.a, point.a_target())):
        return False
    ratios = [b / w for b, w in zip(point.b, point.b_weights())]
    reference = ratios[0]
    if any(abs(r - reference) > tol * abs(reference) for r in ratios):
        return False
    if previous is not None:
        if any(abs(b - q) > tol * abs(b) for b, q in zip(point.b, previous.b)):
            return False
    return True


def _distance(point: ParameterPoint):
    """Max-norm gap to the binomial fixed point: a against the target, b ratios against each other."""
    gaps = [abs(v - t) for v, t in zip(point.a, point.a_target())]
    ratios = [b / w for b, w in zip(point.b, point.b_weights())]
    gaps += [abs(r - ratios[0]) / abs(ratios[0]) for r in ratios]
    return max(gaps)


def _limit(point: ParameterPoint):
    return sum(point.b) / 2 ** (point.p - 1)


def iterate(
    x0: ParameterPoint,
    digits: int = MIN_ITERATION_DIGITS,
    tol: Any = None,
    max_iter: int = DEFAULT_MAX_ITER,
    step: Optional[Callable[[ParameterPoint], ParameterPoint]] = None,
) -> IterationResult:
    """Iterate the Landen step until the point settles at the binomial fixed point.

    Never raises for non-convergence; the status field says how it ended, and an
    unfinished run reports L of the iterate closest to the fixed point.
    """
    step = step or landen_step
    with mp.workdps(max(MIN_ITERATION_DIGITS, digits)):
        tol = mp.mpf(10) ** (-(digits - 10)) if tol is None else as_mpf(tol)
        point = _float_point(x0)
        trajectory = [point]
        previous = None
        status = IterationStatus.MAX_ITERATIONS
        for count in range(max_iter + 1):
            if _converged(point, previous, tol):
                status = IterationStatus.CONVERGED
                break
            if count == max_iter:
                break
            try:
                following = step(point)
            except NonPositiveParameters as exc:
                logger.warning("iteration left the domain after %d steps: %s", count, exc)
                status = IterationStatus.DOMAIN_EXIT
                break
            previous, point = point, following
            trajectory.append(point)
        if status is IterationStatus.CONVERGED:
            limit = _limit(point)
        else:
            best = min(trajectory, key=_distance)
            limit = _limit(best)
        integral = limit * mp.pi / 2
    iterations = len(trajectory) - 1
    if status is IterationStatus.CONVERGED:
        logger.info("Landen iteration converged after %d steps, L = %s", iterations, mp.nstr(limit, 15))
    else:
        logger.warning("Landen iteration stopped with %s after %d steps", status.value, iterations)
    return IterationResult(limit_L=limit, integral=integral, iterations=iterations, trajectory=trajectory, status=status)


def agm(a: Any, b: Any, digits: int = 50):
    """Arithmetic-geometric mean by the Gauss iteration."""
    with mp.workdps(digits + 10):
        a, b = as_mpf(a), as_mpf(b)
        if a <= 0 or b <= 0:
            raise DomainViolation(f"agm needs positive arguments, got {a}, {b}")
        eps = mp.mpf(10) ** (-(digits + 5))
        while abs(a - b) > eps * a:
            a, b = (a + b) / 2, mp.sqrt(a * b)
        result = (a + b) / 2
    return +result


def format_trajectory(result: IterationResult, significant: int = 6) -> str:
    """Plain-text table, one row per iterate: n, a_1..a_{p-1}, b_0..b_{p-1}."""
    if not result.trajectory:
        return ""
    p = result.trajectory[0].p
    header = ["n", *(f"a{i}" for i in range(1, p)), *(f"b{i}" for i in range(p))]
    rows = [header]
    for n, point in enumerate(result.trajectory):
        rows.append([str(n), *(mp.nstr(as_mpf(v), significant) for v in (*point.a, *point.b))])
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows]
    lines.append(f"L = {mp.nstr(result.limit_L, significant)}   integral = {mp.nstr(result.integral, significant)}")
    return "\n".join(lines)
