"""Splitting P / (U V) into A / U + B / V for coprime even factors."""

from __future__ import annotations

import logging
from fractions import Fraction

from core.linear import solve
from core.polynomial import EvenPolynomial

logger = logging.getLogger(__name__)

ONE_PLUS_T = EvenPolynomial.of(1, 1)


def split_two_factors(
    p: EvenPolynomial, u: EvenPolynomial, v: EvenPolynomial
) -> tuple[EvenPolynomial, EvenPolynomial]:
    """A, B with P = A V + B U, deg A < deg U and deg B < deg V (degrees in t = z^2).

    Raises DomainViolation when U and V share a root.
    """
    du, dv = u.degree, v.degree
    size = du + dv
    if p.degree >= size:
        raise ValueError(f"numerator degree {p.degree} must be below {size}")
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(du):
        for k, c in enumerate(v.coeffs):
            rows[i + k][i] += c
    for i in range(dv):
        for k, c in enumerate(u.coeffs):
            rows[i + k][du + i] += c
    rhs = [[p.coefficient(k)] for k in range(size)]
    sol = solve(rows, rhs)
    a = EvenPolynomial(tuple(row[0] for row in sol[:du]))
    b = EvenPolynomial(tuple(row[0] for row in sol[du:]))
    logger.debug("split %s into (%s)/U + (%s)/V", p, a, b)
    return a, b


def find_unit_root_power(q: EvenPolynomial) -> tuple[int, EvenPolynomial]:
    """Largest r with (1 + t)^r dividing q, and the cofactor."""
    r = 0
    while q.degree > 0 and q.at_t(-1) == 0:
        quotient = q.exact_div(ONE_PLUS_T)
        if quotient is None:
            break
        q = quotient
        r += 1
    return r, q
