"""Halving the degree of a symmetric denominator.

For D_p(z) = sum_k d_{p+1-k} (z^(2k) + z^(4p-2k)) (the middle term being
2 d_1 z^(2p)) every integral of z^(2n) / D_p^(m+1) over [0, inf) equals a
positive combination of integrals of z^(2n') / E_p^(m+1), where E_p has
half-degree p and coefficients linear in d.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from core.errors import DomainViolation, NotSymmetric, OutOfConvergenceRange
from core.models import EvenRationalIntegrand
from core.polynomial import EvenPolynomial, binomial, is_symmetric

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SymmetricDenominator:
    p: int
    d: tuple[Fraction, ...]
    lead: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(Fraction(v) for v in self.d))
        object.__setattr__(self, "lead", Fraction(self.lead))
        if self.p < 1 or len(self.d) != self.p:
            raise DomainViolation(f"expected {self.p} values d_1..d_p, got {len(self.d)}")
        if not self.expand().positive_on_half_line():
            raise DomainViolation(f"symmetric denominator {self.expand()} is not positive on [0, inf)")

    @classmethod
    def from_polynomial(cls, q: EvenPolynomial) -> "SymmetricDenominator":
        if q.is_zero or not is_symmetric(q):
            raise NotSymmetric(f"{q} is not palindromic")
        if q.degree % 2:
            raise NotSymmetric(f"{q} has odd half-degree {q.degree}; reduction needs a multiple of 4 in z")
        p = q.degree // 2
        coeffs = q.coeffs
        d = [coeffs[p] / 2] + [coeffs[p - j + 1] for j in range(2, p + 1)]
        return cls(p, tuple(d), coeffs[0])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """d_1, ..., d_p, d_{p+1}."""
        return (*self.d, self.lead)

    def expand(self) -> EvenPolynomial:
        full = self.coefficients
        half = [full[self.p + 1 - k - 1] for k in range(self.p)]
        return EvenPolynomial((*half, 2 * full[0], *reversed(half)))


@dataclass(frozen=True, slots=True)
class ReductionTerm:
    coefficient: Fraction
    exponent: int


@lru_cache(maxsize=None)
def ep_matrix(p: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k gives the z^(2k) coefficient of E_p as a linear form in d_1..d_{p+1}."""
    rows = [[Fraction(0)] * (p + 1) for _ in range(p + 1)]
    rows[p] = [Fraction(1)] * (p + 1)
    for i in range(1, p + 1):
        scale = 2 ** (2 * i - 1)
        for j in range(1, p - i + 2):
            rows[p - i][j + i - 1] = scale * Fraction(j + i - 1, i) * binomial(j + 2 * i - 2, j - 1)
    return tuple(tuple(row) for row in rows)


def ep_coefficients(d: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """E_p coefficients (ascending in z^2) from d_1..d_{p+1}; no domain checks."""
    p = len(d) - 1
    return tuple(sum((c * v for c, v in zip(row, d)), Fraction(0)) for row in ep_matrix(p))


def build_Ep(den: SymmetricDenominator) -> EvenPolynomial:
    return EvenPolynomial(ep_coefficients(den.coefficients))


def convergence_limit(p: int, m: int) -> int:
    """Largest admissible n for z^(2n) over a half-degree-2p denominator to power m+1."""
    return 2 * p * (m + 1) - 1


def fold_exponent(n: int, p: int, m: int) -> int:
    top = (m + 1) * p - 1
    return convergence_limit(p, m) - n if n > top else n


def monomial_terms(n: int, p: int, m: int) -> list[ReductionTerm]:
    if n < 0 or n > convergence_limit(p, m):
        raise OutOfConvergenceRange(f"exponent {2 * n} outside [0, {2 * convergence_limit(p, m)}] for p={p}, m={m}")
    n = fold_exponent(n, p, m)
    top = (m + 1) * p
    scale = Fraction(1, 2 ** m)
    return [
        ReductionTerm(scale * 4 ** j * binomial(top - n - 1 + j, 2 * j), top - 1 - j)
        for j in range(top - n)
    ]


def reduce_monomial(n: int, den: SymmetricDenominator, m: int) -> list[ReductionTerm]:
    return monomial_terms(n, den.p, m)


def reduce_function(r: EvenRationalIntegrand) -> EvenRationalIntegrand:
    den = SymmetricDenominator.from_polynomial(r.denominator)
    numerator = [Fraction(0)] * ((r.m + 1) * den.p)
    for n in r.numerator.support():
        weight = r.numerator.coeffs[n]
        for term in reduce_monomial(n, den, r.m):
            numerator[term.exponent] += weight * term.coefficient
    reduced = EvenRationalIntegrand(EvenPolynomial(tuple(numerator)), build_Ep(den), r.power)
    logger.debug("reduced half-degree %d to %d: %s", 2 * den.p, den.p, reduced)
    return reduced


def uses_symmetry_rule(r: EvenRationalIntegrand) -> bool:
    p = r.denominator.degree // 2
    return any(n > (r.m + 1) * p - 1 for n in r.numerator.support())
