from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, log
from pathlib import Path
from typing import Any, Optional, Sequence

from mpmath import mp

from core.errors import (
    DomainViolation,
    MaxIterationsReached,
    NonConvergentIntegrand,
    NonPositiveParameters,
    UnsupportedPower,
)
from core.expression import AlgebraicExpression
from core.parsing import as_mpf
from core.polynomial import EvenPolynomial


@dataclass(frozen=True, slots=True)
class EvenRationalIntegrand:
    """numerator(z) / denominator(z)**power on [0, inf)."""

    numerator: EvenPolynomial
    denominator: EvenPolynomial
    power: int = 1

    def __post_init__(self) -> None:
        if self.power < 1:
            raise DomainViolation(f"denominator power must be positive, got {self.power}")
        if self.denominator.degree < 1:
            raise NonConvergentIntegrand("denominator must have positive degree in z^2")
        if not self.denominator.positive_on_half_line():
            raise DomainViolation(f"denominator {self.denominator} is not positive on [0, inf)")
        if self.numerator.degree > self.power * self.denominator.degree - 1:
            raise NonConvergentIntegrand(
                f"numerator degree {2 * self.numerator.degree} too large for "
                f"denominator degree {2 * self.denominator.degree} to power {self.power}"
            )

    @classmethod
    def from_lists(
        cls, numerator: Sequence[Fraction | int | str], denominator: Sequence[Fraction | int | str], power: int = 1
    ) -> "EvenRationalIntegrand":
        return cls(EvenPolynomial.of(*numerator), EvenPolynomial.of(*denominator), power)

    @property
    def normalized(self) -> bool:
        return self.denominator.constant_term == 1 and self.denominator.leading == 1

    @property
    def m(self) -> int:
        return self.power - 1

    def scale_numerator(self, factor: Fraction | int) -> "EvenRationalIntegrand":
        return EvenRationalIntegrand(self.numerator.scale(factor), self.denominator, self.power)

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})^{self.power}"


@dataclass(frozen=True, slots=True)
class QuarticSpec:
    """Parameters of z^(2n) / (b z^4 + 2a z^2 + c)^(m+1)."""

    a: Fraction
    m: int
    n: int
    b: Fraction = Fraction(1)
    c: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def scaled(self) -> bool:
        return self.b != 1 or self.c != 1


@dataclass(frozen=True, slots=True)
class Sym8Spec:
    """Parameters of z^(2n) / (z^8 + a2 z^6 + 2 a1 z^4 + a2 z^2 + 1)^(m+1)."""

    a1: Fraction
    a2: Fraction
    m: int
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a1", Fraction(self.a1))
        object.__setattr__(self, "a2", Fraction(self.a2))

    @property
    def c1(self) -> Fraction:
        return self.a2 + 4

    @property
    def c2(self) -> Fraction:
        return 1 + self.a1 + self.a2


@dataclass(frozen=True, slots=True)
class ParameterPoint:
    """(a1..a_{p-1}; b0..b_{p-1}) for (b0 z^(2p-2) + ... + b_{p-1}) / (z^(2p) + a1 z^(2p-2) + ... + 1).

    Entries are Fractions (exact mode) or mpmath floats (float mode).
    """

    a: tuple[Any, ...]
    b: tuple[Any, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b) - 1 or len(self.b) < 2:
            raise DomainViolation(f"expected p-1 a-values and p b-values, got {len(self.a)} and {len(self.b)}")
        if any(value <= 0 for value in (*self.a, *self.b)):
            raise NonPositiveParameters(f"parameter point leaves the positive orthant: {self}", witness=self)

    @classmethod
    def from_integrand(cls, r: EvenRationalIntegrand) -> "ParameterPoint":
        """Point of a power-1 integrand; unnormalized denominators are rescaled in float mode."""
        if r.power != 1:
            raise UnsupportedPower(f"parameter points describe power-1 integrands, got power {r.power}")
        p = r.denominator.degree
        if p < 2:
            raise DomainViolation(f"parameter points need half-degree p >= 2, got {p}")
        numerator = [r.numerator.coefficient(k) for k in range(p)]
        if r.normalized:
            return cls(a=tuple(reversed(r.denominator.coeffs[1:p])), b=tuple(reversed(numerator)))
        return normalized_point(numerator, list(r.denominator.coeffs))

    @property
    def p(self) -> int:
        return len(self.b)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in (*self.a, *self.b))

    def denominator_ascending(self) -> list[Any]:
        one = Fraction(1) if self.exact else type(self.b[0])(1)
        return [one, *reversed(self.a), one]

    def numerator_ascending(self) -> list[Any]:
        return list(reversed(self.b))

    def to_integrand(self) -> EvenRationalIntegrand:
        if not self.exact:
            raise DomainViolation("only exact parameter points convert to rational integrands")
        return EvenRationalIntegrand(
            EvenPolynomial(tuple(self.numerator_ascending())),
            EvenPolynomial(tuple(self.denominator_ascending())),
            1,
        )

    def a_target(self) -> tuple[int, ...]:
        return tuple(comb(self.p, k) for k in range(1, self.p))

    def b_weights(self) -> tuple[int, ...]:
        return tuple(comb(self.p - 1, k) for k in range(self.p))

    def __str__(self) -> str:
        a = ", ".join(str(v) for v in self.a)
        b = ", ".join(str(v) for v in self.b)
        return f"({a}; {b})"


def normalized_point(numerator: Sequence[Any], denominator: Sequence[Any]) -> ParameterPoint:
    """Substitute z -> lambda z so the denominator has unit constant and leading
    coefficients; lambda^2 = (q_0 / q_p)^(1/p). Float mode at the current mp precision."""
    num = [as_mpf(c) for c in numerator]
    den = [as_mpf(c) for c in denominator]
    p = len(den) - 1
    if den[0] <= 0 or den[-1] <= 0:
        raise DomainViolation("denominator needs positive constant and leading coefficients")
    num += [mp.zero] * (p - len(num))
    lam2 = mp.root(den[0] / den[-1], p)
    lam = mp.sqrt(lam2)
    a = [den[i] * lam2 ** i / den[0] for i in range(1, p)]
    b = [num[i] * lam ** (2 * i + 1) / den[0] for i in range(p)]
    return ParameterPoint(a=tuple(reversed(a)), b=tuple(reversed(b)))


class IterationStatus(str, Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    DOMAIN_EXIT = "DomainExit"


@dataclass(slots=True)
class IterationResult:
    limit_L: Any
    integral: Any
    iterations: int
    trajectory: list[ParameterPoint]
    status: IterationStatus

    @property
    def converged(self) -> bool:
        return self.status is IterationStatus.CONVERGED

    def require_converged(self) -> "IterationResult":
        if not self.converged:
            raise MaxIterationsReached(self)
        return self

    def a_distances(self) -> list[float]:
        out = []
        for point in self.trajectory:
            target = point.a_target()
            out.append(float(max(abs(v - t) for v, t in zip(point.a, target))) if target else 0.0)
        return out

    def quadratic_order(self, window: float = 0.1) -> float | None:
        """Fitted exponent q of error_{n+1} ~ C error_n^q near the fixed point."""
        errors = [e for e in self.a_distances() if 0 < e < window]
        orders = []
        for e0, e1, e2 in zip(errors, errors[1:], errors[2:]):
            if e2 < 1e-300 or e1 >= e0 or e2 >= e1:
                continue
            orders.append(log(e2 / e1) / log(e1 / e0))
        return max(orders) if orders else None


@dataclass(frozen=True, slots=True)
class QuadratureResult:
    value: Any
    error_estimate: Any
    evaluations: int


class Verdict(str, Enum):
    CLOSED_FORM = "ClosedForm"
    NUMERIC_ONLY = "NumericOnly"


@dataclass(frozen=True, slots=True)
class PathStep:
    kind: str
    p: int | None = None

    def __str__(self) -> str:
        return f"{self.kind}({self.p})" if self.p is not None else self.kind


@dataclass(slots=True)
class ComputabilityReport:
    verdict: Verdict
    path: list[PathStep] = field(default_factory=list)
    value: Optional[AlgebraicExpression] = None
    witness: Optional[tuple[EvenPolynomial, ...]] = None

    @property
    def closed_form(self) -> bool:
        return self.verdict is Verdict.CLOSED_FORM


def binomial_denominator_point(p: int) -> tuple[Fraction, ...]:
    """d_1..d_p of (1 + z^2)^(2p) written in symmetric form."""
    d = [Fraction(0)] * (p + 1)
    for k in range(p):
        d[p + 1 - k - 1] = Fraction(comb(2 * p, k))
    d[0] = Fraction(comb(2 * p, p), 2)
    return tuple(d[:p])


@dataclass(frozen=True, slots=True)
class SymmetryConstraintFamily:
    """Bound d's as offset + matrix @ free, for the symmetric denominators of half-degree 2p
    whose reduction stays symmetric down to the degree-8 base."""

    p: int
    free: tuple[str, ...]
    bound: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    offset: tuple[Fraction, ...]
    origin: tuple[Fraction, ...] = ()

    def bound_values(self, free_values: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        if len(free_values) != len(self.free):
            raise DomainViolation(f"expected {len(self.free)} free values, got {len(free_values)}")
        values = [Fraction(v) for v in free_values]
        return tuple(
            off + sum((coef * v for coef, v in zip(row, values)), Fraction(0))
            for off, row in zip(self.offset, self.matrix)
        )

    def member(self, free_values: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        """Full d-vector d_1..d_p."""
        values = tuple(Fraction(v) for v in free_values)
        bound = self.bound_values(values)
        d = bound + values
        if self.origin:
            d = tuple(x + o for x, o in zip(d, self.origin))
        return d

    def denominator(self, free_values: Sequence[Fraction | int]) -> EvenPolynomial:
        d = self.member(free_values)
        half = [Fraction(1), *reversed(d[1:])]
        middle = 2 * d[0]
        return EvenPolynomial((*half, middle, *reversed(half)))

    def shifted(self) -> "SymmetryConstraintFamily":
        """Coordinates e = d - d*, centred on (1 + z^2)^(2p)."""
        star = binomial_denominator_point(self.p)
        free_star = star[len(self.bound):]
        bound_star = star[: len(self.bound)]
        offset = tuple(
            off + sum((coef * v for coef, v in zip(row, free_star)), Fraction(0)) - b
            for off, row, b in zip(self.offset, self.matrix, bound_star)
        )
        return SymmetryConstraintFamily(
            p=self.p,
            free=tuple(name.replace("d", "e") for name in self.free),
            bound=tuple(name.replace("d", "e") for name in self.bound),
            matrix=self.matrix,
            offset=offset,
            origin=star,
        )


@dataclass(slots=True)
class JobSpec:
    command: str
    numerator: tuple[Fraction, ...] = ()
    denominator: tuple[Fraction, ...] = ()
    power: int = 1
    digits: int = 50
    tol: Optional[Fraction] = None
    max_iter: int = 200
    output_format: str = "json"
    seed: int = 0
    max_depth: int = 8
    family_p: int = 4
    xlsx: Optional[Path] = None

    def integrand(self) -> EvenRationalIntegrand:
        return EvenRationalIntegrand.from_lists(self.numerator, self.denominator, self.power)


@dataclass(slots=True)
class JobResult:
    command: str
    closed_form: Optional[str] = None
    decimal: Optional[str] = None
    digits: Optional[int] = None
    method: Optional[str] = None
    iterations: Optional[int] = None
    L: Optional[str] = None
    status: str = "ok"
    details: dict[str, Any] = field(default_factory=dict)
    exit_code: int = 0

    def to_record(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "closed_form": self.closed_form,
            "decimal": self.decimal,
            "digits": self.digits,
            "method": self.method,
            "iterations": self.iterations,
            "L": self.L,
            "status": self.status,
            "details": self.details,
        }
