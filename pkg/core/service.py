from __future__ import annotations

import logging
import random
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from mpmath import mp

from core.closed_form import wallis
from core.computability import classify, solve_symmetry_family
from core.db import ResultRepository
from core.excel_export import export_trajectory_workbook
from core.expression import eval_expression
from core.landen import format_trajectory, iterate
from core.models import (
    EvenRationalIntegrand,
    IterationResult,
    IterationStatus,
    JobResult,
    JobSpec,
    ParameterPoint,
)
from core.oracle import (
    integrate_numeric,
    lemma_a1,
    lemma_a2_identity,
    lemma_a3,
    lemma_a4_identity,
    wz_certificate_holds,
)
from core.parsing import as_mpf, format_coefficients, format_decimal
from core.polynomial import EvenPolynomial
from core.reduction import reduce_function
from core.settings import MIN_ITERATION_DIGITS, Settings, load_settings

logger = logging.getLogger(__name__)

EXIT_SHORTFALL = 3
EXIT_VERIFY_FAILED = 4
TABLE_DIGITS = 6


def _landen_ready(r: EvenRationalIntegrand) -> bool:
    """Landen parameter points need power 1, p >= 2 and a denominator with no nonpositive coefficient."""
    return r.power == 1 and r.denominator.degree >= 2 and all(c > 0 for c in r.denominator.coeffs)


def _holds(pair: tuple[Any, Any]) -> bool:
    lhs, rhs = pair
    return lhs == rhs


class IntegrationService:
    def __init__(self, settings: Settings | None = None, journal: Path | None = None):
        self.settings = settings or load_settings()
        journal = journal or self.settings.journal
        self.repo = ResultRepository(Path(journal)) if journal else None

    def close(self) -> None:
        if self.repo is not None:
            self.repo.close()

    def run(self, spec: JobSpec) -> JobResult:
        handlers: dict[str, Callable[[JobSpec], JobResult]] = {
            "integrate": self.integrate,
            "reduce": self.reduce,
            "landen": self.landen,
            "classify": self.classify,
            "family": self.family,
            "verify": self.verify,
        }
        if spec.command not in handlers:
            raise ValueError(f"unknown command {spec.command!r}")
        result = handlers[spec.command](spec)
        self._journal(result)
        return result

    def _journal(self, result: JobResult) -> None:
        if self.repo is None:
            return
        job_id = self.repo.save_job(result.to_record())
        self.repo.log(result.command, f"job {job_id}: {result.status}")

    def integrate(self, spec: JobSpec) -> JobResult:
        r = spec.integrand()
        report = classify(r, spec.max_depth)
        path = [str(step) for step in report.path]
        if report.closed_form:
            return JobResult(
                command="integrate",
                closed_form=str(report.value),
                decimal=eval_expression(report.value, spec.digits),
                digits=spec.digits,
                method="closed-form",
                details={"path": path},
            )
        if _landen_ready(r):
            return self._integrate_by_landen(r, spec, path)
        logger.info("integrating %s by quadrature", r)
        quadrature = integrate_numeric(r, spec.digits)
        with mp.workdps(spec.digits + 10):
            error = mp.nstr(quadrature.error_estimate, 5)
            decimal = format_decimal(quadrature.value, spec.digits)
        return JobResult(
            command="integrate",
            decimal=decimal,
            digits=spec.digits,
            method="quadrature",
            details={"path": path, "error_estimate": error, "evaluations": quadrature.evaluations},
        )

    def _integrate_by_landen(self, r: EvenRationalIntegrand, spec: JobSpec, path: list[str]) -> JobResult:
        p = r.denominator.degree
        coefficients = [r.numerator.coefficient(k) for k in range(p)]
        if all(c > 0 for c in coefficients):
            parts = [(Fraction(1), r)]
        else:
            # split into two numerators with positive coefficients; the integral is linear in the numerator
            shift = 1 + max(abs(c) for c in coefficients)
            offset = EvenPolynomial(tuple([shift] * p))
            parts = [
                (Fraction(1), EvenRationalIntegrand(r.numerator + offset, r.denominator, 1)),
                (Fraction(-1), EvenRationalIntegrand(offset, r.denominator, 1)),
            ]
        results = [(sign, self._iterate(self._point(part, spec), spec)) for sign, part in parts]
        with mp.workdps(max(spec.digits, self.settings.digits) + 10):
            integral = sum((as_mpf(sign) * result.integral for sign, result in results), mp.zero)
            limit = integral * 2 / mp.pi
            decimal = format_decimal(integral, spec.digits)
            limit_text = format_decimal(limit, spec.digits)
        worst = next((res.status for _, res in results if not res.converged), IterationStatus.CONVERGED)
        return JobResult(
            command="integrate",
            decimal=decimal,
            digits=spec.digits,
            method="landen",
            iterations=sum(result.iterations for _, result in results),
            L=limit_text,
            status=worst.value,
            details={"path": path, "runs": len(results)},
            exit_code=0 if worst is IterationStatus.CONVERGED else EXIT_SHORTFALL,
        )

    def _point(self, r: EvenRationalIntegrand, spec: JobSpec) -> ParameterPoint:
        with mp.workdps(max(spec.digits, MIN_ITERATION_DIGITS) + 10):
            return ParameterPoint.from_integrand(r)

    def _iterate(self, point: ParameterPoint, spec: JobSpec) -> IterationResult:
        return iterate(point, digits=spec.digits, tol=spec.tol, max_iter=spec.max_iter)

    def reduce(self, spec: JobSpec) -> JobResult:
        reduced = reduce_function(spec.integrand())
        return JobResult(
            command="reduce",
            method="reduction",
            details={
                "numerator": format_coefficients(reduced.numerator.coeffs),
                "denominator": format_coefficients(reduced.denominator.coeffs),
                "power": reduced.power,
            },
        )

    def landen(self, spec: JobSpec) -> JobResult:
        r = spec.integrand()
        result = self._iterate(self._point(r, spec), spec)
        with mp.workdps(max(spec.digits, self.settings.digits) + 10):
            decimal = format_decimal(result.integral, spec.digits)
            limit = format_decimal(result.limit_L, spec.digits)
            rows = [
                [str(n), *(mp.nstr(as_mpf(v), TABLE_DIGITS) for v in (*x.a, *x.b))]
                for n, x in enumerate(result.trajectory)
            ]
        details: dict[str, Any] = {"trajectory": rows, "table": format_trajectory(result, TABLE_DIGITS)}
        if spec.xlsx:
            details["xlsx"] = str(export_trajectory_workbook(result, spec.xlsx, title=f"Landen iteration of {r}"))
        return JobResult(
            command="landen",
            decimal=decimal,
            digits=spec.digits,
            method="landen",
            iterations=result.iterations,
            L=limit,
            status=result.status.value,
            details=details,
            exit_code=0 if result.converged else EXIT_SHORTFALL,
        )

    def classify(self, spec: JobSpec) -> JobResult:
        report = classify(spec.integrand(), spec.max_depth)
        details: dict[str, Any] = {"verdict": report.verdict.value, "path": [str(step) for step in report.path]}
        return JobResult(
            command="classify",
            closed_form=str(report.value) if report.closed_form else None,
            decimal=eval_expression(report.value, spec.digits) if report.closed_form else None,
            digits=spec.digits,
            method="classification",
            details=details,
        )

    def family(self, spec: JobSpec) -> JobResult:
        family = solve_symmetry_family(spec.family_p)
        shifted = family.shifted()
        return JobResult(
            command="family",
            method="exact-linear-solve",
            details={
                "p": family.p,
                "free": list(family.free),
                "bound": list(family.bound),
                "offset": format_coefficients(family.offset),
                "matrix": [format_coefficients(row) for row in family.matrix],
                "shifted_offset": format_coefficients(shifted.offset),
            },
        )

    def verify(self, spec: JobSpec) -> JobResult:
        rng = random.Random(spec.seed)
        checks: dict[str, tuple[int, int]] = {}

        def tally(name: str, outcomes: list[bool]) -> None:
            checks[name] = (sum(outcomes), len(outcomes) - sum(outcomes))

        tally("lemma_a1", [_holds(lemma_a1(k, n)) for n in range(1, 31) for k in range(1, n + 1)])
        tally("lemma_a3", [_holds(lemma_a3(k, n)) for n in range(1, 31) for k in range(0, n + 1)])
        tally("lemma_a2", [lemma_a2_identity(n) for n in range(26)])
        tally(
            "lemma_a4",
            [
                lemma_a4_identity(p, [Fraction(rng.randint(1, 50), rng.randint(1, 9)) for _ in range(p)])
                for p in range(1, 7)
                for _ in range(10)
            ],
        )
        wz = []
        for _ in range(50):
            n = rng.randint(2, 20)
            k = rng.randint(1, n - 1)
            wz.append(wz_certificate_holds(n, k, rng.randint(0, n + 1)))
        tally("wz_certificate", wz)
        tally("wallis_oracle", [self._wallis_matches_oracle(m) for m in range(4)])

        failures = sum(failed for _, failed in checks.values())
        if failures:
            logger.warning("verification reported %d failures", failures)
        return JobResult(
            command="verify",
            method="oracle",
            status="ok" if not failures else "failed",
            details={name: {"passed": passed, "failed": failed} for name, (passed, failed) in checks.items()},
            exit_code=0 if not failures else EXIT_VERIFY_FAILED,
        )

    def _wallis_matches_oracle(self, m: int) -> bool:
        digits = self.settings.oracle_digits
        r = EvenRationalIntegrand.from_lists([1], [1, 1], m + 1)
        closed = eval_expression(wallis(m), digits - 10)
        numeric = integrate_numeric(r, digits)
        with mp.workdps(digits):
            return abs(mp.mpf(closed) - numeric.value) < mp.mpf(10) ** (-(digits - 15))

