from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence, TextIO

from core.errors import CoefficientParseError, DomainViolation, NumericShortfall
from core.models import JobResult, JobSpec
from core.parsing import parse_coefficients, parse_rational
from core.service import IntegrationService
from core.settings import load_settings

logger = logging.getLogger(__name__)

COMMANDS = ("integrate", "reduce", "landen", "classify", "family", "verify")
EXIT_PARSE = 1
EXIT_DOMAIN = 2
EXIT_SHORTFALL = 3


def build_parser() -> argparse.ArgumentParser:
    settings = load_settings()
    ap = argparse.ArgumentParser(
        prog="landen",
        description="Exact and Landen-iterated integrals of even rational functions over [0, inf).",
    )
    ap.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging.")
    ap.add_argument("--journal", type=Path, default=settings.journal, help="SQLite file recording every job.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        if name != "family" and name != "verify":
            cmd.add_argument("--num", default="1", help="Numerator coefficients, ascending powers of z^2.")
            cmd.add_argument("--den", required=True, help="Denominator coefficients, ascending powers of z^2.")
            cmd.add_argument("--power", type=int, default=1, help="Denominator exponent m+1.")
        cmd.add_argument("--digits", type=int, default=settings.digits, help="Significant digits of decimal output.")
        cmd.add_argument("--format", choices=["json", "table"], default="json", dest="output_format")
        if name in ("integrate", "landen"):
            cmd.add_argument("--tol", default=None, help="Convergence tolerance of the Landen iteration.")
            cmd.add_argument("--max-iter", type=int, default=settings.max_iter)
        if name in ("integrate", "classify"):
            cmd.add_argument("--max-depth", type=int, default=settings.max_depth)
        if name == "landen":
            cmd.add_argument("--xlsx", type=Path, default=None, help="Also write the trajectory to a workbook.")
        if name == "family":
            cmd.add_argument("--p", type=int, default=4, dest="family_p", help="Half-degree 2p of the denominator.")
        if name == "verify":
            cmd.add_argument("--seed", type=int, default=0, help="Seed of the randomized suites.")
    return ap


def spec_from_args(args: argparse.Namespace) -> JobSpec:
    spec = JobSpec(command=args.command, digits=args.digits, output_format=args.output_format)
    if hasattr(args, "den"):
        spec.numerator = parse_coefficients(args.num)
        spec.denominator = parse_coefficients(args.den)
        spec.power = args.power
    if getattr(args, "tol", None) is not None:
        spec.tol = parse_rational(args.tol)
    for name in ("max_iter", "max_depth", "family_p", "xlsx", "seed"):
        if hasattr(args, name):
            setattr(spec, name, getattr(args, name))
    return spec


def render_table(result: JobResult) -> str:
    lines = [f"{result.command}: {result.status}"]
    if result.closed_form:
        lines.append(f"closed form: {result.closed_form}")
    if result.decimal:
        lines.append(f"value:       {result.decimal}")
    if result.L:
        lines.append(f"L:           {result.L}")
    if result.iterations is not None:
        lines.append(f"iterations:  {result.iterations}")
    if result.method:
        lines.append(f"method:      {result.method}")
    table = result.details.get("table")
    if table:
        lines.extend(["", table])
    for key, value in result.details.items():
        if key in ("table", "trajectory"):
            continue
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def emit(result: JobResult, output_format: str, stream: TextIO) -> None:
    if output_format == "table":
        print(render_table(result), file=stream)
    else:
        record = result.to_record()
        record["details"] = {k: v for k, v in record["details"].items() if k != "table"}
        print(json.dumps(record, indent=2), file=stream)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None, stream: TextIO | None = None) -> int:
    stream = stream or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        spec = spec_from_args(args)
    except CoefficientParseError as exc:
        logger.error("%s", exc)
        return EXIT_PARSE

    service = IntegrationService(journal=args.journal)
    try:
        result = service.run(spec)
    except CoefficientParseError as exc:
        logger.error("%s", exc)
        return EXIT_PARSE
    except DomainViolation as exc:
        logger.error("%s", exc)
        return EXIT_DOMAIN
    except NumericShortfall as exc:
        logger.error("%s", exc)
        return EXIT_SHORTFALL
    finally:
        service.close()

    emit(result, spec.output_format, stream)
    return result.exit_code
