from __future__ import annotations

import re
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Any

from mpmath import mp

from core.errors import CoefficientParseError

RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
DECIMAL_RE = re.compile(r"^[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?$")
SEPARATOR_RE = re.compile(r"[,;\s]+")


def parse_rational(text: str) -> Fraction:
    value = text.strip()
    match = RATIONAL_RE.match(value)
    if match:
        denominator = int(match.group(2) or 1)
        if denominator == 0:
            raise CoefficientParseError(f"zero denominator in {text!r}")
        return Fraction(int(match.group(1)), denominator)
    if DECIMAL_RE.match(value):
        return Fraction(value)
    raise CoefficientParseError(f"not a rational number: {text!r}")


def parse_coefficients(text: str | None) -> tuple[Fraction, ...]:
    """Ascending z^2 coefficients from "1, 4, 1", "[0 1]" or "1/2;3"."""
    if text is None:
        return ()
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    tokens = [token for token in SEPARATOR_RE.split(body) if token]
    if not tokens:
        raise CoefficientParseError(f"no coefficients in {text!r}")
    return tuple(parse_rational(token) for token in tokens)


def as_mpf(value: Any):
    """mpf at the current precision; Fractions go through numerator / denominator."""
    if isinstance(value, mp.mpf):
        return value
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


def format_decimal(value: Any, digits: int) -> str:
    """``digits`` significant digits, rounded half-even, in positional notation."""
    value = as_mpf(value)
    text = mp.nstr(value, digits + 8)
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        rounded = +Decimal(text)
        if rounded:
            rounded = rounded.quantize(Decimal(1).scaleb(rounded.adjusted() - digits + 1))
    return format(rounded, "f")


def format_coefficients(coeffs: tuple[Fraction, ...]) -> list[str]:
    return [str(c) for c in coeffs]
