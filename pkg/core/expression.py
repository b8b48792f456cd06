"""Exact closed-form values built from rationals, pi and rational powers.

Construction goes through ``const``, ``add``, ``mul`` and ``power`` (or the
operators on ``AlgebraicExpression``), which keep trees in a canonical form:
sums and products are flattened, rational constants are folded, powers of
rationals are split into a rational part and a reduced surd, and equal
terms are collected.  No radical denesting is attempted.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from mpmath import iv, mp

from core.errors import NegativeBaseFractionalPower, PrecisionNotReached
from core.parsing import format_decimal

MAX_PRECISION_DOUBLINGS = 10
TRIAL_DIVISION_LIMIT = 100_000


class AlgebraicExpression:
    __slots__ = ()

    def __add__(self, other: object) -> "AlgebraicExpression":
        return add(self, _coerce(other))

    def __radd__(self, other: object) -> "AlgebraicExpression":
        return add(_coerce(other), self)

    def __sub__(self, other: object) -> "AlgebraicExpression":
        return add(self, mul(const(-1), _coerce(other)))

    def __rsub__(self, other: object) -> "AlgebraicExpression":
        return add(_coerce(other), mul(const(-1), self))

    def __mul__(self, other: object) -> "AlgebraicExpression":
        return mul(self, _coerce(other))

    def __rmul__(self, other: object) -> "AlgebraicExpression":
        return mul(_coerce(other), self)

    def __truediv__(self, other: object) -> "AlgebraicExpression":
        return mul(self, power(_coerce(other), -1))

    def __rtruediv__(self, other: object) -> "AlgebraicExpression":
        return mul(_coerce(other), power(self, -1))

    def __neg__(self) -> "AlgebraicExpression":
        return mul(const(-1), self)

    def __pow__(self, exponent: Fraction | int) -> "AlgebraicExpression":
        return power(self, exponent)

    def __str__(self) -> str:
        return to_string(self)

    def evaluate(self, digits: int) -> str:
        return eval_expression(self, digits)


@dataclass(frozen=True, slots=True)
class RationalConst(AlgebraicExpression):
    value: Fraction


@dataclass(frozen=True, slots=True)
class Pi(AlgebraicExpression):
    pass


@dataclass(frozen=True, slots=True)
class Sum(AlgebraicExpression):
    terms: tuple[AlgebraicExpression, ...]


@dataclass(frozen=True, slots=True)
class Product(AlgebraicExpression):
    factors: tuple[AlgebraicExpression, ...]


@dataclass(frozen=True, slots=True)
class Power(AlgebraicExpression):
    base: AlgebraicExpression
    exponent: Fraction


PI = Pi()
ZERO = RationalConst(Fraction(0))
ONE = RationalConst(Fraction(1))


def const(value: Fraction | int | str) -> RationalConst:
    return RationalConst(Fraction(value))


def _coerce(value: object) -> AlgebraicExpression:
    if isinstance(value, AlgebraicExpression):
        return value
    if isinstance(value, (int, Fraction)):
        return const(value)
    raise TypeError(f"cannot use {type(value).__name__} in an algebraic expression")


def integer_root(n: int, k: int) -> int:
    """Largest integer r >= 0 with r**k <= n."""
    if n < 0:
        raise ValueError("integer_root of a negative number")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def exact_root(value: Fraction, k: int) -> Fraction | None:
    """The rational k-th root of a nonnegative rational, when there is one."""
    if value < 0:
        return None
    num = integer_root(value.numerator, k)
    den = integer_root(value.denominator, k)
    if num ** k == value.numerator and den ** k == value.denominator:
        return Fraction(num, den)
    return None


def _extract_power(n: int, q: int) -> tuple[int, int]:
    """Split n = a**q * s with the q-th-power part pulled out of s."""
    outside, inside = 1, 1
    remaining = n
    p = 2
    while p * p <= remaining and p <= TRIAL_DIVISION_LIMIT:
        count = 0
        while remaining % p == 0:
            remaining //= p
            count += 1
        if count:
            outside *= p ** (count // q)
            inside *= p ** (count % q)
        p += 1 if p == 2 else 2
    root = integer_root(remaining, q)
    if root ** q == remaining:
        outside *= root
    else:
        inside *= remaining
    return outside, inside


def _split_coefficient(e: AlgebraicExpression) -> tuple[Fraction, AlgebraicExpression | None]:
    if isinstance(e, RationalConst):
        return e.value, None
    if isinstance(e, Product) and isinstance(e.factors[0], RationalConst):
        rest = e.factors[1:]
        return e.factors[0].value, rest[0] if len(rest) == 1 else Product(rest)
    return Fraction(1), e


def _flatten(items: tuple[AlgebraicExpression, ...], kind: type) -> list[AlgebraicExpression]:
    out: list[AlgebraicExpression] = []
    for item in items:
        if isinstance(item, kind):
            out.extend(item.terms if kind is Sum else item.factors)
        else:
            out.append(item)
    return out


def add(*items: AlgebraicExpression) -> AlgebraicExpression:
    constant = Fraction(0)
    collected: dict[AlgebraicExpression, Fraction] = {}
    for item in _flatten(items, Sum):
        coefficient, key = _split_coefficient(item)
        if key is None:
            constant += coefficient
        else:
            collected[key] = collected.get(key, Fraction(0)) + coefficient
    terms = [mul(const(c), key) for key, c in collected.items() if c != 0]
    terms.sort(key=_sort_key)
    if constant != 0:
        terms.insert(0, const(constant))
    if not terms:
        return ZERO
    if len(terms) == 1:
        return terms[0]
    return Sum(tuple(terms))


def _is_nonnegative(e: AlgebraicExpression) -> bool:
    if isinstance(e, RationalConst):
        return e.value >= 0
    if isinstance(e, Pi):
        return True
    if isinstance(e, Power):
        return e.exponent.denominator != 1 or _is_nonnegative(e.base)
    if isinstance(e, Product):
        return all(_is_nonnegative(f) for f in e.factors)
    if isinstance(e, Sum):
        return all(_is_nonnegative(t) for t in e.terms)
    return False


def mul(*items: AlgebraicExpression) -> AlgebraicExpression:
    coefficient = Fraction(1)
    pi_exponent = Fraction(0)
    surds: dict[Fraction, Fraction] = {}
    powers: dict[AlgebraicExpression, Fraction] = {}

    def absorb_rational(r: Fraction, e: Fraction) -> None:
        nonlocal coefficient
        if r < 0:
            powers[RationalConst(r)] = powers.get(RationalConst(r), Fraction(0)) + e
            return
        if r == 0:
            if e < 0:
                raise ZeroDivisionError("zero raised to a negative power")
            coefficient = Fraction(0)
            return
        whole = int(e)
        coefficient *= r ** whole
        part = e - whole
        if part:
            surds[part] = surds.get(part, Fraction(1)) * r

    for item in _flatten(items, Product):
        if isinstance(item, RationalConst):
            coefficient *= item.value
        elif isinstance(item, Pi):
            pi_exponent += 1
        elif isinstance(item, Power) and isinstance(item.base, Pi):
            pi_exponent += item.exponent
        elif isinstance(item, Power) and isinstance(item.base, RationalConst):
            absorb_rational(item.base.value, item.exponent)
        elif isinstance(item, Power):
            powers[item.base] = powers.get(item.base, Fraction(0)) + item.exponent
        else:
            powers[item] = powers.get(item, Fraction(0)) + 1

    if coefficient == 0:
        return ZERO

    # pair r^f with s^(f-1) so each fractional part appears once
    for part in sorted(p for p in surds if p > 0):
        partner = part - 1
        if partner in surds:
            base = surds.pop(partner)
            coefficient /= base
            surds[part] *= base

    factors: list[AlgebraicExpression] = []
    for part in sorted(surds):
        base = surds[part]
        q = part.denominator
        u = part.numerator
        out_num, in_num = _extract_power(base.numerator, q)
        out_den, in_den = _extract_power(base.denominator, q)
        coefficient *= Fraction(out_num, out_den) ** u
        if in_num == 1 and in_den == 1:
            continue
        if in_num == 1:
            factors.append(Power(const(in_den), -part))
        elif in_den == 1:
            factors.append(Power(const(in_num), part))
        else:
            factors.append(Power(const(Fraction(in_num, in_den)), part))
    for base, exponent in powers.items():
        if exponent == 0:
            continue
        factors.append(base if exponent == 1 else Power(base, exponent))

    factors.sort(key=_sort_key)
    if pi_exponent != 0:
        factors.insert(0, PI if pi_exponent == 1 else Power(PI, pi_exponent))
    if coefficient != 1 or not factors:
        factors.insert(0, const(coefficient))
    if len(factors) == 1:
        return factors[0]
    return Product(tuple(factors))


def power(base: AlgebraicExpression, exponent: Fraction | int) -> AlgebraicExpression:
    exponent = Fraction(exponent)
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, RationalConst):
        if exponent.denominator == 1:
            return const(base.value ** int(exponent))
        return mul(Power(base, exponent))
    if isinstance(base, Pi):
        return mul(Power(base, exponent))
    if isinstance(base, Power):
        if exponent.denominator == 1 or _is_nonnegative(base.base):
            return power(base.base, base.exponent * exponent)
        return Power(base, exponent)
    if isinstance(base, Product):
        if exponent.denominator == 1:
            return mul(*(power(f, exponent) for f in base.factors))
        safe = [f for f in base.factors if _is_nonnegative(f)]
        rest = [f for f in base.factors if not _is_nonnegative(f)]
        pieces = [power(f, exponent) for f in safe]
        if rest:
            pieces.append(Power(mul(*rest), exponent))
        return mul(*pieces)
    return mul(Power(base, exponent))


def sqrt(value: AlgebraicExpression | Fraction | int) -> AlgebraicExpression:
    return power(_coerce(value), Fraction(1, 2))


def _sort_key(e: AlgebraicExpression) -> tuple[int, str]:
    rank = 0 if isinstance(e, Power) and isinstance(e.base, RationalConst) else 1
    return rank, to_string(e)


# -- printing ---------------------------------------------------------------


def _atom(e: AlgebraicExpression) -> str:
    if isinstance(e, RationalConst):
        v = e.value
        return str(v) if v.denominator == 1 and v >= 0 else f"({v})"
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Power) and e.exponent == Fraction(1, 2):
        return to_string(e)
    return f"({to_string(e)})"


def _format_power(base: AlgebraicExpression, exponent: Fraction) -> str:
    if exponent == 1:
        return _atom(base) if isinstance(base, (Sum, Product)) else to_string(base)
    if exponent == Fraction(1, 2):
        return f"sqrt({to_string(base)})"
    if exponent.denominator == 1:
        return f"{_atom(base)}**{exponent}"
    return f"{_atom(base)}**({exponent})"


def to_string(e: AlgebraicExpression) -> str:
    if isinstance(e, RationalConst):
        return str(e.value)
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Sum):
        text = to_string(e.terms[0])
        for term in e.terms[1:]:
            piece = to_string(term)
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text
    factors = e.factors if isinstance(e, Product) else (e,)
    coefficient = Fraction(1)
    if isinstance(factors[0], RationalConst):
        coefficient = factors[0].value
        factors = factors[1:]
    numerator: list[str] = []
    denominator: list[str] = []
    for factor in factors:
        if isinstance(factor, Power) and factor.exponent < 0:
            denominator.append(_format_power(factor.base, -factor.exponent))
        elif isinstance(factor, Power):
            numerator.append(_format_power(factor.base, factor.exponent))
        else:
            numerator.append(_atom(factor))
    if abs(coefficient.numerator) != 1 or not numerator:
        numerator.insert(0, str(abs(coefficient.numerator)))
    if coefficient.denominator != 1:
        denominator.insert(0, str(coefficient.denominator))
    text = "*".join(numerator)
    if len(denominator) == 1:
        text += f"/{denominator[0]}"
    elif denominator:
        text += "/(" + "*".join(denominator) + ")"
    return f"-{text}" if coefficient < 0 else text


# -- evaluation -------------------------------------------------------------


class _NeedMorePrecision(Exception):
    pass


@contextmanager
def interval_precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _interval(e: AlgebraicExpression):
    if isinstance(e, RationalConst):
        return iv.mpf(e.value.numerator) / e.value.denominator
    if isinstance(e, Pi):
        return iv.pi
    if isinstance(e, Sum):
        total = iv.mpf(0)
        for term in e.terms:
            total += _interval(term)
        return total
    if isinstance(e, Product):
        total = iv.mpf(1)
        for factor in e.factors:
            total *= _interval(factor)
        return total
    base = _interval(e.base)
    exponent = e.exponent
    if exponent.denominator == 1:
        n = int(exponent)
        if n < 0:
            low, high = _endpoints(base)
            if low <= 0 <= high:
                raise _NeedMorePrecision
            return 1 / base ** (-n)
        return base ** n
    low, high = _endpoints(base)
    if high < 0 or (isinstance(e.base, RationalConst) and e.base.value < 0):
        raise NegativeBaseFractionalPower(e)
    if low <= 0:
        if isinstance(e.base, RationalConst) and e.base.value == 0 and exponent > 0:
            return iv.mpf(0)
        raise _NeedMorePrecision
    if exponent.denominator == 2:
        root = iv.sqrt(base)
        n = exponent.numerator
        return root ** n if n > 0 else 1 / root ** (-n)
    return iv.exp(iv.log(base) * (iv.mpf(exponent.numerator) / exponent.denominator))


def _endpoints(x) -> tuple:
    low, high = x._mpi_
    return mp.make_mpf(low), mp.make_mpf(high)


def eval_expression(e: AlgebraicExpression, digits: int) -> str:
    """Decimal string with ``digits`` significant digits, rounded half-even.

    Interval arithmetic bounds the error; the working precision is doubled
    until the enclosure is narrow enough.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    bits = int(digits * 3.33) + 32
    mid = radius = None
    for _ in range(MAX_PRECISION_DOUBLINGS):
        with interval_precision(bits):
            try:
                enclosure = _interval(e)
            except _NeedMorePrecision:
                bits *= 2
                continue
        with mp.workprec(bits + 16):
            low, high = _endpoints(enclosure)
            mid = (low + high) / 2
            radius = (high - low) / 2
            if radius == 0 or (mid != 0 and radius <= abs(mid) * mp.mpf(10) ** (-(digits + 3))):
                return format_decimal(mid, digits)
            if low <= 0 <= high and radius <= mp.mpf(10) ** (-(4 * digits + 10)):
                return "0"
        bits *= 2
    raise PrecisionNotReached(mid, radius, digits)


def to_mpf(e: AlgebraicExpression, digits: int):
    """mpmath value of ``e`` good to ``digits`` significant digits."""
    return mp.mpf(eval_expression(e, digits + 5))
