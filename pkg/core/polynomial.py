from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from core.errors import DomainViolation

Rational = Fraction | int


def binomial(n: int, k: int, extended: bool = False) -> int:
    """Binomial coefficient with C(n, k) = 0 for k < 0 or k > n >= 0.

    A negative upper index gives C(-1, 0) = 1 and zero otherwise unless
    ``extended`` asks for the polynomial extension (-1)^k C(k - n - 1, k).
    """
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    if extended:
        return (-1) ** k * comb(k - n - 1, k)
    return 1 if k == 0 else 0


def _as_fraction(value: Rational | str) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def _convolve(f: Sequence[Fraction], g: Sequence[Fraction]) -> list[Fraction]:
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi == 0:
            continue
        for j, gj in enumerate(g):
            out[i + j] += fi * gj
    return out


@dataclass(frozen=True, slots=True)
class EvenPolynomial:
    """Polynomial in z^2; ``coeffs[k]`` is the coefficient of z^(2k)."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim([_as_fraction(c) for c in self.coeffs]))

    @classmethod
    def of(cls, *coeffs: Rational | str) -> "EvenPolynomial":
        return cls(tuple(_as_fraction(c) for c in coeffs))

    @classmethod
    def constant(cls, value: Rational) -> "EvenPolynomial":
        return cls((_as_fraction(value),))

    @classmethod
    def monomial(cls, k: int, value: Rational = 1) -> "EvenPolynomial":
        return cls(tuple([Fraction(0)] * k + [_as_fraction(value)]))

    @classmethod
    def one_plus_z2_power(cls, k: int) -> "EvenPolynomial":
        return cls(tuple(Fraction(comb(k, i)) for i in range(k + 1)))

    @property
    def degree(self) -> int:
        """Half-degree p (degree in z^2); -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c != 0]

    def __add__(self, other: "EvenPolynomial") -> "EvenPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return EvenPolynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __sub__(self, other: "EvenPolynomial") -> "EvenPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "EvenPolynomial") -> "EvenPolynomial":
        return poly_mul(self, other)

    def __pow__(self, exponent: int) -> "EvenPolynomial":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = EvenPolynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Rational) -> "EvenPolynomial":
        factor = _as_fraction(factor)
        return EvenPolynomial(tuple(c * factor for c in self.coeffs))

    def shift(self, k: int) -> "EvenPolynomial":
        """Multiply by z^(2k)."""
        if self.is_zero:
            return self
        return EvenPolynomial(tuple([Fraction(0)] * k) + self.coeffs)

    def at_t(self, t: Rational) -> Fraction:
        t = _as_fraction(t)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * t + c
        return total

    def __call__(self, z: Rational) -> Fraction:
        z = _as_fraction(z)
        return self.at_t(z * z)

    def reflect(self) -> "EvenPolynomial":
        return reflect(self)

    def is_symmetric(self) -> bool:
        return is_symmetric(self)

    def divmod(self, divisor: "EvenPolynomial") -> tuple["EvenPolynomial", "EvenPolynomial"]:
        quotient, remainder = _divmod(self.coeffs, divisor.coeffs)
        return EvenPolynomial(quotient), EvenPolynomial(remainder)

    def exact_div(self, divisor: "EvenPolynomial") -> "EvenPolynomial | None":
        quotient, remainder = self.divmod(divisor)
        return quotient if remainder.is_zero else None

    def positive_on_half_line(self) -> bool:
        """True when Q(t) > 0 for every t >= 0 (t = z^2)."""
        if self.is_zero or self.constant_term <= 0 or self.leading <= 0:
            return False
        if all(c >= 0 for c in self.coeffs):
            return True
        return count_roots_on_half_line(self.coeffs) == 0

    def as_tuple(self) -> tuple[Fraction, ...]:
        return self.coeffs

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z^{2 * k}")
            else:
                parts.append(f"{c}*z^{2 * k}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_mul(f: EvenPolynomial, g: EvenPolynomial) -> EvenPolynomial:
    return EvenPolynomial(tuple(_convolve(f.coeffs, g.coeffs)))


def reflect(q: EvenPolynomial) -> EvenPolynomial:
    """z^(2p) q(1/z): the coefficient sequence reversed."""
    if q.is_zero:
        raise DomainViolation("cannot reflect the zero polynomial")
    return EvenPolynomial(tuple(reversed(q.coeffs)))


def is_symmetric(q: EvenPolynomial) -> bool:
    return q.coeffs == tuple(reversed(q.coeffs))


def poly_sum(polys: Iterable[EvenPolynomial]) -> EvenPolynomial:
    total = EvenPolynomial()
    for poly in polys:
        total = total + poly
    return total


def _divmod(
    num: Sequence[Fraction], den: Sequence[Fraction]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(_trim(num))
    if len(rem) < len(den):
        return (), tuple(rem)
    quot = [Fraction(0)] * (len(rem) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(quot) - 1, -1, -1):
        factor = rem[shift + len(den) - 1] / lead
        quot[shift] = factor
        if factor:
            for i, d in enumerate(den):
                rem[shift + i] -= factor * d
    return _trim(quot), _trim(rem[: len(den) - 1])


def _derivative(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return _trim([k * c for k, c in enumerate(coeffs)][1:])


def _sign_changes(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_on_half_line(coeffs: Sequence[Fraction]) -> int:
    """Number of distinct real roots of the polynomial in t on (0, inf).

    Sturm sequence evaluated at t = 0 and t -> inf; the polynomial must not
    vanish at t = 0.
    """
    chain = [_trim(coeffs), _derivative(coeffs)]
    while chain[-1]:
        _, rem = _divmod(chain[-2], chain[-1])
        chain.append(tuple(-c for c in rem))
    chain = [c for c in chain if c]
    at_zero = _sign_changes(c[0] for c in chain)
    at_infinity = _sign_changes(c[-1] for c in chain)
    return at_zero - at_infinity
