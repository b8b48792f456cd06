"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from core.errors import DomainViolation

Matrix = list[list[Fraction]]


@dataclass(frozen=True, slots=True)
class AffineForm:
    """constant + sum(coeffs[i] * x_i)."""

    constant: Fraction
    coeffs: tuple[Fraction, ...]

    @classmethod
    def zero(cls, size: int) -> "AffineForm":
        return cls(Fraction(0), (Fraction(0),) * size)

    @classmethod
    def variable(cls, index: int, size: int) -> "AffineForm":
        coeffs = [Fraction(0)] * size
        coeffs[index] = Fraction(1)
        return cls(Fraction(0), tuple(coeffs))

    @classmethod
    def constant_form(cls, value: Fraction | int, size: int) -> "AffineForm":
        return cls(Fraction(value), (Fraction(0),) * size)

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(self.constant + other.constant, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        return self + other.scale(-1)

    def scale(self, factor: Fraction | int) -> "AffineForm":
        return AffineForm(self.constant * factor, tuple(c * factor for c in self.coeffs))

    def evaluate(self, values: Sequence[Fraction | int]) -> Fraction:
        return self.constant + sum((c * v for c, v in zip(self.coeffs, values)), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return self.constant == 0 and not any(self.coeffs)


def combine(weights: Sequence[Fraction | int], forms: Sequence[AffineForm]) -> AffineForm:
    total = AffineForm.zero(len(forms[0].coeffs))
    for weight, form in zip(weights, forms):
        if weight:
            total = total + form.scale(weight)
    return total


def row_echelon(m: Matrix, t: Matrix | None = None) -> list[int]:
    """Reduce ``m`` in place to row echelon form, applying the same row
    operations to the right-hand sides ``t``. Returns the free columns."""
    free_vars = []
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            free_vars.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            if t is not None:
                t[piv_r], t[i_row] = t[i_row], t[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr == 0:
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                m[r][c] -= m[piv_r][c] * frp
            if t is not None:
                t[r] = [x - y * frp for x, y in zip(t[r], t[piv_r])]
        piv_r += 1
        if piv_r == n_rows:
            free_vars.extend(range(piv_c + 1, n_cols))
            break
    return free_vars


def back_substitution(m: Matrix, t: Matrix, free_vars: Sequence[int]) -> Matrix | None:
    """Solutions for each right-hand-side column with free variables set to
    zero; None when the system is inconsistent."""
    n_rows = len(m)
    n_cols = len(m[0])
    width = len(t[0]) if t else 0
    rank = n_cols - len(free_vars)
    for r in range(rank, n_rows):
        if any(t[r]):
            return None
    piv_cols = [c for c in range(n_cols) if c not in set(free_vars)]
    sol = [[Fraction(0)] * width for _ in range(n_cols)]
    for r in range(len(piv_cols) - 1, -1, -1):
        piv_c = piv_cols[r]
        for k in range(width):
            s = t[r][k]
            for c in range(piv_c + 1, n_cols):
                s -= m[r][c] * sol[c][k]
            sol[piv_c][k] = s / m[r][piv_c]
    return sol


def solve(a: Sequence[Sequence[Fraction | int]], b: Sequence[Sequence[Fraction | int]]) -> Matrix:
    """Unique solution X of A X = B; raises DomainViolation when A is singular."""
    m = [[Fraction(v) for v in row] for row in a]
    t = [[Fraction(v) for v in row] for row in b]
    free = row_echelon(m, t)
    if free:
        raise DomainViolation(f"linear system is singular ({len(free)} free columns)")
    sol = back_substitution(m, t, free)
    if sol is None:
        raise DomainViolation("linear system is inconsistent")
    return sol


def solve_affine(
    equations: Sequence[AffineForm], unknowns: Sequence[int], free: Sequence[int]
) -> tuple[tuple[Fraction, ...], tuple[tuple[Fraction, ...], ...]]:
    """Solve equations == 0 for the ``unknowns`` as offset + matrix @ free."""
    a = [[eq.coeffs[i] for i in unknowns] for eq in equations]
    b = [[-eq.constant, *(-eq.coeffs[i] for i in free)] for eq in equations]
    sol = solve(a, b)
    offset = tuple(row[0] for row in sol)
    matrix = tuple(tuple(row[1:]) for row in sol)
    return offset, matrix
