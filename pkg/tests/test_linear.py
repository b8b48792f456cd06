from fractions import Fraction

import pytest

from core.errors import DomainViolation
from core.linear import AffineForm, back_substitution, combine, row_echelon, solve, solve_affine
from core.partial_fractions import ONE_PLUS_T, find_unit_root_power, split_two_factors
from core.polynomial import EvenPolynomial


def test_solve_small_system():
    sol = solve([[2, 1], [1, 3]], [[3], [5]])
    assert sol == [[Fraction(4, 5)], [Fraction(7, 5)]]


def test_solve_several_right_hand_sides():
    sol = solve([[1, 0], [0, 4]], [[1, 2], [8, 4]])
    assert sol == [[1, 2], [2, 1]]


def test_singular_system_is_rejected():
    with pytest.raises(DomainViolation):
        solve([[1, 2], [2, 4]], [[1], [2]])


def test_row_echelon_reports_free_columns_and_inconsistency():
    m = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    t = [[Fraction(1)], [Fraction(3)]]
    free = row_echelon(m, t)
    assert free == [1]
    assert back_substitution(m, t, free) is None


def test_affine_forms():
    x0 = AffineForm.variable(0, 2)
    x1 = AffineForm.variable(1, 2)
    form = combine([2, 3], [x0, x1]) + AffineForm.constant_form(1, 2)
    assert form.evaluate([1, 1]) == 6
    assert (form - form).is_zero
    assert form.scale(Fraction(1, 2)).constant == Fraction(1, 2)


def test_solve_affine_expresses_unknowns_through_free_values():
    # x0 + x1 - x2 = 0 and x0 - x1 - 1 = 0, with x2 free
    eq1 = AffineForm(Fraction(0), (Fraction(1), Fraction(1), Fraction(-1)))
    eq2 = AffineForm(Fraction(-1), (Fraction(1), Fraction(-1), Fraction(0)))
    offset, matrix = solve_affine([eq1, eq2], [0, 1], [2])
    assert offset == (Fraction(1, 2), Fraction(-1, 2))
    assert matrix == ((Fraction(1, 2),), (Fraction(1, 2),))


def test_split_two_factors_recombines():
    u = EvenPolynomial.of(1, 1)
    v = EvenPolynomial.of(2, 3, 1)
    p = EvenPolynomial.of(5, 0, 7)
    # (1 + t) and (1 + t)(2 + t) share a root
    with pytest.raises(DomainViolation):
        split_two_factors(p, u, v)
    v = EvenPolynomial.of(4, 0, 1)
    a, b = split_two_factors(p, u, v)
    assert a * v + b * u == p
    assert a.degree < u.degree and b.degree < v.degree


def test_split_rejects_large_numerators():
    with pytest.raises(ValueError):
        split_two_factors(EvenPolynomial.of(0, 0, 1), EvenPolynomial.of(1, 1), EvenPolynomial.of(2, 1))


def test_find_unit_root_power():
    q = ONE_PLUS_T ** 3 * EvenPolynomial.of(4, 4, 1)
    r, rest = find_unit_root_power(q)
    assert r == 3
    assert rest == EvenPolynomial.of(4, 4, 1)
    assert find_unit_root_power(EvenPolynomial.of(1, 4, 1)) == (0, EvenPolynomial.of(1, 4, 1))
