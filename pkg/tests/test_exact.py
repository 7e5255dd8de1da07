from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from lapspec.exact import (
    bareiss_det,
    interpolate,
    poly_divmod,
    poly_eval,
    poly_gcd,
    roots_above,
    taylor_shift,
)

X = sympy.Symbol("x")

square = st.integers(0, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square)
def test_bareiss_matches_sympy(mat):
    expected = sympy.Matrix(mat).det() if mat else 1
    assert bareiss_det(mat) == expected


def test_bareiss_needs_pivoting():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [0, 5]]) == 0
    assert bareiss_det([[0, 2, 1], [0, 1, 3], [4, 0, 0]]) == 4 * (2 * 3 - 1)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=8))
def test_interpolation_recovers_polynomial(coeffs):
    xs = list(range(len(coeffs)))
    ys = [poly_eval(coeffs, x) for x in xs]
    assert interpolate(xs, ys) == coeffs


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=7), st.integers(-5, 5))
def test_taylor_shift_matches_sympy(coeffs, a):
    p = sum(c * X**i for i, c in enumerate(coeffs))
    shifted = sympy.Poly(sympy.expand(p.subs(X, X + a)), X).all_coeffs()[::-1] if any(coeffs) else [0]
    got = taylor_shift(coeffs, a)
    assert got[: len(shifted)] == [int(c) for c in shifted]
    assert all(c == 0 for c in got[len(shifted):])


@given(st.lists(st.integers(-3, 5), min_size=1, max_size=6), st.integers(-4, 6))
def test_roots_above_on_real_rooted(roots, bound):
    p = sympy.Poly(sympy.prod([X - r for r in roots]), X)
    coeffs = [int(c) for c in p.all_coeffs()[::-1]]
    assert roots_above(coeffs, bound) == sum(1 for r in roots if r > bound)
    assert roots_above(coeffs, bound, strict=False) == sum(1 for r in roots if r >= bound)
    half = Fraction(2 * bound + 1, 2)
    assert roots_above(coeffs, half) == sum(1 for r in roots if r > half)


def test_gcd_and_divmod():
    a = [6, -5, 1]  # (x-2)(x-3)
    b = [-2, 1]
    q, r = poly_divmod(a, b)
    assert q == [-3, 1] and r == []
    assert poly_gcd([-6, 11, -6, 1], [6, -5, 1]) == [6, -5, 1]
    assert poly_gcd([1, 1], [2]) == [1]
