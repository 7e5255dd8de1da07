"""Exact integer linear algebra and polynomial helpers.

Polynomials are coefficient lists, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

Poly = list


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination.

    Every division in the recurrence is exact.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> Poly:
    """Integer-coefficient polynomial through the points, via Newton divided
    differences. Raises if the interpolant has non-integer coefficients."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form from the innermost term outward
    poly = [Fraction(0)] * n
    poly[0] = coef[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [Fraction(0)] * n
        for d in range(deg + 1):
            nxt[d + 1] += poly[d]
            nxt[d] -= poly[d] * xs[i]
        nxt[0] += coef[i]
        poly = nxt
        deg += 1
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolant is not integral")
        out.append(int(c))
    return out


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def taylor_shift(p: Sequence, a) -> list:
    """Coefficients of ``p(y + a)``."""
    n = len(p)
    out = [0] * n
    for i, c in enumerate(p):
        if c == 0:
            continue
        apow = 1
        for j in range(i, -1, -1):
            out[j] += c * comb(i, j) * apow
            apow *= a
    return out


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def sign_variations(p: Sequence) -> int:
    signs = [c > 0 for c in p if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def roots_above(p: Sequence, bound, strict: bool = True) -> int:
    """Number of roots (with multiplicity) greater than ``bound``, or at least
    ``bound`` when ``strict`` is False.

    Exact only for polynomials whose roots are all real, where Descartes'
    rule of signs counts positive roots exactly.
    """
    q = taylor_shift(trim(p), bound)
    zeros = 0
    while zeros < len(q) and q[zeros] == 0:
        zeros += 1
    count = sign_variations(q[zeros:])
    return count if strict else count + zeros


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = trim(a)
    return q, a


def poly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd with rational coefficients."""
    a, b = trim(a), trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def poly_derivative(p: Sequence) -> list:
    return [i * c for i, c in enumerate(p)][1:]
