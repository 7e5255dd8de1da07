"""Laplacian characteristic polynomials, spectra, and the classical
spectrum-derived invariants and eigenvalue bounds."""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exact import bareiss_det, interpolate, roots_above
from .graph import Graph, complement, components, count_subgraphs, degree_sequence, is_connected
from .graph6 import to_graph6
from .jacobi import jacobi_eigvalsh

TAU_NUM = 1e-10  # absolute accuracy asserted for individual eigenvalues
TAU_CHECK = 1e-8  # cross-graph / cross-matrix comparisons
TAU_MULT = 1e-6  # grouping eigenvalues into multiplicities

# l_i (closed forms for the top coefficients) equals L_COEFF_SIGN[i] times the
# coefficient of x^(n-i) in det(xI - L) with L = D - A.
# Confirmed on every graph with n <= 3 by calibrate_coefficient_signs().
L_COEFF_SIGN = (1, 1, 1, 1)


class SpectralError(ValueError):
    pass


@dataclass(frozen=True)
class CharPoly:
    """Exact ``det(xI - L)``; ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def top(self, i: int) -> int:
        """Coefficient of ``x**(n - i)``."""
        return self.coeffs[self.degree - i] if i <= self.degree else 0

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def digest(self) -> str:
        return hashlib.blake2b(self.serialize().encode(), digest_size=16).hexdigest()

    def zero_multiplicity(self) -> int:
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return k

    def roots_above(self, bound, strict: bool = True) -> int:
        return roots_above(self.coeffs, bound, strict)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]  # non-increasing
    tau_mult: float = TAU_MULT

    def mu(self, i: int) -> float:
        """1-based access, ``mu(1)`` is the largest eigenvalue."""
        return self.values[i - 1]

    def multiplicities(self) -> list[tuple[float, int]]:
        groups: list[list[float]] = []
        for v in self.values:
            if groups and abs(groups[-1][-1] - v) <= self.tau_mult:
                groups[-1].append(v)
            else:
                groups.append([v])
        return [(sum(g) / len(g), len(g)) for g in groups]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SpectralInvariants:
    n: int
    m: int
    spanning_trees: int
    components: int
    sum_sq_degrees: int


@dataclass
class BoundsReport:
    d1: int
    d2: int
    mu1: float
    mu2: float
    lower: int | None  # d1 + 1
    upper_sum: int | None  # d1 + d2
    theta_max: Fraction | None  # max_v deg(v) + theta(v)
    checks: dict[str, bool | None] = field(default_factory=dict)  # None = skipped
    equality: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["theta_max"] = None if self.theta_max is None else str(self.theta_max)
        return d


# -- matrices -------------------------------------------------------------------


def adjacency(g: Graph) -> list[list[int]]:
    return [[(g.rows[i] >> j) & 1 for j in range(g.n)] for i in range(g.n)]


def laplacian(g: Graph) -> list[list[int]]:
    """``D - A`` (positive semidefinite convention)."""
    mat = [[-((g.rows[i] >> j) & 1) for j in range(g.n)] for i in range(g.n)]
    for i in range(g.n):
        mat[i][i] = g.rows[i].bit_count()
    return mat


def laplacian_array(g: Graph) -> np.ndarray:
    return np.array(laplacian(g), dtype=np.float64).reshape(g.n, g.n)


# -- exact polynomial -------------------------------------------------------------


def char_poly(g: Graph) -> CharPoly:
    """Exact coefficients of ``det(xI - L)``: the determinant is evaluated at
    ``x = 0..n`` by Bareiss elimination and the values are interpolated."""
    n = g.n
    if n == 0:
        return CharPoly((1,))
    lap = laplacian(g)
    values = []
    for x in range(n + 1):
        mat = [[-v for v in row] for row in lap]
        for i in range(n):
            mat[i][i] += x
        values.append(bareiss_det(mat))
    coeffs = interpolate(list(range(n + 1)), values)
    coeffs += [0] * (n + 1 - len(coeffs))
    return CharPoly(tuple(coeffs))


def spanning_tree_count(g: Graph) -> int:
    """Kirchhoff: any cofactor of the Laplacian."""
    if g.n == 0:
        return 0
    lap = laplacian(g)
    minor = [row[1:] for row in lap[1:]]
    return bareiss_det(minor)


def combinatorial_invariants(g: Graph) -> SpectralInvariants:
    return SpectralInvariants(
        n=g.n,
        m=g.m,
        spanning_trees=spanning_tree_count(g) if is_connected(g) and g.n else 0,
        components=len(components(g)),
        sum_sq_degrees=sum(d * d for d in g.degrees()),
    )


def invariants_from_spectrum(p: CharPoly) -> SpectralInvariants:
    n = p.degree
    if p.coeffs[-1] != 1:
        raise SpectralError("characteristic polynomial is not monic")
    if n == 0:
        return SpectralInvariants(0, 0, 0, 0, 0)
    if p.coeffs[0] != 0:
        raise SpectralError("Laplacian polynomial must vanish at 0")
    c1 = p.top(1)
    if c1 % 2 or c1 > 0:
        raise SpectralError(f"x^(n-1) coefficient {c1} is not -2m")
    m = -c1 // 2
    comps = p.zero_multiplicity()
    if comps == 1:
        num = (-1) ** (n - 1) * p.coeffs[1]
        if num % n:
            raise SpectralError("x coefficient not divisible by n")
        trees = num // n
    else:
        trees = 0
    # l2 = 2m^2 - m - (1/2) sum d^2
    sum_sq = 2 * (2 * m * m - m - L_COEFF_SIGN[2] * p.top(2))
    return SpectralInvariants(n, m, trees, comps, sum_sq)


# -- numeric spectrum ---------------------------------------------------------------


def eigenvalues(g: Graph) -> Spectrum:
    if g.n == 0:
        return Spectrum(())
    vals = jacobi_eigvalsh(laplacian_array(g))
    return Spectrum(tuple(float(v) for v in vals))


def eigenvalues_many(graphs: Sequence[Graph]) -> list[Spectrum]:
    """Batched version of :func:`eigenvalues`; graphs are grouped by order."""
    out: list[Spectrum | None] = [None] * len(graphs)
    by_n: dict[int, list[int]] = {}
    for i, g in enumerate(graphs):
        by_n.setdefault(g.n, []).append(i)
    for n, idx in by_n.items():
        if n == 0:
            for i in idx:
                out[i] = Spectrum(())
            continue
        stack = np.stack([laplacian_array(graphs[i]) for i in idx])
        vals = jacobi_eigvalsh(stack)
        for i, row in zip(idx, vals):
            out[i] = Spectrum(tuple(float(v) for v in row))
    return out


def symmetric_eigvals(mat) -> np.ndarray:
    arr = np.asarray(mat, dtype=np.float64)
    if arr.size == 0:
        return np.zeros(0)
    return jacobi_eigvalsh(arr)


# -- walks, triangles, epsilon, theta --------------------------------------------


def _adj_power_trace(g: Graph, k: int) -> int:
    a = np.array(adjacency(g), dtype=np.int64).reshape(g.n, g.n)
    p = np.eye(g.n, dtype=np.int64)
    for _ in range(k):
        p = p @ a
    return int(np.trace(p))


def closed_walks(g: Graph, length: int) -> tuple[int, int]:
    """``(tr(A^length), closed form)`` for lengths 2, 3, 4."""
    c3, p3, c4 = count_subgraphs(g)
    m = g.m
    forms = {2: 2 * m, 3: 6 * c3, 4: 2 * m + 4 * p3 + 8 * c4}
    if length not in forms:
        raise ValueError("closed-walk formula only for lengths 2, 3, 4")
    return _adj_power_trace(g, length), forms[length]


def epsilon_invariant(g: Graph) -> int:
    """``tr(A^3) - sum (d_i - 2)^3``."""
    c3 = count_subgraphs(g)[0]
    return 6 * c3 - sum((d - 2) ** 3 for d in g.degrees())


def theta(g: Graph, v: int) -> Fraction:
    dv = g.degree(v)
    if dv == 0:
        raise SpectralError(f"theta undefined at isolated vertex {v}")
    return Fraction(sum(g.degree(u) for u in g.neighbors(v)), dv)


# -- bounds, duality, interlacing ---------------------------------------------------


def check_bounds(g: Graph, spectrum: Spectrum | None = None, tau: float = TAU_NUM, poly: CharPoly | None = None) -> BoundsReport:
    """Evaluate the degree-based eigenvalue bounds that apply to ``g``.

    * ``mu1 >= d1 + 1`` when g has an edge; for connected g, equality iff
      ``d1 == n - 1``.
    * ``mu1 <= max_v deg(v) + theta(v)`` for connected g with an edge;
      equality iff g is bipartite with constant degree on each side.
    * ``mu1 <= d1 + d2`` when g has an edge.
    * ``mu2 >= d2`` for connected g with at least 3 vertices.

    Inequalities use slack ``tau``; equality cases are decided exactly from
    the characteristic polynomial.
    """
    spec = spectrum or eigenvalues(g)
    ds = degree_sequence(g)
    d1, d2 = ds.d1, ds.d2
    mu1 = spec.mu(1) if len(spec) else 0.0
    mu2 = spec.mu(2) if len(spec) > 1 else 0.0
    connected = is_connected(g)
    has_edge = g.m > 0
    rep = BoundsReport(d1, d2, mu1, mu2, None, None, None)

    if has_edge:
        rep.lower = d1 + 1
        rep.checks["mu1>=d1+1"] = mu1 >= rep.lower - tau
        rep.upper_sum = d1 + d2
        rep.checks["mu1<=d1+d2"] = mu1 <= rep.upper_sum + tau
        if connected:
            poly = poly or char_poly(g)
            eq = _is_largest_root(poly, rep.lower)
            rep.equality["mu1=d1+1"] = eq
            rep.checks["mu1=d1+1 iff d1=n-1"] = eq == (d1 == g.n - 1)
    else:
        rep.checks["mu1>=d1+1"] = None
        rep.checks["mu1<=d1+d2"] = None

    if connected and has_edge:
        rep.theta_max = max(g.degree(v) + theta(g, v) for v in range(g.n))
        rep.checks["mu1<=max(deg+theta)"] = mu1 <= float(rep.theta_max) + tau
        poly = poly or char_poly(g)
        eq = _is_largest_root(poly, rep.theta_max)
        rep.equality["mu1=max(deg+theta)"] = eq
        rep.checks["theta equality iff semiregular bipartite"] = eq == _semiregular_bipartite(g)
    else:
        rep.checks["mu1<=max(deg+theta)"] = None

    if connected and g.n >= 3:
        rep.checks["mu2>=d2"] = mu2 >= d2 - tau
    else:
        rep.checks["mu2>=d2"] = None
    return rep


def _is_largest_root(p: CharPoly, x) -> bool:
    return p(x) == 0 and p.roots_above(x) == 0


def _semiregular_bipartite(g: Graph) -> bool:
    """Connected bipartite graph whose two sides each have constant degree."""
    degs = g.degrees()
    color = [-1] * g.n
    color[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            if color[u] < 0:
                color[u] = 1 - color[v]
                stack.append(u)
            elif color[u] == color[v]:
                return False
    side = [{degs[v] for v in range(g.n) if color[v] == c} for c in (0, 1)]
    return len(side[0]) == 1 and len(side[1]) == 1


def complement_duality_check(g: Graph, spectrum: Spectrum | None = None, co_spectrum: Spectrum | None = None) -> float:
    """max_i |mubar_i - (n - mu_{n-i})| over i = 1..n-1."""
    n = g.n
    if n < 2:
        return 0.0
    mu = spectrum or eigenvalues(g)
    mubar = co_spectrum or eigenvalues(complement(g))
    return max(abs(mubar.mu(i) - (n - mu.mu(n - i))) for i in range(1, n))


def principal_submatrix(mat: Sequence[Sequence[int]], drop: Iterable[int]) -> list[list[int]]:
    drop = set(drop)
    keep = [i for i in range(len(mat)) if i not in drop]
    return [[mat[i][j] for j in keep] for i in keep]


def interlacing_check(g: Graph, v: int, tau: float = TAU_CHECK) -> bool:
    """Eigenvalues of L with row/column v deleted interlace those of L."""
    if g.n < 2:
        raise SpectralError("interlacing needs n >= 2")
    mu = symmetric_eigvals(laplacian(g))
    lam = symmetric_eigvals(principal_submatrix(laplacian(g), [v]))
    return interlaces(mu, lam, tau)


def interlaces(mu: Sequence[float], lam: Sequence[float], tau: float = TAU_CHECK) -> bool:
    """``mu_1 >= lam_1 >= mu_2 >= ... >= lam_{n-1} >= mu_n`` (both non-increasing)."""
    for i, x in enumerate(lam):
        if not (mu[i] + tau >= x >= mu[i + 1] - tau):
            return False
    return True


# -- top coefficients ------------------------------------------------------------


def l_closed_forms(g: Graph) -> tuple[int, int, int, int]:
    m = g.m
    degs = g.degrees()
    s2 = sum(d * d for d in degs)
    s3 = sum(d ** 3 for d in degs)
    c3 = count_subgraphs(g)[0]
    l2 = Fraction(4 * m * m - 2 * m - s2, 2)
    l3 = Fraction(-4 * m ** 3 + 6 * m * m + 3 * m * s2 - s3 - 3 * s2 + 6 * c3, 3)
    if l2.denominator != 1 or l3.denominator != 1:
        raise SpectralError("closed-form coefficient is not an integer")
    return 1, -2 * m, int(l2), int(l3)


def coefficients_l(g: Graph, p: CharPoly | None = None) -> dict[str, tuple[int, ...]]:
    """Closed-form top coefficients next to the ones read off ``char_poly``."""
    p = p or char_poly(g)
    extracted = tuple(L_COEFF_SIGN[i] * p.top(i) for i in range(4))
    return {"closed_form": l_closed_forms(g), "char_poly": extracted}


def calibrate_coefficient_signs(max_n: int = 3) -> tuple[int, ...]:
    """Infer the sign relating each closed-form ``l_i`` to ``c_{n-i}`` from
    every labeled graph with ``i <= n <= max_n``. Coefficient pairs that are
    both zero carry no information; conflicting evidence raises."""
    signs: list[set[int]] = [set() for _ in range(4)]
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [e for b, e in enumerate(pairs) if mask >> b & 1])
            p = char_poly(g)
            for i, val in enumerate(l_closed_forms(g)):
                c = p.top(i)
                if i > n or (c == 0 and val == 0):
                    continue
                if c == val:
                    signs[i].add(1)
                elif c == -val:
                    signs[i].add(-1)
                else:
                    raise SpectralError(f"l_{i} closed form {val} vs coefficient {c} on {g}")
    out = []
    for i, found in enumerate(signs):
        if len(found) > 1:
            raise SpectralError(f"inconsistent sign for l_{i}")
        out.append(found.pop() if found else 1)
    return tuple(out)


# -- exact tests on the largest eigenvalue -------------------------------------


def mu1_below(p: CharPoly, bound) -> bool:
    """Exactly decide ``mu_1 < bound`` from the polynomial."""
    return p.roots_above(bound, strict=False) == 0


# -- reports --------------------------------------------------------------------


def spectrum_record(g: Graph, tau: float = TAU_NUM) -> dict:
    p = char_poly(g)
    spec = eigenvalues(g)
    inv = invariants_from_spectrum(p)
    bounds = check_bounds(g, spec, tau)
    return {
        "graph6": to_graph6(g),
        "n": g.n,
        "m": g.m,
        "charpoly": [str(c) for c in p.coeffs],
        "mu": [round(v, 12) + 0.0 for v in spec.values],
        "invariants": asdict(inv),
        "bounds": bounds.to_dict(),
        "tau": tau,
    }
