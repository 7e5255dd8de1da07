"""Executable versions of the path-friendship arguments: eigenvalue windows,
the degree-count system behind degree-sequence reconstruction, the
starlike transform, and the largest-eigenvalue comparisons it relies on."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator

import numpy as np

from .exact import poly_derivative, poly_divmod, poly_gcd, roots_above
from .graph import (
    Graph,
    GraphError,
    PathFriendshipSpec,
    StarlikeSpec,
    components,
    gen_cycle,
    gen_path,
    gen_path_friendship,
    gen_starlike,
    is_connected,
)
from .canon import canonical_form
from .spectral import (
    TAU_CHECK,
    TAU_NUM,
    CharPoly,
    char_poly,
    eigenvalues,
    eigenvalues_many,
    epsilon_invariant,
    laplacian,
    mu1_below,
    principal_submatrix,
    symmetric_eigvals,
)

TAU_SEP = 1e-9


class StructureError(ValueError):
    """Input graph does not have the required path-friendship shape."""


# -- spec enumeration ----------------------------------------------------------


def partitions(total: int, parts: int | None = None, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into positive parts, non-increasing; exactly
    ``parts`` parts when given."""
    largest = total if largest is None else largest
    if total == 0:
        if parts in (None, 0):
            yield ()
        return
    if parts == 0:
        return
    for first in range(min(total, largest), 0, -1):
        rest = None if parts is None else parts - 1
        for tail in partitions(total - first, rest, first):
            yield (first,) + tail


def path_friendship_specs(max_n: int, min_n: int = 1, min_s: int = 1) -> list[PathFriendshipSpec]:
    out = []
    for n in range(min_n, max_n + 1):
        for s in range(min_s, (n - 1) // 2 + 1):
            for t in partitions(n - 1 - 2 * s):
                out.append(PathFriendshipSpec(s, t))
    return out


def starlike_specs(n: int) -> list[StarlikeSpec]:
    """Non-isomorphic trees of order ``n`` with at most one vertex of degree
    above 2: the path, then one tree per partition of ``n-1`` into >= 3 parts."""
    if n < 2:
        return []
    out = [StarlikeSpec((n - 1,))]
    out += [StarlikeSpec(t) for t in partitions(n - 1) if len(t) >= 3]
    return out


# -- eigenvalue windows -------------------------------------------------------------


@dataclass
class WindowResult:
    spec: PathFriendshipSpec
    lower: float
    upper: float
    mu1: float
    passed: bool


def lemma31_window(spec: PathFriendshipSpec, mu1: float | None = None, tau: float = TAU_NUM) -> WindowResult:
    """``mu1 = 2s+1`` when k = 0, else ``2s+k+1 <= mu1 <= 2s+k+2``."""
    if mu1 is None:
        mu1 = eigenvalues(gen_path_friendship(spec)).mu(1)
    s, k = spec.s, spec.k
    if k == 0:
        lo = hi = 2 * s + 1
    else:
        lo, hi = 2 * s + k + 1, 2 * s + k + 2
    return WindowResult(spec, lo, hi, mu1, lo - tau <= mu1 <= hi + tau)


def lemma31_sweep(s: int, k: int, max_n: int, tau: float = TAU_NUM) -> list[WindowResult]:
    specs = [p for p in path_friendship_specs(max_n) if p.s == s and p.k == k]
    spectra = eigenvalues_many([gen_path_friendship(p) for p in specs])
    return [lemma31_window(p, sp.mu(1), tau) for p, sp in zip(specs, spectra)]


@dataclass
class Mu2Result:
    spec: PathFriendshipSpec | None
    mu2: float
    block_radii: list[float]
    component_sizes: list[int]
    passed: bool


def max_degree_vertex(g: Graph) -> int:
    degs = g.degrees()
    return degs.index(max(degs))


def lemma32_mu2(g: Graph, spec: PathFriendshipSpec | None = None, tau: float = TAU_NUM, mu2: float | None = None) -> Mu2Result:
    """``mu2 < 4``, plus the route through the deleted-vertex submatrix: the
    blocks of ``|M_v|`` (one per component of ``g - v``) have spectral radius
    below 4."""
    if mu2 is None:
        mu2 = eigenvalues(g).mu(2)
    v = max_degree_vertex(g)
    lap = laplacian(g)
    rest = g.delete_vertex(v)
    others = [u for u in range(g.n) if u != v]
    radii = []
    sizes = []
    for comp in components(rest):
        verts = [others[i] for i in comp]
        block = np.abs(np.array([[lap[a][b] for b in verts] for a in verts], dtype=float))
        radii.append(float(symmetric_eigvals(block)[0]))
        sizes.append(len(verts))
    ok = mu2 < 4 - tau and all(r < 4 - tau for r in radii)
    return Mu2Result(spec, mu2, radii, sorted(sizes, reverse=True), ok)


def expected_components(spec: PathFriendshipSpec) -> list[int]:
    """Component orders of ``G - v``: s copies of K2 and paths of orders t_i."""
    return sorted([2] * spec.s + list(spec.t), reverse=True)


# -- degree-count system ------------------------------------------------------------


def epsilon_path_friendship(s: int, k: int) -> int:
    """Right-hand side of the epsilon identity for ``G(s, k)``."""
    return 6 * s - (-k + 8 * s ** 3 + (k - 2) * ((k - 2) ** 2 + 12 * s * s + 6 * s * (k - 2)))


def eq4_rhs(s: int, k: int) -> int:
    return 4 * s * s + 4 * s * k - 6 * s + k * k - 3 * k + 2


@dataclass
class DegreeSystemSolution:
    d1_hypothesis: int
    top_multiplicity: str  # "1" or ">=2"
    n1: Fraction | None
    n2: Fraction | None
    n3: Fraction | None
    triangles: Fraction | None
    eq4_lhs: Fraction | None
    eq4_rhs: int
    feasible: bool
    reason: str = ""

    def counts(self) -> dict[int, int]:
        return {1: int(self.n1), 2: int(self.n2), 3: int(self.n3)}

    def degree_sequence(self) -> list[int]:
        """Full non-increasing degree sequence implied by a feasible solution."""
        degs = [d for d, c in self.counts().items() for _ in range(c)]
        if self.d1_hypothesis > 3:
            degs.append(self.d1_hypothesis)
        return sorted(degs, reverse=True)


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact Gauss-Jordan solve. Returns a solution of a consistent system
    (unique when the columns are independent), else None."""
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in a):
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = a[i][-1]
    return sol


def solve_degree_system(n: int, m: int, sum_sq: int, s: int, k: int, d1_hyp: int, top_multiplicity: str = "1") -> DegreeSystemSolution:
    """Solve for the counts of degree-1, -2, -3 vertices of a connected graph
    with ``n`` vertices, ``m`` edges, squared-degree sum ``sum_sq``, maximum
    degree ``d1_hyp`` and every other degree at most 3, then recover its
    triangle count from the epsilon identity for ``G(s, k)``.

    For ``d1_hyp > 3`` the maximum is attained once. For ``d1_hyp <= 3`` all
    degrees are at most ``d1_hyp`` and ``top_multiplicity`` says whether the
    maximum is attained once (``"1"``) or at least twice (``">=2"``).
    """
    if d1_hyp < 1 or d1_hyp > n - 1:
        raise ValueError(f"maximum degree {d1_hyp} impossible for n={n}")
    return _solve_degree_system(n, m, sum_sq, s, k, d1_hyp, top_multiplicity)


def _solve_degree_system(n, m, sum_sq, s, k, d1_hyp, top_multiplicity):
    if top_multiplicity not in ("1", ">=2"):
        raise ValueError("top_multiplicity must be '1' or '>=2'")
    D = d1_hyp
    rhs4 = eq4_rhs(s, k)
    eps = epsilon_path_friendship(s, k)

    def fail(reason, sol=None, lhs4=None, tri=None):
        n1, n2, n3 = sol if sol else (None, None, None)
        return DegreeSystemSolution(D, top_multiplicity, n1, n2, n3, tri, lhs4, rhs4, False, reason)

    if D > 3:
        if top_multiplicity != "1":
            return fail("maximum above 3 must be unique because d2 <= 3")
        degs = [1, 2, 3]
        rhs = [Fraction(n - 1), Fraction(2 * m - D), Fraction(sum_sq - D * D)]
    else:
        degs = list(range(1, D + 1))
        rhs = [Fraction(n), Fraction(2 * m), Fraction(sum_sq)]
    rows = [[Fraction(1)] * len(degs), [Fraction(i) for i in degs], [Fraction(i * i) for i in degs]]
    sol = _solve(rows, rhs)
    if sol is None:
        if D == 1:
            return fail("max degree 1 and connected forces H = K2, but the counts need more vertices")
        if D == 2:
            return fail("max degree 2 and connected forces a path or cycle, whose degree counts do not fit n, m, sum of squares")
        return fail("degree-count equations are inconsistent")
    counts = dict(zip(degs, sol))
    n1, n2, n3 = (counts.get(i, Fraction(0)) for i in (1, 2, 3))
    lhs4 = 2 * n3 + (Fraction(D * D - 3 * D + 2) if D > 3 else 0)
    cube = -n1 + n3 + (Fraction((D - 2) ** 3) if D > 3 else 0)
    tri = (eps + cube) / 6
    trip = (n1, n2, n3)

    if any(c.denominator != 1 for c in sol):
        return fail("non-integral vertex counts", trip, lhs4, tri)
    negative = [f"n{i}={int(c)}" for i, c in zip(degs, sol) if c < 0]
    if negative:
        return fail("negative vertex count " + ", ".join(negative), trip, lhs4, tri)
    if D <= 3:
        top = counts[D]
        if top_multiplicity == "1" and top != 1:
            return fail(f"n{D}={int(top)} but the maximum was assumed unique", trip, lhs4, tri)
        if top_multiplicity == ">=2" and top < 2:
            return fail(f"n{D}={int(top)} but the maximum was assumed repeated", trip, lhs4, tri)
    if tri.denominator != 1:
        return fail(f"triangle count {tri} is not an integer", trip, lhs4, tri)
    if tri < 0:
        return fail(f"triangle count N(C3)={int(tri)} is negative", trip, lhs4, tri)
    if D == 1 and n != 2:
        return fail("max degree 1 and connected forces H = K2", trip, lhs4, tri)
    return DegreeSystemSolution(D, top_multiplicity, n1, n2, n3, tri, lhs4, rhs4, True)


@dataclass
class CaseReport:
    label: str  # "2s+k-2", "2s+k-1", "2s+k", "2s+k+1"
    d1: int
    top_multiplicity: str
    solution: DegreeSystemSolution
    outcome: str  # "consistent" or "contradiction"
    reason: str
    count_feasible: bool = False  # degree counts alone admit a solution
    witness: dict | None = None


def small_multiplicity_pairs(offset: int) -> list[tuple[int, int]]:
    """(s, k) with s, k >= 1 and ``2s + k - offset <= 3``."""
    return [(s, k) for s in range(1, 3) for k in range(1, 5) if 2 * s + k - offset <= 3]


def _pendant_deletion_contradiction(sol: DegreeSystemSolution) -> str | None:
    """The structural step used when the maximum degree 3 is repeated: delete
    a pendant vertex; at least two degree-3 vertices remain, so the rest is
    not a union of paths and odd cycles."""
    if sol.d1_hypothesis == 3 and sol.n1 >= 1 and sol.n3 - 1 >= 2:
        return (
            "counts consistent; deleting a pendant vertex leaves >= 2 vertices of degree 3, "
            "so the remainder is not a union of paths and odd cycles (interlacing + mu < 4 classification)"
        )
    return None


def run_case_analysis(s: int, k: int, n: int, witness_max_n: int = 0) -> list[CaseReport]:
    """Evaluate every maximum-degree hypothesis for a graph L-cospectral with
    ``G(s, k)`` on ``n`` vertices.

    When ``witness_max_n >= n``, count-feasible subcases that are closed only
    by the structural step get an exhaustive witness: no graph with those
    degree counts shares a polynomial with any ``G(s; t)`` of order ``n``.
    """
    if s < 1 or k < 1:
        raise ValueError("case analysis needs s, k >= 1")
    x = 2 * s + k
    if n < x + 1:
        raise ValueError(f"n={n} too small for s={s}, k={k}")
    m = n + s - 1
    sum_sq = k + 4 * (n - k - 1) + x * x
    reports = []
    for off, label in ((-2, "2s+k-2"), (-1, "2s+k-1"), (0, "2s+k"), (1, "2s+k+1")):
        D = x + off
        if D > n - 1:
            # the counts are still reported; the order alone already rules it out
            sol = _solve_degree_system(n, m, sum_sq, s, k, D, "1")
            why = f"maximum degree {D} exceeds n-1 = {n - 1}" + (f"; {sol.reason}" if sol.reason else "")
            sol.feasible, sol.reason = False, why
            reports.append(CaseReport(label, D, "1", sol, "contradiction", why))
            continue
        mults = ("1",) if D > 3 else ("1", ">=2")
        for mult in mults:
            sol = solve_degree_system(n, m, sum_sq, s, k, D, mult)
            if not sol.feasible:
                reports.append(CaseReport(label, D, mult, sol, "contradiction", sol.reason))
                continue
            structural = _pendant_deletion_contradiction(sol) if mult == ">=2" else None
            if structural:
                wit = None
                if witness_max_n >= n:
                    wit = degree_class_witness(n, m, sol.counts(), s, k)
                reports.append(CaseReport(label, D, mult, sol, "contradiction", structural, True, wit))
            else:
                reports.append(CaseReport(label, D, mult, sol, "consistent", "degree sequence of G(s, k)", True))
    return reports


def degree_class_witness(n: int, m: int, counts: dict[int, int], s: int, k: int) -> dict:
    """Enumerate connected graphs with the given degree counts and compare
    their polynomials against every ``G(s; t)`` with ``|t| = k`` on ``n``
    vertices."""
    from .search import EnumFilter, enumerate_graphs

    target = sorted(d for d, c in counts.items() for _ in range(c))
    polys = {char_poly(gen_path_friendship(PathFriendshipSpec(s, t))).coeffs for t in partitions(n - 1 - 2 * s, k)}
    examined = 0
    hits = []
    cap = max(counts)
    for g in enumerate_graphs(EnumFilter(n, m, connected_only=True, degree_cap=cap)):
        if sorted(g.degrees()) != target:
            continue
        examined += 1
        if char_poly(g).coeffs in polys:
            hits.append(canonical_form(g))
    return {"n": n, "m": m, "degree_counts": counts, "examined": examined, "cospectral": hits}


def survivors(reports: list[CaseReport]) -> list[CaseReport]:
    return [r for r in reports if r.outcome == "consistent"]


# -- starlike transform and pendant edges ---------------------------------------


def recognize_path_friendship(g: Graph) -> tuple[PathFriendshipSpec, int]:
    """Return ``(spec, center)`` if ``g`` is a path-friendship graph."""
    if not is_connected(g) or g.n == 0:
        raise StructureError("graph is not connected")
    degs = g.degrees()
    top = max(degs)
    for v in [u for u in range(g.n) if degs[u] == top]:
        spec = _decompose_at(g, v)
        if spec is not None:
            return spec, v
    raise StructureError("graph is not a path-friendship graph")


def _decompose_at(g: Graph, v: int) -> PathFriendshipSpec | None:
    others = [u for u in range(g.n) if u != v]
    rest = g.delete_vertex(v)
    s = 0
    paths = []
    for comp in components(rest):
        verts = [others[i] for i in comp]
        sub = g.induced(verts)
        attach = [u for u in verts if g.has_edge(u, v)]
        if sub.m != len(verts) - 1 or max(sub.degrees(), default=0) > 2:
            return None
        if len(verts) == 2 and len(attach) == 2:
            s += 1
        elif len(attach) == 1 and sub.degree(verts.index(attach[0])) <= 1:
            paths.append(len(verts))
        else:
            return None
    if g.m != g.n + s - 1:
        return None
    return PathFriendshipSpec(s, tuple(paths))


@dataclass
class STransform:
    spec: StarlikeSpec
    graph: Graph
    center: int
    removed: list[tuple[int, int]]


def s_transform(g: Graph) -> STransform:
    """Delete, in each triangle, the edge not incident to the center. The
    result is a starlike tree whose center carries ``2s`` extra leaves."""
    spec, v = recognize_path_friendship(g)
    nbrs = g.neighbors(v)
    removed = [(a, b) for a, b in combinations(nbrs, 2) if g.has_edge(a, b)]
    tree = g.remove_edges(removed)
    if tree.m != tree.n - 1 or not is_connected(tree):
        raise StructureError("transform did not produce a tree")
    return STransform(StarlikeSpec(spec.t, 2 * spec.s), tree, v, removed)


@dataclass
class GuoResult:
    mu1_before: float
    mu1_after: float
    passed: bool


def guo_check(g: Graph, v: int, added: list[tuple[int, int]], tau: float = TAU_CHECK, spectra=None) -> GuoResult:
    """Adding edges among pendant neighbours of ``v`` keeps the largest
    Laplacian eigenvalue."""
    pend = {u for u in g.neighbors(v) if g.degree(u) == 1}
    if not added:
        raise ValueError("no edges to add")
    if len(added) > len(pend) * (len(pend) - 1) // 2:
        raise ValueError("more edges than pendant pairs")
    for a, b in added:
        if a == b or a not in pend or b not in pend:
            raise ValueError(f"edge ({a}, {b}) does not join two pendant neighbours of {v}")
        if g.has_edge(a, b):
            raise ValueError(f"edge ({a}, {b}) already present")
    h = g.add_edges(added)
    if spectra is None:
        before, after = (sp.mu(1) for sp in eigenvalues_many([g, h]))
    else:
        before, after = spectra
    return GuoResult(before, after, abs(before - after) <= tau)


# -- largest-root separation ----------------------------------------------------


def _max_root_estimate(p) -> float:
    """Largest real root of a real-rooted rational polynomial, via its
    square-free part."""
    p = [Fraction(c) for c in p]
    g = poly_gcd(p, poly_derivative(p))
    sf, _ = poly_divmod(p, g) if len(g) > 1 else (p, None)
    coeffs = [float(c) for c in reversed(sf)]
    if len(coeffs) <= 1:
        return float("-inf")
    return float(max(np.roots(coeffs).real))


def largest_roots_differ(p: CharPoly, q: CharPoly, mu_p: float, mu_q: float) -> bool | None:
    """Exact check that the largest roots of ``p`` and ``q`` differ.

    Finds a rational ``b`` above every common root but below both largest
    roots; the common roots are the roots of ``gcd(p, q)``. Returns None when
    no such ``b`` is found (the largest roots may coincide).
    """
    g = poly_gcd(p.coeffs, q.coeffs)
    top_common = _max_root_estimate(g) if len(g) > 1 else float("-inf")
    low = min(mu_p, mu_q)
    if not top_common < low:
        return None
    b = Fraction(low) - Fraction(1, 10 ** 12) if top_common == float("-inf") else Fraction((top_common + low) / 2)
    if roots_above(g, b) == 0 and roots_above(p.coeffs, b) >= 1 and roots_above(q.coeffs, b) >= 1:
        return True
    return None


@dataclass
class SeparationReport:
    n: int
    k: int | None
    pendants: int | None
    trees: int
    pairs: int
    polys_distinct: bool
    min_gap: float | None
    min_pair: tuple[str, str] | None
    near_ties: list[dict] = field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return bool(self.near_ties)


def starlike_mu1_separation(n: int, k: int | None = None, pendants: int | None = None, tau_sep: float = TAU_SEP) -> SeparationReport:
    """Pairwise largest-eigenvalue gaps among non-isomorphic starlike trees
    of order ``n``.

    ``k`` restricts to trees with that many branches; with ``pendants`` the
    trees are ``(pendants, t_1..t_k)``, i.e. ``pendants`` extra leaves on the
    center plus ``k`` branches. Char polys are compared exactly for every
    pair; gaps below ``tau_sep`` are recorded with an exact separation check.
    """
    if pendants is not None:
        if k is None:
            raise ValueError("pendant form needs k")
        specs = [StarlikeSpec(t, pendants) for t in partitions(n - 1 - pendants, k)]
    else:
        specs = [sp for sp in starlike_specs(n) if k is None or len(sp.lengths()) == k]
    graphs = [gen_starlike(sp) for sp in specs]
    names = [",".join(map(str, sp.lengths())) for sp in specs]
    polys = [char_poly(g) for g in graphs]
    mus = [sp.mu(1) for sp in eigenvalues_many(graphs)]
    distinct = len({p.coeffs for p in polys}) == len(polys)
    min_gap = None
    min_pair = None
    ties = []
    pairs = 0
    for i, j in combinations(range(len(specs)), 2):
        pairs += 1
        gap = abs(mus[i] - mus[j])
        if min_gap is None or gap < min_gap:
            min_gap, min_pair = gap, (names[i], names[j])
        if gap < tau_sep:
            exact = largest_roots_differ(polys[i], polys[j], mus[i], mus[j]) if polys[i] != polys[j] else False
            ties.append({"pair": (names[i], names[j]), "gap": gap, "exact_distinct": exact})
    return SeparationReport(n, k, pendants, len(specs), pairs, distinct, min_gap, min_pair, ties)


# -- mu1 < 4 classification -------------------------------------------------------


@dataclass
class Thm29Result:
    n: int
    below: list[str]
    expected: list[str]
    examined: int

    @property
    def passed(self) -> bool:
        return sorted(self.below) == sorted(self.expected)


def thm29_classify(n: int) -> Thm29Result:
    """Connected graphs of order ``n`` whose largest Laplacian eigenvalue is
    below 4, decided exactly by counting polynomial roots at or above 4."""
    from .search import EnumFilter, enumerate_graphs

    if n > 8:
        raise ValueError("classification is run for n <= 8")
    below = []
    examined = 0
    for g in enumerate_graphs(EnumFilter(n, connected_only=True)):
        examined += 1
        if mu1_below(char_poly(g), 4):
            below.append(canonical_form(g))
    expected = [canonical_form(gen_path(n))]
    if n >= 3 and n % 2:
        expected.append(canonical_form(gen_cycle(n)))
    return Thm29Result(n, sorted(below), sorted(expected), examined)


# -- identities on G itself --------------------------------------------------------


def eq5_identity(spec: PathFriendshipSpec) -> tuple[int, int]:
    """``(epsilon(G), closed form in s, k)`` for the realized graph."""
    return epsilon_invariant(gen_path_friendship(spec)), epsilon_path_friendship(spec.s, spec.k)


def eq4_identity(spec: PathFriendshipSpec) -> tuple[int, int]:
    degs = gen_path_friendship(spec).degrees()
    return sum(d * d - 3 * d + 2 for d in degs), eq4_rhs(spec.s, spec.k)
