"""Simple undirected graphs stored as adjacency bit rows, plus the graph
operations and named families used throughout the package."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

MAX_ORDER = 64


class GraphError(ValueError):
    """Raised for unrealizable parameters or size overflow."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``rows[v]`` is an int whose bit ``u`` is set iff ``uv`` is an edge.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ORDER:
            raise GraphError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.rows) != self.n:
            raise GraphError("row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full or row >> v & 1:
                raise GraphError(f"row {v} has loop or out-of-range bits")
            r = row
            while r:
                low = r & -r
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {u})")
                r ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            new = 0
            for u in _bits(row):
                new |= 1 << perm[u]
            rows[perm[v]] = new
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> Graph:
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def delete_vertex(self, v: int) -> Graph:
        return self.induced([u for u in range(self.n) if u != v])

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return Graph.from_edges(self.n, self.edges() + list(edges))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        drop = {(min(e), max(e)) for e in edges}
        return Graph.from_edges(self.n, [e for e in self.edges() if e not in drop])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int = 0

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise GraphError(f"root {self.root} outside 0..{self.graph.n - 1}")


@dataclass(frozen=True)
class PathFriendshipSpec:
    """``G(s; t_1, ..., t_k)``: ``s`` triangles and ``k`` pendant paths sharing
    one center. Path lengths count vertices beyond the center and are kept
    non-increasing."""

    s: int
    t: tuple[int, ...] = ()

    def __post_init__(self):
        if self.s < 0:
            raise GraphError("triangle count must be >= 0")
        if any(x < 1 for x in self.t):
            raise GraphError("path lengths must be >= 1")
        object.__setattr__(self, "t", tuple(sorted(self.t, reverse=True)))

    @property
    def k(self) -> int:
        return len(self.t)

    @property
    def n(self) -> int:
        return 2 * self.s + sum(self.t) + 1

    @property
    def m(self) -> int:
        return self.n + self.s - 1

    @property
    def center_degree(self) -> int:
        return 2 * self.s + self.k


@dataclass(frozen=True)
class StarlikeSpec:
    """Starlike tree with ``pendants`` extra leaves on the center followed by
    branches of the given lengths; ``(2s, t_1..t_k)`` is the S-transform form."""

    branches: tuple[int, ...]
    pendants: int = 0

    def __post_init__(self):
        if any(x < 1 for x in self.branches):
            raise GraphError("branch lengths must be >= 1")
        if self.pendants < 0:
            raise GraphError("pendant count must be >= 0")
        if not self.branches and not self.pendants:
            raise GraphError("starlike tree needs at least one branch")
        object.__setattr__(self, "branches", tuple(sorted(self.branches, reverse=True)))

    def lengths(self) -> tuple[int, ...]:
        """All branch lengths, pendant leaves included, non-increasing."""
        return tuple(sorted(self.branches + (1,) * self.pendants, reverse=True))

    @property
    def n(self) -> int:
        return 1 + sum(self.branches) + self.pendants


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]
    counts: dict[int, int] = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees, reverse=True)))
        object.__setattr__(self, "counts", dict(Counter(self.degrees)))

    @property
    def d1(self) -> int:
        return self.degrees[0] if self.degrees else 0

    @property
    def d2(self) -> int:
        return self.degrees[1] if len(self.degrees) > 1 else 0

    def count(self, degree: int) -> int:
        return self.counts.get(degree, 0)

    def sum_squares(self) -> int:
        return sum(d * d for d in self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)


# -- operations ---------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.rows)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_ORDER:
        raise GraphError(f"union would have {g.n + h.n} > {MAX_ORDER} vertices")
    return Graph(g.n + h.n, g.rows + tuple(r << g.n for r in h.rows))


def join(g: Graph, h: Graph) -> Graph:
    u = disjoint_union(g, h)
    low = (1 << g.n) - 1
    high = ((1 << h.n) - 1) << g.n
    rows = tuple(r | high if v < g.n else r | low for v, r in enumerate(u.rows))
    return Graph(u.n, rows)


def coalesce(g: RootedGraph, h: RootedGraph) -> RootedGraph:
    """Identify the roots of ``g`` and ``h``.

    The merged vertex keeps ``g``'s label; the other vertices of ``h`` follow
    ``g``'s vertices in their original order.
    """
    n = g.graph.n + h.graph.n - 1
    if n > MAX_ORDER:
        raise GraphError(f"coalescence would have {n} > {MAX_ORDER} vertices")
    mapping = {}
    nxt = g.graph.n
    for v in range(h.graph.n):
        if v == h.root:
            mapping[v] = g.root
        else:
            mapping[v] = nxt
            nxt += 1
    edges = g.graph.edges() + [(mapping[u], mapping[v]) for u, v in h.graph.edges()]
    return RootedGraph(Graph.from_edges(n, edges), g.root)


def rooted_union_of_paths(lengths: Sequence[int]) -> Graph:
    """Center 0 with pendant paths of the given vertex counts, laid out in order."""
    edges = []
    nxt = 1
    for t in lengths:
        prev = 0
        for _ in range(t):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


# -- generators ---------------------------------------------------------------


def gen_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_star(r: int) -> Graph:
    """``K_{1,r}`` centered at vertex 0."""
    if r < 0:
        raise GraphError("star needs r >= 0")
    return Graph.from_edges(r + 1, [(0, i) for i in range(1, r + 1)])


def gen_friendship(s: int) -> Graph:
    """``F_s``: ``s`` triangles sharing vertex 0."""
    if s < 0:
        raise GraphError("friendship graph needs s >= 0")
    edges = []
    for i in range(s):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * s + 1, edges)


def gen_starlike(spec: StarlikeSpec | Sequence[int]) -> Graph:
    if not isinstance(spec, StarlikeSpec):
        spec = StarlikeSpec(tuple(spec))
    return rooted_union_of_paths(spec.lengths())


def gen_path_friendship(spec: PathFriendshipSpec) -> Graph:
    """Center 0, triangle pairs ``(1,2), (3,4), ...``, then each path in
    non-increasing length order. With ``s == 0`` and one or two paths this is
    a bare path rooted at an end or interior vertex."""
    tri = gen_friendship(spec.s)
    return coalesce(RootedGraph(tri, 0), RootedGraph(rooted_union_of_paths(spec.t), 0)).graph


def gen_lollipop(n: int, p: int) -> Graph:
    """``H_{n,p}``: cycle ``C_p`` with a path attached so the total order is ``n``.

    The cycle occupies ``0..p-1``; vertex 0 carries the path.
    """
    if p < 3 or n < p:
        raise GraphError("lollipop needs 3 <= p <= n")
    cyc = RootedGraph(gen_cycle(p), 0)
    tail = RootedGraph(gen_path(n - p + 1), 0)
    return coalesce(cyc, tail).graph


def gen_windwheel(s: int, t: int) -> Graph:
    """``G_{s,t}``: ``s`` triangles on an end vertex of ``P_{t+1}``; ``2s+t+1`` vertices."""
    if s < 0 or t < 0:
        raise GraphError("wind-wheel needs s, t >= 0")
    return gen_path_friendship(PathFriendshipSpec(s, (t,) if t else ()))


def gen_Gabcd(a: int, b: int, c: int, d: int) -> Graph:
    """``a`` triangles, ``b`` pendant edges, ``c`` pendant P2s and ``d`` pendant
    P3s on one common vertex."""
    if min(a, b, c, d) < 0:
        raise GraphError("G(a,b,c,d) needs nonnegative parameters")
    return gen_path_friendship(PathFriendshipSpec(a, (3,) * d + (2,) * c + (1,) * b))


# -- structure ----------------------------------------------------------------


def degree_sequence(g: Graph) -> DegreeSequence:
    return DegreeSequence(tuple(g.degrees()))


def components(g: Graph) -> list[list[int]]:
    seen = 0
    out = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            v = low.bit_length() - 1
            new = g.rows[v] & ~comp
            comp |= new
            frontier |= new
        seen |= comp
        out.append(_bits(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def count_subgraphs(g: Graph) -> tuple[int, int, int]:
    """Subgraph counts ``(N(C3), N(P3), N(C4))``; P3 is the 3-vertex path."""
    rows = g.rows
    n_p3 = sum(d * (d - 1) // 2 for d in g.degrees())
    triangles = 0
    for u, v in g.edges():
        triangles += (rows[u] & rows[v]).bit_count()
    triangles //= 3
    # each 4-cycle has two diagonals; count pairs of common neighbours per pair
    c4 = 0
    for u, v in combinations(range(g.n), 2):
        c = (rows[u] & rows[v]).bit_count()
        c4 += c * (c - 1) // 2
    return triangles, n_p3, c4 // 2
