"""Exhaustive graph enumeration, grouping by Laplacian characteristic
polynomial, and DLS certification within an enumerated scope.

Enumeration is canonical edge augmentation: a graph with ``m`` edges is
produced from its parent (itself minus a canonically chosen edge) only, so
each isomorphism class appears exactly once and nothing is stored.
"""

from __future__ import annotations

import json
import logging
import multiprocessing as mp
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .canon import canonical_labeling, pair_orbits
from .graph import Graph, is_connected
from .graph6 import from_graph6, to_graph6
from .spectral import CharPoly, char_poly, combinatorial_invariants

log = logging.getLogger(__name__)

MAX_ENUM_ORDER = 11
SPLIT_DEPTH = 3


class BudgetExceeded(RuntimeError):
    """Requested scope is beyond the enumeration guard."""


class InternalConsistencyError(AssertionError):
    """Graphs sharing a polynomial disagree on a spectrum-determined invariant."""


@dataclass(frozen=True)
class EnumFilter:
    n: int
    m: int | None = None
    connected_only: bool = False
    degree_cap: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.m is not None and not 0 <= self.m <= self.n * (self.n - 1) // 2:
            raise ValueError(f"m={self.m} outside 0..C({self.n},2)")

    def accepts(self, g: Graph) -> bool:
        if self.m is not None and g.m != self.m:
            return False
        if self.degree_cap is not None and max(g.degrees(), default=0) > self.degree_cap:
            return False
        if self.connected_only and not is_connected(g):
            return False
        return True


# -- canonical augmentation ------------------------------------------------------


def _canonical_node(g: Graph):
    """Canonically relabeled copy of ``g`` with automorphism generators
    expressed on the new labels."""
    lab = canonical_labeling(g)
    pos = lab.position
    gens = [tuple(pos[perm[v]] for v in lab.order) for perm in lab.generators]
    return Graph(g.n, lab.certificate), gens


def _edge_key(rows, degs, u, v):
    return (degs[u] + degs[v], min(degs[u], degs[v]), (rows[u] & rows[v]).bit_count())


def _accept(child: Graph, u: int, v: int) -> bool:
    """True iff ``uv`` is equivalent to the canonical deletion edge of ``child``."""
    rows = child.rows
    degs = child.degrees()
    mine = _edge_key(rows, degs, u, v)
    best = []
    for a, b in child.edges():
        key = _edge_key(rows, degs, a, b)
        if key > mine:
            return False
        if key == mine:
            best.append((a, b))
    if len(best) == 1:
        return True
    lab = canonical_labeling(child)
    pos = lab.position
    chosen = max(best, key=lambda e: (max(pos[e[0]], pos[e[1]]), min(pos[e[0]], pos[e[1]])))
    orbit = pair_orbits(best, lab.generators)
    return orbit[(min(u, v), max(u, v))] == orbit[chosen]


def _children(g: Graph, gens, degree_cap: int | None):
    n = g.n
    rows = g.rows
    non_edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not rows[u] >> v & 1]
    if degree_cap is not None:
        degs = g.degrees()
        non_edges = [(u, v) for u, v in non_edges if degs[u] < degree_cap and degs[v] < degree_cap]
    if not non_edges:
        return
    orbit = pair_orbits(non_edges, gens)
    for e in non_edges:
        if orbit[e] != e:
            continue
        u, v = e
        new = list(rows)
        new[u] |= 1 << v
        new[v] |= 1 << u
        child = Graph(n, tuple(new))
        if _accept(child, u, v):
            yield _canonical_node(child)


def _dfs(g: Graph, gens, max_m: int, degree_cap: int | None) -> Iterator[Graph]:
    yield g
    if g.m < max_m:
        for child, cgens in _children(g, gens, degree_cap):
            yield from _dfs(child, cgens, max_m, degree_cap)


def _unit_worker(args) -> list[tuple[int, ...]]:
    rows, max_m, degree_cap, filt = args
    g, gens = _canonical_node(Graph(len(rows), rows))
    return [h.rows for h in _dfs(g, gens, max_m, degree_cap) if filt.accepts(h)]


def _plan(root: Graph, max_m: int, degree_cap: int | None, depth: int):
    """Pre-order walk down to ``depth`` edges; deeper subtrees become units."""
    root_node = _canonical_node(root)
    stack = [root_node]
    while stack:
        g, gens = stack.pop()
        if g.m >= depth and g.m < max_m:
            yield ("unit", g)
            continue
        yield ("graph", g)
        if g.m < max_m:
            kids = list(_children(g, gens, degree_cap))
            stack.extend(reversed(kids))


def _enumerate_low(filt: EnumFilter, max_m: int, workers: int) -> Iterator[Graph]:
    n = filt.n
    root = Graph.empty(n)
    if workers <= 1:
        root_g, gens = _canonical_node(root)
        for g in _dfs(root_g, gens, max_m, filt.degree_cap):
            if filt.accepts(g):
                yield g
        return

    plan = list(_plan(root, max_m, filt.degree_cap, SPLIT_DEPTH))
    units = [(g.rows, max_m, filt.degree_cap, filt) for kind, g in plan if kind == "unit"]
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    with ctx.Pool(workers) as pool:
        results = pool.imap(_unit_worker, units, chunksize=1)
        for kind, g in plan:
            if kind == "graph":
                if filt.accepts(g):
                    yield g
            else:
                for rows in next(results):
                    yield Graph(n, rows)


def enumerate_graphs(filt: EnumFilter, workers: int = 1, force: bool = False) -> Iterator[Graph]:
    """One canonically labeled representative per isomorphism class
    satisfying ``filt``, in a deterministic order that does not depend on
    ``workers``.

    Edge counts above half of ``C(n, 2)`` are produced as complements of the
    sparse side.
    """
    if filt.n > MAX_ENUM_ORDER and not force:
        raise BudgetExceeded(f"enumeration at n={filt.n} exceeds guard n <= {MAX_ENUM_ORDER}")
    n = filt.n
    total = n * (n - 1) // 2
    if filt.m is not None and filt.m > total - filt.m:
        from .graph import complement

        co = EnumFilter(n, total - filt.m)
        for g in _enumerate_low(co, total - filt.m, workers):
            h = _canonical_node(complement(g))[0]
            if filt.accepts(h):
                yield h
        return
    if filt.m is not None:
        yield from _enumerate_low(filt, filt.m, workers)
        return
    yield from _all_levels(filt, total // 2, total, workers)


def _all_levels(filt: EnumFilter, half: int, total: int, workers: int) -> Iterator[Graph]:
    from .graph import complement

    # no degree-cap pruning here: dense complements come from sparse graphs
    lows: list[Graph] = []
    for g in _enumerate_low(EnumFilter(filt.n), half, workers):
        if g.m < total - half:
            lows.append(g)
        if filt.accepts(g):
            yield g
    for g in lows:
        h = _canonical_node(complement(g))[0]
        if filt.accepts(h):
            yield h


def canonical_form(g: Graph) -> str:
    from .canon import canonical_form as _cf

    return _cf(g)


# -- fingerprints and classes --------------------------------------------------


@dataclass
class CospectralClass:
    charpoly: tuple[int, ...]
    members: list[str] = field(default_factory=list)  # canonical graph6, sorted

    @property
    def digest(self) -> str:
        return CharPoly(self.charpoly).digest()

    def to_json(self) -> str:
        return json.dumps(
            {"digest": self.digest, "charpoly": [str(c) for c in self.charpoly], "members": self.members},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> CospectralClass:
        d = json.loads(line)
        return cls(tuple(int(c) for c in d["charpoly"]), list(d["members"]))


def cospectral_classes(graphs: Iterable[Graph], check: bool = True) -> list[CospectralClass]:
    """Group graphs by exact Laplacian polynomial.

    Inputs are canonicalized and isomorphic duplicates dropped. The 128-bit
    digest is only a bucket key; membership is decided by the full
    coefficient vector. With ``check`` set, every class is verified to agree
    on n, m, component count, spanning trees and the sum of squared degrees.
    """
    buckets: dict[str, list[CospectralClass]] = {}
    seen: set[str] = set()
    for g in graphs:
        key = canonical_form(g)
        if key in seen:
            continue
        seen.add(key)
        p = char_poly(g)
        bucket = buckets.setdefault(p.digest(), [])
        for cls in bucket:
            if cls.charpoly == p.coeffs:
                cls.members.append(key)
                break
        else:
            bucket.append(CospectralClass(p.coeffs, [key]))
    classes = [c for bucket in buckets.values() for c in bucket]
    for c in classes:
        c.members.sort()
        if check and len(c.members) > 1:
            invs = {combinatorial_invariants(from_graph6(s)) for s in c.members}
            if len(invs) != 1:
                raise InternalConsistencyError(f"class {c.members} disagrees on invariants: {invs}")
    classes.sort(key=lambda c: (c.digest, c.charpoly))
    return classes


# -- cache ----------------------------------------------------------------------------


def default_cache_dir() -> Path | None:
    env = os.environ.get("DLS_CACHE_DIR")
    return Path(env) if env else None


_memo: dict[tuple[int, int], list[CospectralClass]] = {}


def scope_classes(n: int, m: int, cache_dir: Path | str | None = None, workers: int = 1, force: bool = False) -> list[CospectralClass]:
    """All cospectral classes among graphs with ``n`` vertices and ``m`` edges.

    Results are memoized in-process and, when ``cache_dir`` is given, stored
    as ``{cache_dir}/n{n}/m{m}/classes.jsonl``.
    """
    if n > MAX_ENUM_ORDER and not force:
        raise BudgetExceeded(f"scope n={n} exceeds guard n <= {MAX_ENUM_ORDER}")
    if (n, m) in _memo:
        return _memo[(n, m)]
    path = Path(cache_dir) / f"n{n}" / f"m{m}" / "classes.jsonl" if cache_dir else None
    if path is not None and path.exists():
        with open(path) as fh:
            classes = [CospectralClass.from_json(line) for line in fh if line.strip()]
    else:
        classes = cospectral_classes(enumerate_graphs(EnumFilter(n, m), workers=workers, force=force))
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            with open(tmp, "w") as fh:
                for c in classes:
                    fh.write(c.to_json() + "\n")
            tmp.replace(path)
    _memo[(n, m)] = classes
    return classes


@dataclass
class Certificate:
    target: str
    n: int
    m: int
    examined: int
    verdict: str  # "DLS-at-scope" or "mate-found"
    mates: list[str] = field(default_factory=list)

    @property
    def is_dls(self) -> bool:
        return self.verdict == "DLS-at-scope"

    def to_dict(self) -> dict:
        return asdict(self)


def certify_dls(g: Graph, cache_dir: Path | str | None = None, workers: int = 1, force: bool = False) -> Certificate:
    """Compare ``g`` against every graph with the same order and size.

    Connectivity is not assumed: disconnected candidates are enumerated and
    compared like any other.
    """
    if g.n > MAX_ENUM_ORDER and not force:
        raise BudgetExceeded(f"certification at n={g.n} exceeds guard n <= {MAX_ENUM_ORDER}")
    target = canonical_form(g)
    coeffs = char_poly(g).coeffs
    classes = scope_classes(g.n, g.m, cache_dir, workers, force)
    examined = sum(len(c.members) for c in classes)
    mine = next((c for c in classes if c.charpoly == coeffs), None)
    if mine is None or target not in mine.members:
        raise InternalConsistencyError(f"target {target} missing from its own scope")
    mates = [s for s in mine.members if s != target]
    return Certificate(target, g.n, g.m, examined, "mate-found" if mates else "DLS-at-scope", mates)
