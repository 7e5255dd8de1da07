"""Canonical labeling by colour refinement plus individualization search.

The search explores every leaf of the refinement tree except those pruned by
twin symmetry (two vertices with equal neighbourhoods outside each other are
swapped by an automorphism that fixes everything else). Because nothing else
is pruned, the automorphisms read off equal leaves together with the twin
transpositions generate the full automorphism group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph
from .graph6 import to_graph6


@dataclass(frozen=True)
class Labeling:
    order: tuple[int, ...]  # order[i] = vertex placed at canonical position i
    certificate: tuple[int, ...]  # adjacency rows after relabeling
    generators: tuple[tuple[int, ...], ...]  # automorphism generators, as images

    @property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)


def _refine(rows, cells):
    """Equitable refinement of an ordered partition (list of lists)."""
    while True:
        masks = []
        for c in cells:
            mk = 0
            for v in c:
                mk |= 1 << v
            masks.append(mk)
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                r = rows[v]
                key = tuple([(r & mk).bit_count() for mk in masks])
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                changed = True
                for key in sorted(groups):
                    out.append(groups[key])
        cells = out
        if not changed:
            return cells


def _certificate(rows, order):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cert = []
    for v in order:
        r = rows[v]
        new = 0
        while r:
            low = r & -r
            new |= 1 << pos[low.bit_length() - 1]
            r ^= low
        cert.append(new)
    return tuple(cert)


def _twin_reps(rows, n):
    """rep[v] = smallest vertex with the same neighbourhood as v (ignoring
    the edge between them)."""
    rep = list(range(n))
    for v in range(n):
        for u in range(v):
            if rep[u] != u:
                continue
            bu, bv = 1 << u, 1 << v
            if rows[u] & ~bv == rows[v] & ~bu:
                rep[v] = u
                break
    return rep


def _search(rows: tuple[int, ...]) -> Labeling:
    n = len(rows)
    if n == 0:
        return Labeling((), (), ())
    rep = _twin_reps(rows, n)
    gens: list[tuple[int, ...]] = []
    for v in range(n):
        if rep[v] != v:
            perm = list(range(n))
            perm[v], perm[rep[v]] = rep[v], v
            gens.append(tuple(perm))

    # initial partition by degree, ordered by degree value
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(rows[v].bit_count(), []).append(v)
    cells = _refine(rows, [by_deg[d] for d in sorted(by_deg)])

    best_cert = None
    best_order = None
    stack = [cells]
    while stack:
        cells = stack.pop()
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = tuple(c[0] for c in cells)
            cert = _certificate(rows, order)
            if best_cert is None or cert > best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert:
                perm = [0] * n
                for a, b in zip(best_order, order):
                    perm[a] = b
                gens.append(tuple(perm))
            continue
        cell = cells[target]
        seen_reps = set()
        children = []
        for v in cell:
            if rep[v] in seen_reps:
                continue
            seen_reps.add(rep[v])
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            children.append(_refine(rows, child))
        stack.extend(reversed(children))
    return Labeling(best_order, best_cert, tuple(gens))


@lru_cache(maxsize=65536)
def _labeling_cached(rows: tuple[int, ...]) -> Labeling:
    return _search(rows)


def canonical_labeling(g: Graph) -> Labeling:
    return _labeling_cached(g.rows)


def canonical_graph(g: Graph) -> Graph:
    lab = canonical_labeling(g)
    return Graph(g.n, lab.certificate)


def canonical_form(g: Graph) -> str:
    """graph6 string of the canonical relabeling; equal iff isomorphic."""
    return to_graph6(canonical_graph(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_labeling(g).certificate == canonical_labeling(h).certificate


def automorphism_generators(g: Graph) -> tuple[tuple[int, ...], ...]:
    return canonical_labeling(g).generators


def vertex_orbits(n: int, generators) -> list[int]:
    """Union-find orbit representative for each vertex."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in generators:
        for v in range(n):
            a, b = find(v), find(perm[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def pair_orbits(pairs: list[tuple[int, int]], generators) -> dict[tuple[int, int], tuple[int, int]]:
    """Orbit representative for each unordered vertex pair in ``pairs`` (a set
    closed under the group, e.g. all edges or all non-edges)."""
    parent = {p: p for p in pairs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in generators:
        for u, v in pairs:
            a, b = perm[u], perm[v]
            img = (a, b) if a < b else (b, a)
            ra, rb = find((u, v)), find(img)
            if ra != rb:
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra
    return {p: find(p) for p in pairs}
