"""Brute-force reference implementations for small orders.

Every labeled graph on ``n`` vertices is encoded as an edge bitmask; its
class key is the smallest mask over all ``n!`` relabelings. Only feasible
for ``n <= 7`` or so; used to cross-check the canonical machinery.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from .graph import Graph

BRUTE_MAX_N = 7


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _edge_perms(n: int) -> np.ndarray:
    """Row ``p``: image of each pair index under the ``p``-th permutation."""
    pairs = _pairs(n)
    index = {e: i for i, e in enumerate(pairs)}
    out = []
    for perm in permutations(range(n)):
        out.append([index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs])
    return np.array(out, dtype=np.int64).reshape(-1, len(pairs))


def mask_of(g: Graph) -> int:
    return sum(1 << i for i, (u, v) in enumerate(_pairs(g.n)) if g.has_edge(u, v))


def graph_of(n: int, mask: int) -> Graph:
    return Graph.from_edges(n, [e for i, e in enumerate(_pairs(n)) if mask >> i & 1])


def min_codes(n: int, masks: np.ndarray) -> np.ndarray:
    """Smallest relabeled mask for each input mask."""
    if n > BRUTE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_MAX_N}")
    masks = np.asarray(masks, dtype=np.int64)
    k = n * (n - 1) // 2
    if k == 0:
        return masks.copy()
    bits = (masks[:, None] >> np.arange(k)) & 1
    best = masks.copy()
    for img in _edge_perms(n):
        code = (bits << img).sum(axis=1)
        np.minimum(best, code, out=best)
    return best


def brute_class_count(n: int, m: int | None = None, connected_only: bool = False) -> int:
    """Number of isomorphism classes by labeled-graph dedup."""
    k = n * (n - 1) // 2
    masks = np.arange(1 << k, dtype=np.int64)
    if m is not None:
        pop = np.array([bin(x).count("1") for x in range(1 << k)])
        masks = masks[pop == m]
    codes = np.unique(min_codes(n, masks))
    if not connected_only:
        return len(codes)
    from .graph import is_connected

    return sum(1 for c in codes if is_connected(graph_of(n, int(c))))


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    """Isomorphism by trying every vertex bijection."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    edges = g.edges()
    for perm in permutations(range(g.n)):
        if all(h.has_edge(perm[u], perm[v]) for u, v in edges):
            return True
    return False
