from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from lapspec.graph import Graph


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def graph_and_perm(draw, min_n: int = 1, max_n: int = 9):
    g = draw(graphs(min_n, max_n))
    perm = draw(st.permutations(list(range(g.n))))
    return g, perm
