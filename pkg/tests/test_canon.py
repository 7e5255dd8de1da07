from __future__ import annotations

import random
from itertools import permutations

import networkx as nx
from hypothesis import given

from conftest import from_nx, to_nx
from strategies import graph_and_perm, graphs

from lapspec.canon import (
    automorphism_generators,
    canonical_form,
    canonical_graph,
    is_isomorphic,
    vertex_orbits,
)
from lapspec.graph import Graph, gen_cycle, gen_friendship, gen_path, gen_star, join
from lapspec.oracles import brute_isomorphic


def _group_order(n, gens):
    """Size of the group generated by ``gens`` by closure."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[v]] for v in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def test_path_relabelings_share_one_string():
    p4 = gen_path(4)
    forms = {canonical_form(p4.relabel(perm)) for perm in permutations(range(4))}
    assert len(forms) == 1


def test_four_vertex_graphs_distinct(atlas):
    four = [g for g in atlas if g.n == 4]
    assert len({canonical_form(g) for g in four}) == 11


def test_atlas_forms_distinct(atlas):
    forms = [canonical_form(g) for g in atlas]
    assert len(set(forms)) == len(atlas)


def test_empty_graph():
    assert canonical_form(Graph.empty(0)) == "?"
    assert canonical_graph(Graph.empty(3)) == Graph.empty(3)


def test_isomorphism_examples():
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert is_isomorphic(join(Graph.empty(1), two_k2), gen_friendship(2))
    assert not is_isomorphic(gen_path(4), gen_star(3))


@given(graph_and_perm(max_n=10))
def test_invariant_under_relabeling(gp):
    g, perm = gp
    assert canonical_form(g) == canonical_form(g.relabel(perm))
    assert is_isomorphic(canonical_graph(g), g)


@given(graphs(max_n=6), graphs(max_n=6))
def test_agrees_with_permutation_search(g, h):
    if g.n != h.n:
        return
    assert (canonical_form(g) == canonical_form(h)) == brute_isomorphic(g, h)


def test_agrees_with_networkx_on_random_pairs():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(5, 10)
        p = rng.random()
        g = nx.gnp_random_graph(n, p, seed=rng.randrange(10**9))
        h = nx.gnm_random_graph(n, g.number_of_edges(), seed=rng.randrange(10**9))
        a, b = from_nx(g), from_nx(h)
        assert (canonical_form(a) == canonical_form(b)) == nx.is_isomorphic(g, h)


def test_automorphism_group_orders():
    cases = [(gen_cycle(6), 12), (gen_star(4), 24), (gen_path(5), 2), (gen_friendship(3), 48), (Graph.complete(5), 120)]
    for g, order in cases:
        assert _group_order(g.n, automorphism_generators(g)) == order


@given(graphs(max_n=7))
def test_group_order_matches_networkx(g):
    h = to_nx(g)
    expected = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter())
    gens = automorphism_generators(g)
    for p in gens:
        assert all(g.has_edge(p[u], p[v]) for u, v in g.edges())
    assert _group_order(g.n, gens) == expected


def test_vertex_orbits_of_paw():
    paw = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    orbits = vertex_orbits(4, automorphism_generators(paw))
    assert orbits[1] == orbits[2]
    assert len({orbits[0], orbits[1], orbits[3]}) == 3
