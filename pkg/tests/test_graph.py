from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given

from conftest import to_nx
from strategies import graph_and_perm, graphs

from lapspec.canon import is_isomorphic
from lapspec.graph import (
    MAX_ORDER,
    Graph,
    GraphError,
    PathFriendshipSpec,
    RootedGraph,
    StarlikeSpec,
    coalesce,
    complement,
    components,
    count_subgraphs,
    degree_sequence,
    disjoint_union,
    gen_cycle,
    gen_friendship,
    gen_Gabcd,
    gen_lollipop,
    gen_path,
    gen_path_friendship,
    gen_star,
    gen_starlike,
    gen_windwheel,
    is_connected,
    join,
)
from lapspec.oracles import brute_isomorphic


def test_rejects_loops_and_asymmetry():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))
    with pytest.raises(GraphError):
        Graph.empty(MAX_ORDER + 1)


def test_complement_examples():
    assert complement(Graph.complete(3)) == Graph.empty(3)
    p3 = gen_path(3)
    c = complement(p3)
    assert c.m == 1 and sorted(c.degrees()) == [0, 1, 1]


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert complement(g).m == g.n * (g.n - 1) // 2 - g.m


def test_join_and_union():
    star = join(Graph.empty(1), Graph.empty(4))
    assert is_isomorphic(star, gen_star(4))
    two_k2 = disjoint_union(gen_path(2), gen_path(2))
    assert two_k2.m == 2 and len(components(two_k2)) == 2
    f2 = join(Graph.empty(1), two_k2)
    assert brute_isomorphic(f2, gen_friendship(2))


def test_coalesce_identity_and_lollipop():
    g = gen_cycle(5)
    assert coalesce(RootedGraph(g, 2), RootedGraph(Graph.empty(1), 0)).graph == g
    lol = gen_lollipop(7, 4)
    assert lol.n == 7 and lol.m == 7
    assert sorted(lol.degrees()) == [1, 2, 2, 2, 2, 2, 3]
    ref = nx.cycle_graph(4)
    nx.add_path(ref, [0, 4, 5, 6])
    assert nx.is_isomorphic(to_nx(lol), ref)


def test_coalesce_friendship_with_starlike_is_path_friendship():
    spec = PathFriendshipSpec(2, (3, 1))
    tree = gen_starlike(StarlikeSpec((3, 1)))
    g = coalesce(RootedGraph(gen_friendship(2), 0), RootedGraph(tree, 0)).graph
    assert is_isomorphic(g, gen_path_friendship(spec))


def test_generator_examples():
    paw = gen_path_friendship(PathFriendshipSpec(1, (1,)))
    assert (paw.n, paw.m) == (4, 4)
    assert nx.is_isomorphic(to_nx(paw), nx.Graph([(0, 1), (1, 2), (0, 2), (0, 3)]))
    f2 = gen_friendship(2)
    assert (f2.n, f2.m, f2.degree(0)) == (5, 6, 4)
    assert gen_Gabcd(1, 1, 1, 1).n == 9
    assert gen_windwheel(2, 3).n == 2 * 2 + 3 + 1
    with pytest.raises(GraphError):
        gen_cycle(2)


@pytest.mark.parametrize("spec", [PathFriendshipSpec(s, t) for s, t in [(1, ()), (1, (1,)), (2, (2, 1)), (3, (4, 2, 2, 1)), (1, (5,))]])
def test_path_friendship_degrees_and_cycles(spec):
    g = gen_path_friendship(spec)
    s, k = spec.s, spec.k
    ds = degree_sequence(g)
    assert (g.n, g.m) == (spec.n, spec.m)
    assert ds.count(1) == k
    if 2 * s + k > 2:
        assert ds.count(2 * s + k) == 1
        assert ds.count(2) == g.n - k - 1
    c3, _, c4 = count_subgraphs(g)
    assert c3 == s and c4 == 0
    assert len(nx.cycle_basis(to_nx(g))) == s


def test_components_examples():
    assert len(components(Graph.empty(3))) == 3
    assert is_connected(Graph.complete(3))


def test_count_subgraphs_examples():
    assert count_subgraphs(Graph.complete(3)) == (1, 3, 0)
    assert count_subgraphs(gen_cycle(4)) == (0, 4, 1)


@given(graphs(max_n=8))
def test_counts_match_networkx(g):
    h = to_nx(g)
    c3, p3, c4 = count_subgraphs(g)
    assert c3 == sum(nx.triangles(h).values()) // 3
    assert p3 == sum(d * (d - 1) // 2 for _, d in h.degree())
    assert len(components(g)) == nx.number_connected_components(h) if g.n else True


@given(graph_and_perm())
def test_relabel_preserves_structure(gp):
    g, perm = gp
    h = g.relabel(perm)
    assert nx.is_isomorphic(to_nx(g), to_nx(h))
    for u, v in g.edges():
        assert h.has_edge(perm[u], perm[v])
