from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import settings

from lapspec.graph import Graph

settings.register_profile("lapspec", max_examples=60, deadline=None)
settings.load_profile("lapspec")


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(h.nodes())}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


@pytest.fixture(scope="session")
def atlas():
    """Every graph on at most 7 vertices, from networkx's independent atlas."""
    return [from_nx(h) for h in nx.graph_atlas_g()]
