from __future__ import annotations

import io
import logging

import networkx as nx
import pytest
from hypothesis import given

from conftest import from_nx, to_nx
from strategies import graphs

from lapspec.graph import Graph, gen_path
from lapspec.graph6 import Graph6Error, from_graph6, ingest_graph6, read_graph6, to_graph6


def test_small_strings():
    assert from_graph6("B?") == Graph.empty(3)
    k3 = from_graph6("Bw")
    assert k3 == Graph.complete(3)
    # "B_" is a single edge plus an isolated vertex, not the empty graph
    assert from_graph6("B_").m == 1
    assert nx.is_isomorphic(to_nx(from_graph6("B_")), nx.from_graph6_bytes(b"B_"))


def test_order_bound():
    big = Graph.empty(64)
    to_graph6(big)
    with pytest.raises(Exception):
        to_graph6(Graph(65, (0,) * 65))


@given(graphs(max_n=20))
def test_roundtrip_and_networkx_agreement(g):
    s = to_graph6(g)
    assert from_graph6(s) == g
    assert s.encode() == nx.to_graph6_bytes(to_nx(g), header=False).strip()
    assert from_nx(nx.from_graph6_bytes(s.encode())) == g


def test_large_order_prefix():
    g = gen_path(63)
    s = to_graph6(g)
    assert s.startswith("~")
    assert from_graph6(s) == g
    assert from_nx(nx.from_graph6_bytes(s.encode())) == g


def test_header_accepted():
    assert from_graph6(">>graph6<<Bw") == Graph.complete(3)


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x7f", "Bx"])
def test_malformed(bad):
    with pytest.raises(Graph6Error):
        from_graph6(bad)


def test_stream_line_numbers():
    lines = ["C~", "CF", "C!!", "CU"]
    with pytest.raises(Graph6Error) as exc:
        list(read_graph6(lines))
    assert exc.value.line == 3
    assert "line 3" in str(exc.value)


def test_stream_lenient_and_empty(caplog):
    with caplog.at_level(logging.WARNING):
        got = list(read_graph6(["C~", "C!!", "", "CU"], lenient=True))
    assert [to_graph6(g) for g in got] == ["C~", "CU"]
    assert "line 2" in caplog.text
    assert list(read_graph6([])) == []


def test_eleven_four_vertex_graphs(tmp_path):
    four = [from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() == 4]
    assert len(four) == 11
    path = tmp_path / "four.g6"
    path.write_text("\n".join(to_graph6(g) for g in four) + "\n")
    got = list(ingest_graph6(str(path)))
    assert got == four
    empty = tmp_path / "empty.g6"
    empty.write_text("")
    assert list(ingest_graph6(str(empty))) == []


def test_stream_from_file_object():
    assert len(list(read_graph6(io.StringIO("Bw\nB?\n")))) == 2
