from __future__ import annotations

import json
from collections import Counter

import numpy as np
import pytest

from lapspec import search
from lapspec.canon import canonical_form
from lapspec.graph import Graph, PathFriendshipSpec, gen_path, gen_path_friendship, is_connected
from lapspec.oracles import brute_class_count
from lapspec.search import (
    BudgetExceeded,
    CospectralClass,
    EnumFilter,
    certify_dls,
    cospectral_classes,
    enumerate_graphs,
    scope_classes,
)
from lapspec.spectral import laplacian_array


def _atlas_counts(atlas, n, connected=False):
    return Counter(g.m for g in atlas if g.n == n and (not connected or is_connected(g)))


@pytest.mark.parametrize("n", range(0, 8))
def test_counts_by_edges_match_atlas(atlas, n):
    got = Counter(g.m for g in enumerate_graphs(EnumFilter(n)))
    assert got == _atlas_counts(atlas, n)
    got_c = Counter(g.m for g in enumerate_graphs(EnumFilter(n, connected_only=True)))
    assert got_c == _atlas_counts(atlas, n, connected=True)


def test_examples():
    assert sum(1 for _ in enumerate_graphs(EnumFilter(4))) == 11
    assert sum(1 for _ in enumerate_graphs(EnumFilter(5, connected_only=True))) == 21
    (k3,) = enumerate_graphs(EnumFilter(3, 3))
    assert k3 == Graph.complete(3)


def test_no_duplicates_and_canonical():
    graphs = list(enumerate_graphs(EnumFilter(7)))
    forms = [canonical_form(g) for g in graphs]
    assert len(set(forms)) == len(forms) == 1044


def test_single_level_matches_brute_force():
    for n in range(2, 7):
        for m in range(n * (n - 1) // 2 + 1):
            assert sum(1 for _ in enumerate_graphs(EnumFilter(n, m))) == brute_class_count(n, m)


def test_degree_cap():
    capped = list(enumerate_graphs(EnumFilter(7, degree_cap=2)))
    full = [g for g in enumerate_graphs(EnumFilter(7)) if max(g.degrees(), default=0) <= 2]
    assert sorted(map(canonical_form, capped)) == sorted(map(canonical_form, full))
    dense = list(enumerate_graphs(EnumFilter(7, 15, degree_cap=5)))
    assert all(max(g.degrees()) <= 5 and g.m == 15 for g in dense)
    assert len(dense) == sum(1 for g in enumerate_graphs(EnumFilter(7, 15)) if max(g.degrees()) <= 5)


def test_parallel_order_matches_serial():
    serial = [g.rows for g in enumerate_graphs(EnumFilter(7, 9))]
    parallel = [g.rows for g in enumerate_graphs(EnumFilter(7, 9), workers=2)]
    assert serial == parallel


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        next(enumerate_graphs(EnumFilter(12, 3)))
    with pytest.raises(BudgetExceeded):
        certify_dls(gen_path(12))


def _numeric_classes(atlas, n):
    """Group atlas graphs by rounded numpy spectrum."""
    groups = Counter()
    for g in atlas:
        if g.n == n:
            vals = np.linalg.eigvalsh(laplacian_array(g)) if n else np.zeros(0)
            groups[tuple(np.round(vals, 6))] += 1
    return sorted(groups.values())


@pytest.mark.parametrize("n", range(0, 8))
def test_classes_match_numeric_oracle(atlas, n):
    classes = cospectral_classes(enumerate_graphs(EnumFilter(n)))
    assert sorted(len(c.members) for c in classes) == _numeric_classes(atlas, n)


def test_small_orders_are_singletons():
    for n in range(5):
        assert all(len(c.members) == 1 for c in cospectral_classes(enumerate_graphs(EnumFilter(n))))
    pairs = [c for c in cospectral_classes(enumerate_graphs(EnumFilter(6))) if len(c.members) > 1]
    assert len(pairs) == 2 and all(len(c.members) == 2 for c in pairs)


def test_isomorphic_inputs_deduplicated():
    g = gen_path(5)
    classes = cospectral_classes([g, g.relabel([4, 3, 2, 1, 0]), g.relabel([1, 0, 2, 3, 4])])
    assert len(classes) == 1 and len(classes[0].members) == 1


def test_class_json_roundtrip():
    c = CospectralClass((0, 3, -4, 1), ["BW"])
    d = json.loads(c.to_json())
    assert d["charpoly"] == ["0", "3", "-4", "1"]
    assert CospectralClass.from_json(c.to_json()) == c


def test_cache_layout(tmp_path, monkeypatch):
    monkeypatch.setattr(search, "_memo", {})
    classes = scope_classes(6, 7, cache_dir=tmp_path)
    path = tmp_path / "n6" / "m7" / "classes.jsonl"
    assert path.exists()
    lines = path.read_text().splitlines()
    assert len(lines) == len(classes)
    monkeypatch.setattr(search, "_memo", {})
    again = scope_classes(6, 7, cache_dir=tmp_path)
    assert [c.members for c in again] == [c.members for c in classes]


def test_certify_paw():
    cert = certify_dls(gen_path_friendship(PathFriendshipSpec(1, (1,))))
    assert cert.is_dls and cert.examined == 2 and cert.n == 4 and cert.m == 4


def test_certify_finds_mate():
    pair = next(c for c in cospectral_classes(enumerate_graphs(EnumFilter(6))) if len(c.members) > 1)
    from lapspec.graph6 import from_graph6

    cert = certify_dls(from_graph6(pair.members[0]))
    assert cert.verdict == "mate-found" and cert.mates == [pair.members[1]]
