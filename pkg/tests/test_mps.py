import random

import pytest

from petersen_conflict.graph import (
    GraphError,
    automorphism_group,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    orbit_dedup,
)
from petersen_conflict.mps import (
    enumerate_mps,
    is_maximal_planar,
    no_single_edge_planarizes,
    raw_removed_sets,
    size_histogram,
    verify_mps_transfer,
)
from petersen_conflict.planarity import is_planar


def test_maximality_examples():
    k6 = complete_graph(6)
    octa = k6.remove_edges([(0, 1), (2, 3), (4, 5)])
    assert is_maximal_planar(k6, octa)
    assert not is_maximal_planar(k6, k6.remove_edges([(0, 1)]))
    star = k6.remove_edges([(0, 1), (0, 2), (0, 3), (0, 4)])
    assert not is_maximal_planar(k6, star)  # K5 survives on the other vertices
    five = k6.remove_edges([(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)])
    assert is_planar(five) and not is_maximal_planar(k6, five)


def test_maximality_needs_subgraph():
    with pytest.raises(GraphError):
        is_maximal_planar(cycle_graph(4), complete_graph(4))


def test_k6_records():
    recs = enumerate_mps(complete_graph(6))
    assert [r.k for r in recs] == [3, 3]
    assert sorted(r.orbit_size for r in recs) == [15, 180]


def test_planar_host_rejected():
    with pytest.raises(GraphError):
        raw_removed_sets(complete_graph(4))


def test_orbit_sizes_sum_to_raw(analyses):
    for h in analyses.values():
        assert sum(r.record.orbit_size for r in h.records) == h.raw_count


def test_raw_sets_are_exactly_the_mps(members):
    for name in ("K6", "G9", "PG"):
        g = members[name].graph
        for mask in raw_removed_sets(g):
            assert is_maximal_planar(g, g.edge_subgraph(g.all_edges_mask & ~mask))


def test_relabelled_host_same_orbit_multiset(members):
    rng = random.Random(7)
    for name in ("K331", "G9"):
        g = members[name].graph
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        a = sorted((r.k, r.orbit_size) for r in enumerate_mps(g))
        b = sorted((r.k, r.orbit_size) for r in enumerate_mps(h))
        assert a == b


def test_records_are_pairwise_inequivalent(analyses):
    for h in analyses.values():
        g = h.member.graph
        masks = [r.record.removed for r in h.records]
        assert len(orbit_dedup(g, masks, automorphism_group(g))) == len(masks)


def test_no_single_edge_planarizes(members):
    assert all(no_single_edge_planarizes(fg.graph) for fg in members.values())


def test_k6_and_pg_sizes(analyses):
    assert size_histogram([r.record for r in analyses["K6"].records]) == {3: 2}
    # a record with three removed edges is the Petersen-graph discrepancy
    assert size_histogram([r.record for r in analyses["PG"].records]) == {2: 1, 3: 1}


def test_transfer_k331_and_k6(members):
    k = members["K331"]
    r = verify_mps_transfer(k.graph, [k.v("v"), k.v("c"), k.v("z")])
    assert r.passed and r.checked > 0
    k6 = complete_graph(6)
    for t in k6.triangles():
        assert verify_mps_transfer(k6, t).passed


def test_transfer_planar_host_is_trivial():
    g = complete_graph(4)
    r = verify_mps_transfer(g, (0, 1, 2))
    assert r.passed and (r.source_count, r.checked) == (1, 1)


def test_transfer_detects_non_triangle():
    with pytest.raises(GraphError):
        verify_mps_transfer(complete_multipartite(3, 3), (0, 1, 3))
