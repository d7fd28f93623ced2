from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from petersen_conflict.conflict import (
    NEG,
    POS,
    SignedEdge,
    SignedMultigraph,
    is_balanced,
    strong_conflict_graph,
)
from petersen_conflict.graph import complete_graph
from petersen_conflict.linking import build_diagram, configurations, find_odd_pair
from petersen_conflict.mps import enumerate_mps
from petersen_conflict.planarity import enumerate_sphere_embeddings


def _signed(n, triples):
    return SignedMultigraph(tuple(str(i) for i in range(n)),
                            tuple(SignedEdge((i, j), s, "test") for i, j, s in triples))


def test_balance_examples():
    v = is_balanced(_signed(3, [(0, 1, POS), (1, 2, POS), (0, 2, POS)]))
    assert v.balanced and len(set(v.sides)) == 1
    digon = _signed(2, [(0, 1, POS), (0, 1, NEG)])
    v = is_balanced(digon)
    assert not v.balanced and sorted(e.sign for e in v.odd_cycle) == [POS, NEG]
    assert v.validate(digon)
    tri = _signed(3, [(0, 1, NEG), (1, 2, NEG), (0, 2, NEG)])
    v = is_balanced(tri)
    assert not v.balanced and len(v.odd_cycle) == 3 and v.validate(tri)


def test_duplicate_signed_edge_rejected():
    try:
        _signed(2, [(0, 1, NEG), (0, 1, NEG)])
    except ValueError:
        return
    raise AssertionError("duplicate accepted")


@st.composite
def signed_graphs(draw):
    n = draw(st.integers(1, 7))
    triples = []
    for i, j in combinations(range(n), 2):
        for s in (NEG, POS):
            if draw(st.integers(0, 3)) == 0:
                triples.append((i, j, s))
    return _signed(n, triples)


def _brute_balanced(g):
    for bits in range(1 << g.size):
        s = [1 if bits >> v & 1 else -1 for v in range(g.size)]
        if all((s[e.pair[0]] != s[e.pair[1]]) == (e.sign == NEG) for e in g.edges):
            return True
    return False


@settings(max_examples=200, deadline=None)
@given(signed_graphs(), st.integers(0, 127))
def test_balance_matches_brute_force_and_switching(g, switch_bits):
    v = is_balanced(g)
    assert v.balanced == _brute_balanced(g)
    assert v.validate(g)
    subset = [i for i in range(g.size) if switch_bits >> i & 1]
    assert is_balanced(g.switch(subset)).balanced == v.balanced


def test_certificate_rejects_tampering():
    tri = _signed(3, [(0, 1, NEG), (1, 2, NEG), (0, 2, NEG)])
    v = is_balanced(tri)
    assert not v.validate(_signed(3, [(0, 1, NEG), (1, 2, NEG), (0, 2, POS)]))


def test_octahedron_negative_triangle(analyses):
    rec = next(r for r in analyses["K6"].records if r.record.orbit_size == 15)
    assert sorted(e.sign for e in rec.conflict.edges) == [NEG] * 3


def test_g9_bigons(analyses):
    small = [r for r in analyses["G9"].records if r.record.k == 2]
    assert len(small) == 6
    for r in small:
        assert sorted((e.pair, e.sign) for e in r.conflict.edges) == [((0, 1), POS), ((0, 1), NEG)]
        assert not r.verdict.balanced


def test_single_fragment_toy():
    k5 = complete_graph(5)
    (rec,) = enumerate_mps(k5)
    emb = enumerate_sphere_embeddings(rec.subgraph, rec.stabilizer)[0]
    g = strong_conflict_graph(rec, emb)
    assert g.size == 1 and g.edges == ()
    assert is_balanced(g).balanced


def test_certificates_revalidate(analyses):
    for h in analyses.values():
        for r in h.records:
            assert r.verdict.validate(r.conflict)


def test_unbalanced_certificate_forces_odd_pairs(analyses):
    # an odd negative cycle of certified edges means no side choice avoids
    # every certified odd pair, so each configuration must link
    for h in analyses.values():
        for r in h.records:
            if r.verdict.balanced:
                continue
            for emb in r.embeddings:
                d = build_diagram(r.record, emb)
                assert all(find_odd_pair(c) for c in configurations(r.record, emb, d))


def test_embedding_independence(analyses):
    multi = 0
    for h in analyses.values():
        for r in h.records:
            assert r.embedding_independent
            multi += len(r.embeddings) > 1
    assert multi >= 3


def test_dot_output():
    g = _signed(2, [(0, 1, POS), (0, 1, NEG)])
    dot = g.to_dot("x")
    assert dot.startswith('graph "x" {') and "style=dashed" in dot and "style=solid" in dot
