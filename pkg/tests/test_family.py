import pytest

from petersen_conflict.family import (
    FAMILY_NAMES,
    canonical_name,
    family_closure,
    family_member,
    identify,
    kneser_petersen,
)
from petersen_conflict.graph import GraphError, delta_to_wye, is_isomorphic


def test_every_member_has_15_edges(members):
    assert all(fg.graph.m == 15 for fg in members.values())


def test_g9_triangle(members):
    g = members["G9"].graph
    assert [tuple(g.label(v) for v in t) for t in g.triangles()] == [("0", "7", "8")]


def test_k44me_parts(members):
    g = members["K44me"].graph
    left = {g.vertex_of(s) for s in "1238"}
    assert all((u in left) != (v in left) for u, v in g.edges)
    assert not g.has_edge(g.vertex_of("4"), g.vertex_of("8"))


def test_g8_from_k331(members):
    k = members["K331"]
    g8 = delta_to_wye(k.graph, [k.v("v"), k.v("a"), k.v("x")])
    assert is_isomorphic(g8, members["G8"].graph)
    g = members["G8"].graph
    assert g.degree(g.vertex_of("v")) == 5 and g.degree(g.vertex_of("w")) == 3


def test_g7_from_any_k6_triangle(members):
    k6 = members["K6"].graph
    for t in k6.triangles():
        assert is_isomorphic(delta_to_wye(k6, t), members["G7"].graph)


def test_closure_is_a_bijection(members):
    classes = family_closure()
    assert len(classes) == 7
    assert all(c.m == 15 for c in classes)
    names = [identify(c) for c in classes]
    assert sorted(names) == sorted(FAMILY_NAMES)
    cubic_girth5 = [c for c in classes if set(c.degrees()) == {3} and not c.triangles()]
    assert len(cubic_girth5) == 1
    assert is_isomorphic(cubic_girth5[0], kneser_petersen())


def test_aliases():
    assert canonical_name("K3,3,1") == "K331"
    assert canonical_name("petersen") == "PG"
    with pytest.raises(GraphError):
        family_member("K7")


def test_labels_print_like_proofs(members):
    g = members["G8"]
    assert g.graph.edge_label(g.edge("v", "w")) == "(v,w)"
