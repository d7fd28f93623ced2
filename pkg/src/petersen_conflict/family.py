"""The seven Petersen-family graphs, labelled the way the proofs name them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import (
    GraphError,
    SmallGraph,
    build_graph,
    delta_to_wye,
    enumerate_cycles,
    is_isomorphic,
    wye_to_delta,
)

FAMILY_NAMES = ("K6", "K331", "G7", "G8", "G9", "K44me", "PG")

ALIASES = {
    "K6": "K6",
    "K331": "K331",
    "K3,3,1": "K331",
    "G7": "G7",
    "G8": "G8",
    "G9": "G9",
    "K44me": "K44me",
    "K44-e": "K44me",
    "K4,4-e": "K44me",
    "PG": "PG",
    "PETERSEN": "PG",
}


@dataclass(frozen=True)
class FamilyGraph:
    name: str
    graph: SmallGraph
    description: str

    def v(self, label: str) -> int:
        return self.graph.vertex_of(label)

    def edge(self, a: str, b: str) -> tuple[int, int]:
        return self.graph.find_edge(a, b)


def _labelled(labels: list[str], pairs: list[tuple[str, str]]) -> SmallGraph:
    pos = {lab: i for i, lab in enumerate(labels)}
    return build_graph(len(labels), [(pos[a], pos[b]) for a, b in pairs], labels)


def _k6() -> SmallGraph:
    labels = [str(i) for i in range(1, 7)]
    return _labelled(labels, list(combinations(labels, 2)))


def _k331() -> SmallGraph:
    labels = ["v", "a", "b", "c", "x", "y", "z"]
    pairs = [("v", u) for u in labels[1:]]
    pairs += [(p, q) for p in "abc" for q in "xyz"]
    return _labelled(labels, pairs)


def _g7() -> SmallGraph:
    # Delta-Y on the triangle (4,5,6) of K6; the new vertex is 7.
    k6 = _k6()
    return delta_to_wye(k6, [k6.vertex_of(s) for s in "456"], label="7")


def _g8() -> SmallGraph:
    # Delta-Y on K331's triangle (v,c,z); the Y centre is w and v keeps degree 5.
    k = _k331()
    return delta_to_wye(k, [k.vertex_of(s) for s in "vcz"], label="w")


def _g9() -> SmallGraph:
    # (0,7,8) is the only triangle; smoothing it away leaves K3,3 on
    # {1,3,5} | {2,4,6}, with 0, 7, 8 subdividing 1-2, 3-4, 5-6.
    labels = [str(i) for i in range(9)]
    pairs = [
        ("0", "7"), ("7", "8"), ("0", "8"),
        ("0", "1"), ("0", "2"),
        ("7", "3"), ("7", "4"),
        ("8", "5"), ("8", "6"),
        ("1", "4"), ("1", "6"), ("3", "2"), ("3", "6"), ("5", "2"), ("5", "4"),
    ]
    return _labelled(labels, pairs)


def _k44me() -> SmallGraph:
    labels = ["1", "2", "3", "8", "5", "6", "7", "4"]
    pairs = [(p, q) for p in "1238" for q in "5674" if (p, q) != ("8", "4")]
    return _labelled(labels, pairs)


def kneser_petersen() -> SmallGraph:
    """Petersen graph on the 2-subsets of {1..5}, adjacent when disjoint."""
    subsets = list(combinations(range(1, 6), 2))
    labels = ["{%d,%d}" % s for s in subsets]
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    return build_graph(len(subsets), edges, labels)


_BUILDERS = {
    "K6": (_k6, "complete graph on 1..6"),
    "K331": (_k331, "v joined to everything; {a,b,c} x {x,y,z}"),
    "G7": (_g7, "K6 with triangle (4,5,6) replaced by the Y centred at 7"),
    "G8": (_g8, "K331 with triangle (v,c,z) replaced by the Y centred at w"),
    "G9": (_g9, "only triangle (0,7,8); K3,3 on {1,3,5} | {2,4,6} after smoothing"),
    "K44me": (_k44me, "K4,4 on {1,2,3,8} | {5,6,7,4} minus (4,8)"),
    "PG": (kneser_petersen, "Kneser graph on 2-subsets of {1..5}"),
}


def canonical_name(name: str) -> str:
    key = ALIASES.get(name) or ALIASES.get(name.upper())
    if key is None:
        raise GraphError(
            f"unknown family member {name!r}; choose from {', '.join(FAMILY_NAMES)}"
        )
    return key


def family_member(name: str) -> FamilyGraph:
    key = canonical_name(name)
    builder, desc = _BUILDERS[key]
    fg = FamilyGraph(key, builder(), desc)
    check_member(fg)
    return fg


def all_members() -> list[FamilyGraph]:
    return [family_member(n) for n in FAMILY_NAMES]


def _girth(g: SmallGraph) -> int:
    cycles = enumerate_cycles(g)
    return min((len(c) for c in cycles), default=0)


def check_member(fg: FamilyGraph) -> None:
    """Structural self-checks; raises ``AssertionError`` on a bad constructor."""
    g = fg.graph
    assert g.m == 15, f"{fg.name}: expected 15 edges, got {g.m}"
    degs = sorted(g.degrees())
    expected = {
        "K6": [5] * 6,
        "K331": [4] * 6 + [6],
        "G7": [3] + [4] * 3 + [5] * 3,
        "G8": [3, 3, 3, 4, 4, 4, 4, 5],
        "G9": [3] * 6 + [4] * 3,
        "K44me": [3, 3] + [4] * 6,
        "PG": [3] * 10,
    }[fg.name]
    assert degs == expected, f"{fg.name}: degree sequence {degs}"
    if fg.name == "G9":
        tris = g.triangles()
        assert [tuple(g.label(v) for v in t) for t in tris] == [("0", "7", "8")]
    elif fg.name == "K44me":
        left = {g.vertex_of(s) for s in "1238"}
        assert all((u in left) != (v in left) for u, v in g.edges)
        assert not g.has_edge(g.vertex_of("4"), g.vertex_of("8"))
    elif fg.name == "PG":
        assert _girth(g) == 5
    elif fg.name == "G8":
        assert g.degree(g.vertex_of("v")) == 5
        assert g.degree(g.vertex_of("w")) == 3
    elif fg.name == "G7":
        assert g.neighbors(g.vertex_of("7")) == [g.vertex_of(s) for s in "456"]


def _neighbours_independent(g: SmallGraph, v: int) -> bool:
    ns = g.neighbors(v)
    return not any(g.has_edge(a, b) for a, b in combinations(ns, 2))


def family_closure(start: SmallGraph | None = None) -> list[SmallGraph]:
    """Isomorphism classes reachable from ``start`` (default K6) by Delta-Y and Y-Delta.

    Y-Delta is only applied where it creates no parallel edges, so every
    class keeps the starting edge count.
    """
    start = _k6() if start is None else start
    classes: list[SmallGraph] = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for g in frontier:
            moves = [delta_to_wye(g, t) for t in g.triangles()]
            moves += [
                wye_to_delta(g, v)
                for v in range(g.n)
                if g.degree(v) == 3 and _neighbours_independent(g, v)
            ]
            for h in moves:
                h = build_graph(h.n, h.edges)
                if not any(is_isomorphic(h, c) for c in classes):
                    classes.append(h)
                    nxt.append(h)
        frontier = nxt
    return classes


def identify(g: SmallGraph) -> str | None:
    """Name of the family member isomorphic to ``g``, if any."""
    for name in FAMILY_NAMES:
        if is_isomorphic(g, family_member(name).graph):
            return name
    return None
