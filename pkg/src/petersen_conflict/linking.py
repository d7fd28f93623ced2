"""Mod-2 linking in potentially flat embeddings.

``M`` sits on a sphere; every fragment (removed edge) is an arc lying
entirely above or entirely below it. Projecting radially onto the sphere
gives a link diagram: an arc's shadow is a *route* through the faces of
``M``, crossing sphere edges transversally. "Over" means farther from the
centre, so

* an Above arc passes over every sphere edge and every Below arc,
* a sphere edge passes over every Below arc,
* two sphere edges never cross,
* for two arcs on the same side the over/under data is free; it enters
  only through the tangle bits ``m[a, b]`` = parity of crossings where
  ``a`` passes over ``b``.

The mod-2 linking number of disjoint cycles ``C1``, ``C2`` is the parity
of crossings where ``C1`` passes over ``C2``.

Route crossings between two arcs are counted combinatorially: each face
is a disk whose boundary is its dart walk, a route draws one chord per
face it visits, and two chords in the same face cross iff their endpoints
interleave on the boundary.
"""

from __future__ import annotations

import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .graph import Cycle, Edge, GraphError, SmallGraph, disjoint_cycle_pairs, enumerate_cycles
from .mps import MpsRecord
from .planarity import Dart, SphereEmbedding, cycle_separation_parity, face_path

ABOVE, BELOW = 0, 1


@dataclass(frozen=True)
class ArcRouting:
    """Shadow of one fragment arc on the sphere.

    ``start``/``end`` are corners ``(face, position)`` at the fragment's
    endpoints; ``steps`` are ``(face, dart)`` pairs, each leaving ``face``
    across the edge of ``dart``.
    """

    fragment: Edge
    start: tuple[int, int]
    steps: tuple[tuple[int, Dart], ...]
    end: tuple[int, int]

    @property
    def crossed_edges(self) -> list[Edge]:
        return [(min(d), max(d)) for _, d in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


def _corner_in(emb: SphereEmbedding, v: int, face: int) -> tuple[int, int]:
    for fi, pos in emb.vertex_corners[v]:
        if fi == face:
            return fi, pos
    raise GraphError(f"vertex {v} is not on face {face}")


def route_arc(emb: SphereEmbedding, fragment: Edge) -> ArcRouting:
    """Shortest route for ``fragment``: fewest sphere edges crossed.

    Breadth-first over faces with the smallest face index winning ties.
    """
    u, v = fragment
    n = emb.graph.n
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise GraphError(f"fragment {fragment} does not join two vertices of M")
    if not emb.vertex_corners[u] or not emb.vertex_corners[v]:
        raise GraphError(f"fragment {fragment} has an endpoint not embedded in M")
    steps = face_path(emb, set(emb.faces_at(u)), set(emb.faces_at(v)))
    assert steps is not None  # M is connected
    first = steps[0][0] if steps else min(set(emb.faces_at(u)) & set(emb.faces_at(v)))
    if steps:
        last_dart = steps[-1][1]
        last = emb.dart_face[(last_dart[1], last_dart[0])][0]
    else:
        last = first
    return ArcRouting(fragment, _corner_in(emb, u, first), tuple(steps), _corner_in(emb, v, last))


def random_route(emb: SphereEmbedding, fragment: Edge, rng: random.Random, max_steps: int = 40) -> ArcRouting:
    """A random (not necessarily shortest) route, for invariance testing."""
    u, v = fragment
    corners_u = emb.vertex_corners[u]
    corners_v = emb.vertex_corners[v]
    target = {fi for fi, _ in corners_v}
    while True:
        start = rng.choice(corners_u)
        face = start[0]
        steps: list[tuple[int, Dart]] = []
        # keep walking with some probability even after reaching a target face
        while len(steps) < max_steps:
            if face in target and rng.random() < 0.5:
                break
            d = rng.choice(emb.faces[face].darts)
            steps.append((face, d))
            face = emb.dart_face[(d[1], d[0])][0]
        if face in target:
            end = rng.choice([c for c in corners_v if c[0] == face])
            return ArcRouting(fragment, start, tuple(steps), end)


def _chords(
    emb: SphereEmbedding, ri: int, route: ArcRouting, param: dict[tuple[int, int], float]
) -> list[tuple[int, float, float]]:
    """Chords ``(face, p, q)`` of route ``ri``; ``param`` places each crossing on its edge."""
    out = []
    face, pos = route.start
    here = float(pos)
    for k, (f, d) in enumerate(route.steps):
        s = param[(ri, k)]
        fpos = emb.dart_face[d][1]
        t = s if d[0] < d[1] else 1.0 - s
        out.append((f, here, fpos + t))
        back = (d[1], d[0])
        bface, bpos = emb.dart_face[back]
        here = bpos + (1.0 - t)
        face = bface
    out.append((face, here, float(route.end[1])))
    return out


def _interleave(p1: float, q1: float, p2: float, q2: float) -> bool:
    if len({p1, q1, p2, q2}) < 4:
        return False  # shared corner: only arcs with a common endpoint
    lo, hi = min(p1, q1), max(p1, q1)
    return (lo < p2 < hi) != (lo < q2 < hi)


def crossing_matrix(emb: SphereEmbedding, routes: Sequence[ArcRouting]) -> list[list[int]]:
    """Pairwise crossing counts between route shadows drawn together."""
    # Place every crossing point on its edge, evenly, in route order.
    per_edge: dict[Edge, list[tuple[int, int]]] = {}
    for ri, r in enumerate(routes):
        for k, (_, d) in enumerate(r.steps):
            per_edge.setdefault((min(d), max(d)), []).append((ri, k))
    param: dict[tuple[int, int], float] = {}
    for pts in per_edge.values():
        for j, key in enumerate(pts):
            param[key] = (j + 1) / (len(pts) + 1)
    chords = [_chords(emb, ri, r, param) for ri, r in enumerate(routes)]
    k = len(routes)
    out = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            count = 0
            for f1, p1, q1 in chords[i]:
                for f2, p2, q2 in chords[j]:
                    if f1 == f2 and _interleave(p1, q1, p2, q2):
                        count += 1
            out[i][j] = out[j][i] = count
    return out


@dataclass(frozen=True)
class ParityCertificate:
    c1: Cycle
    c2: Cycle
    parity: int
    contributions: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class Diagram:
    """Per-(record, embedding) data shared by all configurations."""

    record: MpsRecord
    embedding: SphereEmbedding
    routes: tuple[ArcRouting, ...]

    @property
    def host(self) -> SmallGraph:
        return self.record.host

    @cached_property
    def fragment_bits(self) -> tuple[int, ...]:
        idx = self.host.edge_index
        return tuple(idx[e] for e in self.record.fragments)

    @cached_property
    def cross_masks(self) -> tuple[int, ...]:
        """Per fragment: host-edge mask of sphere edges crossed an odd number of times."""
        idx = self.host.edge_index
        out = []
        for r in self.routes:
            mask = 0
            for e in r.crossed_edges:
                mask ^= 1 << idx[e]
            out.append(mask)
        return tuple(out)

    @cached_property
    def route_crossings(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row) for row in crossing_matrix(self.embedding, self.routes))

    def fragments_in(self, cycle: Cycle) -> list[int]:
        return [i for i, b in enumerate(self.fragment_bits) if cycle.emask >> b & 1]

    def sphere_mask(self, cycle: Cycle) -> int:
        return cycle.emask & ~self.record.removed


def build_diagram(rec: MpsRecord, emb: SphereEmbedding, routes: Sequence[ArcRouting] | None = None) -> Diagram:
    if routes is None:
        routes = [route_arc(emb, f) for f in rec.fragments]
    return Diagram(rec, emb, tuple(routes))


@dataclass(frozen=True, eq=False)
class Configuration:
    """Sides per fragment plus tangle bits for same-side ordered pairs.

    ``sides[i]`` is ``ABOVE`` or ``BELOW``; ``tangle`` maps ordered index
    pairs ``(i, j)`` of same-side fragments to a bit.
    """

    diagram: Diagram
    sides: tuple[int, ...]
    tangle: dict[tuple[int, int], int] = field(hash=False)
    index: int = 0

    @property
    def record(self) -> MpsRecord:
        return self.diagram.record

    @property
    def embedding(self) -> SphereEmbedding:
        return self.diagram.embedding

    def m(self, i: int, j: int) -> int:
        return self.tangle[(i, j)]

    def describe(self) -> dict:
        g = self.record.host
        frags = self.record.fragments
        return {
            "sides": {g.edge_label(f): ("above", "below")[s] for f, s in zip(frags, self.sides)},
            "tangle": {
                f"{g.edge_label(frags[i])}>{g.edge_label(frags[j])}": b
                for (i, j), b in sorted(self.tangle.items())
            },
        }


def same_side_pairs(sides: Sequence[int]) -> list[tuple[int, int]]:
    k = len(sides)
    return [(i, j) for i in range(k) for j in range(k) if i != j and sides[i] == sides[j]]


def configurations(
    rec: MpsRecord,
    emb: SphereEmbedding,
    diagram: Diagram | None = None,
    realizable_only: bool = True,
) -> Iterator[Configuration]:
    """Every (sides, tangle bits) choice, sides outermost, in a fixed order.

    In an actual drawing ``m[a, b] + m[b, a]`` equals the number of times
    the two shadows cross, so each same-side pair has one free bit (the
    +1 / -1 tangle). ``realizable_only=False`` frees both ordered bits,
    which also admits tangle data no spatial embedding has.
    """
    diagram = build_diagram(rec, emb) if diagram is None else diagram
    index = 0
    for sides in product((ABOVE, BELOW), repeat=rec.k):
        for tangle in _tangles(diagram, sides, realizable_only):
            yield Configuration(diagram, sides, tangle, index)
            index += 1


def _tangles(diagram: Diagram, sides: Sequence[int], realizable_only: bool) -> Iterator[dict[tuple[int, int], int]]:
    pairs = same_side_pairs(sides)
    if not realizable_only:
        for bits in product((0, 1), repeat=len(pairs)):
            yield dict(zip(pairs, bits))
        return
    xing = diagram.route_crossings
    free = [(i, j) for i, j in pairs if i < j]
    for bits in product((0, 1), repeat=len(free)):
        tangle = {}
        for (i, j), b in zip(free, bits):
            tangle[(i, j)] = b
            tangle[(j, i)] = b ^ (xing[i][j] & 1)
        yield tangle


def configuration_count(k: int, realizable_only: bool = True) -> int:
    per_pair = 2 if realizable_only else 4
    total = 0
    for sides in product((0, 1), repeat=k):
        same = sum(1 for i in range(k) for j in range(i + 1, k) if sides[i] == sides[j])
        total += per_pair**same
    return total


def is_realizable(config: Configuration) -> bool:
    xing = config.diagram.route_crossings
    return all(
        b ^ config.tangle[(j, i)] == xing[i][j] & 1
        for (i, j), b in config.tangle.items()
        if i < j
    )


def _check_disjoint(c1: Cycle, c2: Cycle) -> None:
    if c1.vmask & c2.vmask:
        raise GraphError("cycles are not vertex-disjoint")


def transported_tangle(
    config: Configuration, routes: Sequence[ArcRouting]
) -> dict[tuple[int, int], int]:
    """Tangle bits re-expressed for a different set of routes.

    Rerouting arc ``a`` sweeps its shadow across endpoints of other arcs.
    Near such an endpoint the other arc hugs the sphere, so an Above ``a``
    passes over it (``m[a, b]`` flips) and a Below ``a`` passes under it
    (``m[b, a]`` flips). Fragments are moved one at a time in index order.
    """
    diagram = config.diagram
    emb = diagram.embedding
    current = list(diagram.routes)
    tangle = dict(config.tangle)
    for a, new in enumerate(routes):
        if new == current[a]:
            continue
        before = crossing_matrix(emb, current)
        current[a] = new
        after = crossing_matrix(emb, current)
        for b in range(len(current)):
            if b == a or config.sides[a] != config.sides[b]:
                continue
            if (before[a][b] ^ after[a][b]) & 1:
                key = (a, b) if config.sides[a] == ABOVE else (b, a)
                tangle[key] ^= 1
    return tangle


def linking_parity(
    config: Configuration,
    c1: Cycle,
    c2: Cycle,
    routes: Sequence[ArcRouting] | None = None,
    explain: list[str] | None = None,
) -> int:
    """Parity of crossings where ``c1`` passes over ``c2``.

    With ``routes`` the arcs are drawn along those shadows instead of the
    canonical ones and the tangle bits are transported accordingly.
    """
    _check_disjoint(c1, c2)
    d = config.diagram
    if routes is None:
        cross, xing, tangle = d.cross_masks, d.route_crossings, config.tangle
    else:
        alt = build_diagram(d.record, d.embedding, routes)
        cross, xing = alt.cross_masks, alt.route_crossings
        tangle = transported_tangle(config, routes)
    sides = config.sides
    f1, f2 = d.fragments_in(c1), d.fragments_in(c2)
    s1, s2 = d.sphere_mask(c1), d.sphere_mask(c2)
    host = d.host
    frags = d.record.fragments
    parity = 0

    def note(bit: int, text: str) -> None:
        if bit and explain is not None:
            explain.append(text)

    for a in f1:
        if sides[a] == ABOVE:
            bit = (cross[a] & s2).bit_count() & 1
            parity ^= bit
            note(bit, f"{host.edge_label(frags[a])} above crosses C2 on the sphere")
        for b in f2:
            if sides[a] == sides[b]:
                bit = tangle[(a, b)]
                note(bit, f"tangle {host.edge_label(frags[a])} over {host.edge_label(frags[b])}")
            elif sides[a] == ABOVE:
                bit = xing[a][b] & 1
                note(bit, f"{host.edge_label(frags[a])} above crosses {host.edge_label(frags[b])} below")
            else:
                bit = 0
            parity ^= bit
    for b in f2:
        if sides[b] == BELOW:
            bit = (cross[b] & s1).bit_count() & 1
            parity ^= bit
            note(bit, f"C1 sphere edges over {host.edge_label(frags[b])} below")
    return parity


@dataclass(frozen=True, eq=False)
class PairTable:
    """Host cycles and disjoint cycle pairs, computed once per host."""

    host: SmallGraph
    cycles: tuple[Cycle, ...]
    pairs: tuple[tuple[Cycle, Cycle], ...]


_PAIR_CACHE: dict[SmallGraph, PairTable] = {}


def pair_table(host: SmallGraph) -> PairTable:
    hit = _PAIR_CACHE.get(host)
    if hit is None:
        cycles = enumerate_cycles(host)
        hit = _PAIR_CACHE[host] = PairTable(host, tuple(cycles), tuple(disjoint_cycle_pairs(host, cycles)))
    return hit


def find_odd_pair(config: Configuration) -> ParityCertificate | None:
    """First disjoint cycle pair of the host with odd linking parity."""
    for c1, c2 in pair_table(config.record.host).pairs:
        if linking_parity(config, c1, c2):
            why: list[str] = []
            linking_parity(config, c1, c2, explain=why)
            return ParityCertificate(c1, c2, 1, tuple(why))
    return None


def configuration_sum(config: Configuration) -> int:
    """Parity of the sum of linking parities over all disjoint cycle pairs."""
    total = 0
    for c1, c2 in pair_table(config.record.host).pairs:
        total ^= linking_parity(config, c1, c2)
    return total


# ---------------------------------------------------------------------------
# Fast exhaustive search
# ---------------------------------------------------------------------------


@dataclass
class SearchResult:
    configurations: int
    unlinked: list[Configuration]
    sums: set[int]
    samples: list[tuple[Configuration, ParityCertificate]]

    @property
    def all_linked(self) -> bool:
        return not self.unlinked


def search_diagram(
    diagram: Diagram,
    samples: int = 2,
    stop_on_unlinked: bool = False,
    realizable_only: bool = True,
) -> SearchResult:
    """Check every configuration of one (record, embedding) for an odd pair.

    Each pair's parity is a fixed part from the sides plus the XOR of the
    tangle bits it uses; the fixed parts are computed once per side
    assignment so the inner loop is bit arithmetic.
    """
    rec = diagram.record
    pairs = pair_table(rec.host).pairs
    info = [
        (diagram.fragments_in(c1), diagram.fragments_in(c2), diagram.sphere_mask(c1), diagram.sphere_mask(c2))
        for c1, c2 in pairs
    ]
    cross, xing = diagram.cross_masks, diagram.route_crossings
    result = SearchResult(0, [], set(), [])
    index = 0
    for sides in product((ABOVE, BELOW), repeat=rec.k):
        rows = []  # (fixed parity, tangle keys used) per cycle pair
        for f1, f2, s1, s2 in info:
            fixed, keys = 0, []
            for a in f1:
                if sides[a] == ABOVE:
                    fixed ^= (cross[a] & s2).bit_count() & 1
                for b in f2:
                    if sides[a] == sides[b]:
                        keys.append((a, b))
                    elif sides[a] == ABOVE:
                        fixed ^= xing[a][b] & 1
            for b in f2:
                if sides[b] == BELOW:
                    fixed ^= (cross[b] & s1).bit_count() & 1
            rows.append((fixed, keys))
        for tangle in _tangles(diagram, sides, realizable_only):
            result.configurations += 1
            total, first = 0, -1
            for p, (fixed, keys) in enumerate(rows):
                par = fixed
                for key in keys:
                    par ^= tangle[key]
                total ^= par
                if par and first < 0:
                    first = p
            result.sums.add(total)
            if first < 0 or len(result.samples) < samples:
                config = Configuration(diagram, sides, tangle, index)
                if first < 0:
                    result.unlinked.append(config)
                    if stop_on_unlinked:
                        return result
                else:
                    result.samples.append((config, find_odd_pair(config)))
            index += 1
    return result


# ---------------------------------------------------------------------------
# Pairwise sub-models feeding the conflict graph
# ---------------------------------------------------------------------------


def _cycles_with_fragments(diagram: Diagram, wanted: int) -> list[Cycle]:
    """Host cycles whose fragment edges are exactly the mask ``wanted``."""
    removed = diagram.record.removed
    return [c for c in pair_table(diagram.host).cycles if c.emask & removed == wanted]


def pairwise_base_parities(diagram: Diagram, e: int, f: int) -> set[int]:
    """Parities of (C1 through e only, C2 through f only), both arcs Above, m = 0.

    ``e`` and ``f`` are fragment indices.
    """
    if e == f:
        raise GraphError("need two distinct fragments")
    bits = diagram.fragment_bits
    ones = _cycles_with_fragments(diagram, 1 << bits[e])
    twos = _cycles_with_fragments(diagram, 1 << bits[f])
    cross = diagram.cross_masks[e]
    out = set()
    for c1 in ones:
        for c2 in twos:
            if not c1.vmask & c2.vmask:
                out.add((cross & diagram.sphere_mask(c2)).bit_count() & 1)
    return out


def anti_conflict_witness(diagram: Diagram, e: int, f: int) -> ParityCertificate | None:
    """A cycle through both arcs and a disjoint cycle of ``M`` separating ``e``'s ends.

    With ``e`` and ``f`` on opposite sides such a pair has odd linking
    parity whatever the rest of the configuration.
    """
    if e == f:
        raise GraphError("need two distinct fragments")
    bits = diagram.fragment_bits
    both = _cycles_with_fragments(diagram, 1 << bits[e] | 1 << bits[f])
    plain = _cycles_with_fragments(diagram, 0)
    u, v = diagram.record.fragments[e]
    for c1 in both:
        for c2 in plain:
            if c1.vmask & c2.vmask:
                continue
            if cycle_separation_parity(diagram.embedding, c2, u, v):
                label = diagram.host.edge_label(diagram.record.fragments[e])
                return ParityCertificate(c1, c2, 1, (f"C2 separates the ends of {label}",))
    return None
