"""Maximal planar subgraphs (MPS) of a host graph, up to its symmetries.

An MPS ``M = G - R`` is planar while ``M + r`` is nonplanar for every
removed edge ``r``. Planarity is monotone under deletion, so the removed
sets ``R`` are exactly the inclusion-minimal planarizing edge sets; they
are found level by level, Apriori-style, extending only sets that do not
planarize yet.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from .graph import (
    Edge,
    GraphError,
    Permutation,
    SmallGraph,
    apply_to_mask,
    automorphism_group,
    delta_to_wye,
    edge_permutation,
    iter_bits,
    orbit_dedup,
)
from .planarity import is_planar


@dataclass(frozen=True)
class MpsRecord:
    host: SmallGraph
    removed: int  # bitmask over host.edges
    orbit_size: int
    stabilizer: tuple[Permutation, ...] = field(default=(), repr=False, compare=False)

    @property
    def fragments(self) -> list[Edge]:
        return self.host.edges_of(self.removed)

    @property
    def k(self) -> int:
        return self.removed.bit_count()

    @property
    def subgraph(self) -> SmallGraph:
        return self.host.edge_subgraph(self.host.all_edges_mask & ~self.removed)

    def removed_labels(self) -> list[str]:
        return [self.host.edge_label(e) for e in self.fragments]


def is_maximal_planar(g: SmallGraph, m: SmallGraph) -> bool:
    """True iff ``m`` is planar and adding back any single edge of ``g - m`` breaks that."""
    if not m.is_subgraph_of(g):
        raise GraphError("candidate is not a spanning subgraph of the host")
    if not is_planar(m):
        return False
    missing = [e for e in g.edges if not m.has_edge(*e)]
    return all(not is_planar(m.add_edges([e])) for e in missing)


_RAW_CACHE: dict[SmallGraph, tuple[int, ...]] = {}


def raw_removed_sets(g: SmallGraph) -> list[int]:
    """Every removed-edge bitmask whose complement is an MPS of ``g``."""
    hit = _RAW_CACHE.get(g)
    if hit is None:
        hit = _RAW_CACHE[g] = tuple(_raw_removed_sets(g))
    return list(hit)


def _raw_removed_sets(g: SmallGraph) -> list[int]:
    if not g.is_connected():
        raise GraphError("host must be connected")
    full = g.all_edges_mask
    if is_planar(g):
        raise GraphError("host is already planar; nothing to remove")
    planar_cache: dict[int, bool] = {}

    def planar_without(mask: int) -> bool:
        hit = planar_cache.get(mask)
        if hit is None:
            hit = planar_cache[mask] = is_planar(g.edge_subgraph(full & ~mask))
        return hit

    found: list[int] = []
    level = [0]  # non-planarizing sets of the current size
    m = g.m
    while level:
        nxt: set[int] = set()
        for mask in level:
            top = mask.bit_length()
            for i in range(top, m):
                cand = mask | 1 << i
                # every subset one smaller must also be non-planarizing
                if any(
                    planar_cache.get(cand & ~(1 << j), True)
                    for j in iter_bits(cand)
                    if j != i
                ):
                    continue
                if planar_without(cand):
                    found.append(cand)
                else:
                    nxt.add(cand)
        level = sorted(nxt)
    return sorted(found, key=lambda x: (x.bit_count(), x))


def stabilizer(g: SmallGraph, removed: int, group: Sequence[Permutation]) -> tuple[Permutation, ...]:
    """Automorphisms of ``g`` mapping the edge set ``removed`` onto itself."""
    return tuple(
        p for p in group if apply_to_mask(edge_permutation(g, p), removed) == removed
    )


def enumerate_mps(g: SmallGraph, group: Sequence[Permutation] | None = None) -> list[MpsRecord]:
    """All MPS of ``g`` up to automorphism, smallest removal first."""
    group = automorphism_group(g) if group is None else list(group)
    raw = raw_removed_sets(g)
    return [
        MpsRecord(g, rep, size, stabilizer(g, rep, group))
        for rep, size in orbit_dedup(g, raw, group)
    ]


@dataclass
class TransferReport:
    """Outcome of checking MPS of a Delta-Y image against images of MPS of the source."""

    triangle: tuple[int, int, int]
    source_count: int  # MPS of G containing the triangle (= their Delta-Y images)
    checked: int  # MPS of H containing the whole Y
    failures: list[int]  # removed masks (over H's edges) with no covering element of S'

    @property
    def passed(self) -> bool:
        return not self.failures


def _removed_sets_or_self(g: SmallGraph) -> list[int]:
    # a planar graph is its own unique MPS
    return [0] if is_planar(g) else raw_removed_sets(g)


def verify_mps_transfer(g: SmallGraph, triangle: Sequence[int]) -> TransferReport:
    """Check that every MPS of ``H = delta_to_wye(g, triangle)`` keeping the Y
    sits inside the Delta-Y image of some MPS of ``g`` keeping the triangle.

    Planar ``g`` is accepted: both sides then have the single MPS ``g``/``H``.
    """
    a, b, c = sorted(triangle)
    h = delta_to_wye(g, (a, b, c))
    w = g.n
    tri_mask = g.edge_mask([(a, b), (b, c), (a, c)])
    images = []
    for removed in _removed_sets_or_self(g):
        if removed & tri_mask:
            continue
        m = g.edge_subgraph(g.all_edges_mask & ~removed)
        images.append(delta_to_wye(m, (a, b, c)))
    y_mask = h.edge_mask([(a, w), (b, w), (c, w)])
    failures, checked = [], 0
    for removed in _removed_sets_or_self(h):
        if removed & y_mask:
            continue
        checked += 1
        mh = h.edge_subgraph(h.all_edges_mask & ~removed)
        if not any(mh.is_subgraph_of(img) for img in images):
            failures.append(removed)
    return TransferReport((a, b, c), len(images), checked, failures)


def size_histogram(records: Sequence[MpsRecord]) -> dict[int, int]:
    out: dict[int, int] = {}
    for r in records:
        out[r.k] = out.get(r.k, 0) + 1
    return dict(sorted(out.items()))


def no_single_edge_planarizes(g: SmallGraph) -> bool:
    return all(not is_planar(g.remove_edges([e])) for e in g.edges)


__all__ = [
    "MpsRecord",
    "TransferReport",
    "enumerate_mps",
    "is_maximal_planar",
    "no_single_edge_planarizes",
    "raw_removed_sets",
    "size_histogram",
    "stabilizer",
    "verify_mps_transfer",
]
