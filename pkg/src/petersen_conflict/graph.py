"""Small undirected graphs stored as adjacency bitmasks.

Everything here is immutable and cheap to copy. Vertex sets and edge sets
are plain ``int`` bitmasks; edges are enumerated lexicographically by
``(min, max)`` so that an :class:`EdgeSet` is just an int over that order.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

MAX_VERTICES = 16

Edge = tuple[int, int]
Permutation = tuple[int, ...]


class GraphError(ValueError):
    """Raised for malformed graph input."""


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class SmallGraph:
    """Simple graph on vertices ``0..n-1`` with at most 16 vertices.

    ``adj[v]`` is the neighbour bitmask of ``v``. ``labels`` are optional
    display names (e.g. ``"v"``, ``"{1,2}"``) used only for printing.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for w in iter_bits(row):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {w})")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("label count does not match vertex count")

    # -- identity -----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SmallGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"SmallGraph(n={self.n}, m={self.m}, edges={list(self.edges)})"

    # -- basic queries ------------------------------------------------------
    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(
            (u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v
        )

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def all_edges_mask(self) -> int:
        return (1 << self.m) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def vertex_of(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"no vertex labelled {label!r}") from None

    def edge_label(self, e: Edge) -> str:
        return f"({self.label(e[0])},{self.label(e[1])})"

    def find_edge(self, a: str, b: str) -> Edge:
        """Edge between the vertices labelled ``a`` and ``b``."""
        e = _norm(self.vertex_of(a), self.vertex_of(b))
        if e not in self.edge_index:
            raise GraphError(f"no edge ({a},{b})")
        return e

    # -- edge sets ----------------------------------------------------------
    def edge_mask(self, edges: Iterable[Edge]) -> int:
        mask = 0
        for u, v in edges:
            try:
                mask |= 1 << self.edge_index[_norm(u, v)]
            except KeyError:
                raise GraphError(f"({u}, {v}) is not an edge") from None
        return mask

    def edges_of(self, mask: int) -> list[Edge]:
        return [self.edges[i] for i in iter_bits(mask)]

    def edge_subgraph(self, mask: int) -> SmallGraph:
        """Spanning subgraph keeping only the edges in ``mask``."""
        return build_graph(self.n, self.edges_of(mask), self.labels)

    def remove_edges(self, edges: Iterable[Edge]) -> SmallGraph:
        adj = list(self.adj)
        for u, v in edges:
            if not self.has_edge(u, v):
                raise GraphError(f"({u}, {v}) is not an edge")
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return SmallGraph(self.n, tuple(adj), self.labels)

    def add_edges(self, edges: Iterable[Edge]) -> SmallGraph:
        adj = list(self.adj)
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return SmallGraph(self.n, tuple(adj), self.labels)

    def is_subgraph_of(self, other: SmallGraph) -> bool:
        return self.n == other.n and all(
            a & ~b == 0 for a, b in zip(self.adj, other.adj)
        )

    def delete_vertex(self, v: int) -> SmallGraph:
        """Graph with ``v`` removed and later vertices shifted down by one."""
        keep = [u for u in range(self.n) if u != v]
        return self.induced(keep)

    def induced(self, vertices: Sequence[int]) -> SmallGraph:
        pos = {u: i for i, u in enumerate(vertices)}
        edges = [(pos[u], pos[w]) for u, w in self.edges if u in pos and w in pos]
        labels = tuple(self.label(u) for u in vertices) if self.labels else None
        return build_graph(len(vertices), edges, labels)

    def component_mask(self, start: int, allowed: int | None = None) -> int:
        """Vertices reachable from ``start`` inside the vertex mask ``allowed``."""
        allowed = self.vertex_mask if allowed is None else allowed
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def is_connected(self) -> bool:
        return self.n == 0 or self.component_mask(0) == self.vertex_mask

    def relabel(self, perm: Sequence[int]) -> SmallGraph:
        """Image of the graph under ``v -> perm[v]``; labels travel with vertices."""
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        labels = None
        if self.labels:
            out = [""] * self.n
            for v, p in enumerate(perm):
                out[p] = self.labels[v]
            labels = tuple(out)
        return build_graph(self.n, edges, labels)

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for u, v in self.edges:
            for w in iter_bits(self.adj[u] & self.adj[v]):
                if w > v:
                    out.append((u, v, w))
        return out

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def build_graph(
    n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
) -> SmallGraph:
    """Build a simple graph on ``n`` vertices; duplicate edges collapse."""
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return SmallGraph(n, tuple(adj), tuple(labels) if labels is not None else None)


def parse_graph_text(text: str) -> SmallGraph:
    """Parse the ``n m`` / ``u v`` text format."""
    rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not rows:
        raise GraphError("empty graph text")
    n, m = map(int, rows[0][:2])
    if len(rows) - 1 != m:
        raise GraphError(f"header says {m} edges, found {len(rows) - 1}")
    return build_graph(n, [(int(r[0]), int(r[1])) for r in rows[1:]])


def complete_graph(n: int) -> SmallGraph:
    return build_graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> SmallGraph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite(*sizes: int) -> SmallGraph:
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = [
        (u, v)
        for p, q in combinations(parts, 2)
        for u in p
        for v in q
    ]
    return build_graph(start, edges)


# ---------------------------------------------------------------------------
# Delta-Y exchanges
# ---------------------------------------------------------------------------


def delta_to_wye(g: SmallGraph, triangle: Sequence[int], label: str = "w") -> SmallGraph:
    """Replace ``triangle`` by a new vertex ``n`` joined to its three corners."""
    a, b, c = triangle
    if len({a, b, c}) != 3 or not (
        g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
    ):
        raise GraphError(f"{tuple(triangle)} is not a triangle")
    if g.n >= MAX_VERTICES:
        raise GraphError("no room for the new vertex")
    tri = {_norm(a, b), _norm(b, c), _norm(a, c)}
    edges = [e for e in g.edges if e not in tri]
    edges += [(a, g.n), (b, g.n), (c, g.n)]
    labels = (*g.labels, label) if g.labels else None
    return build_graph(g.n + 1, edges, labels)


def wye_to_delta(g: SmallGraph, center: int) -> SmallGraph:
    """Delete a degree-3 vertex and join its neighbours in a triangle.

    Neighbours that are already adjacent keep a single edge.
    """
    if not 0 <= center < g.n:
        raise GraphError(f"vertex {center} out of range")
    if g.degree(center) != 3:
        raise GraphError(f"vertex {center} has degree {g.degree(center)}, not 3")
    a, b, c = g.neighbors(center)
    h = g.add_edges([(a, b), (b, c), (a, c)])
    return h.delete_vertex(center)


# ---------------------------------------------------------------------------
# Automorphisms and isomorphism
# ---------------------------------------------------------------------------


def _search_order(g: SmallGraph) -> list[int]:
    # Each new vertex is as attached as possible to those already placed,
    # so adjacency constraints bite early.
    order: list[int] = []
    placed = 0
    remaining = set(range(g.n))
    while remaining:
        v = max(
            remaining,
            key=lambda u: ((g.adj[u] & placed).bit_count(), g.degree(u), -u),
        )
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _iter_isomorphisms(g: SmallGraph, h: SmallGraph) -> Iterator[Permutation]:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return
    n = g.n
    order = _search_order(g)
    gdeg, hdeg = g.degrees(), h.degrees()
    image = [-1] * n

    def extend(depth: int, used: int) -> Iterator[Permutation]:
        if depth == n:
            yield tuple(image)
            return
        v = order[depth]
        for w in range(n):
            if used >> w & 1 or hdeg[w] != gdeg[v]:
                continue
            ok = True
            for u in order[:depth]:
                if g.has_edge(u, v) != h.has_edge(image[u], w):
                    ok = False
                    break
            if ok:
                image[v] = w
                yield from extend(depth + 1, used | 1 << w)
        image[v] = -1

    yield from extend(0, 0)


def automorphism_group(g: SmallGraph) -> list[Permutation]:
    """Every automorphism of ``g`` as a tuple ``p`` with ``p[v]`` the image of ``v``."""
    return sorted(_iter_isomorphisms(g, g))


def find_isomorphism(g: SmallGraph, h: SmallGraph) -> Permutation | None:
    return next(_iter_isomorphisms(g, h), None)


def is_isomorphic(g: SmallGraph, h: SmallGraph) -> bool:
    return find_isomorphism(g, h) is not None


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def edge_permutation(g: SmallGraph, perm: Permutation) -> tuple[int, ...]:
    """Index map on ``g.edges`` induced by a vertex automorphism."""
    idx = g.edge_index
    return tuple(idx[_norm(perm[u], perm[v])] for u, v in g.edges)


def apply_to_mask(edge_perm: Sequence[int], mask: int) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= 1 << edge_perm[i]
    return out


def orbit_dedup(
    host: SmallGraph,
    sets: Iterable[int],
    group: Sequence[Permutation] | None = None,
) -> list[tuple[int, int]]:
    """Collapse edge-set bitmasks into ``(representative, orbit_size)`` pairs.

    The representative is the numerically smallest image; output is sorted
    by (popcount, representative). ``orbit_size`` counts the input sets that
    fell into the orbit.
    """
    group = automorphism_group(host) if group is None else group
    eperms = [edge_permutation(host, p) for p in group]
    counts: dict[int, int] = {}
    for mask in sets:
        rep = min(apply_to_mask(ep, mask) for ep in eperms)
        counts[rep] = counts.get(rep, 0) + 1
    return sorted(counts.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))


# ---------------------------------------------------------------------------
# Forbidden minors
# ---------------------------------------------------------------------------


def _reduce(edges: frozenset[Edge]) -> frozenset[Edge]:
    """Drop degree <= 1 vertices and suppress degree-2 vertices.

    Both moves preserve having a K5 or K3,3 minor.
    """
    edges = set(edges)
    while True:
        nbrs: dict[int, set[int]] = {}
        for u, v in edges:
            nbrs.setdefault(u, set()).add(v)
            nbrs.setdefault(v, set()).add(u)
        target = next((v for v, s in nbrs.items() if len(s) <= 2), None)
        if target is None:
            return frozenset(edges)
        ns = nbrs[target]
        edges = {e for e in edges if target not in e}
        if len(ns) == 2:
            a, b = ns
            edges.add(_norm(a, b))


def _canon(edges: frozenset[Edge]) -> frozenset[Edge]:
    verts = sorted({v for e in edges for v in e})
    pos = {v: i for i, v in enumerate(verts)}
    return frozenset(_norm(pos[u], pos[v]) for u, v in edges)


def has_forbidden_minor(g: SmallGraph) -> bool:
    """True iff ``g`` has a K5 or K3,3 minor.

    Exhaustive delete/contract search over reduced graphs, memoised up to
    isomorphism. Independent of any planarity algorithm on purpose.
    """
    import networkx as nx

    memo: dict[str, list[tuple[object, bool]]] = {}

    def solve(edges: frozenset[Edge]) -> bool:
        edges = _canon(_reduce(edges))
        verts = {v for e in edges for v in e}
        n, m = len(verts), len(edges)
        if n < 5:
            return False
        if m > 3 * n - 6:
            return True
        if n == 5:
            return m == 10
        ng = nx.Graph(list(edges))
        if n == 6 and m == 9 and nx.is_bipartite(ng):
            return True  # 3-regular bipartite on 6 vertices is K3,3
        key = nx.weisfeiler_lehman_graph_hash(ng, iterations=3)
        bucket = memo.setdefault(key, [])
        for other, result in bucket:
            if nx.is_isomorphic(ng, other):
                return result
        result = False
        for u, v in sorted(edges):
            rest = edges - {(u, v)}
            if solve(rest):
                result = True
                break
            merged = frozenset(
                _norm(u if a == v else a, u if b == v else b)
                for a, b in rest
                if not ({a, b} == {u, v})
                and (u if a == v else a) != (u if b == v else b)
            )
            if solve(merged):
                result = True
                break
        bucket.append((ng, result))
        return result

    return solve(frozenset(g.edges))


def is_apex(g: SmallGraph) -> bool:
    """True iff deleting some single vertex leaves a planar graph."""
    from .planarity import is_planar

    return any(is_planar(g.delete_vertex(v)) for v in range(g.n))


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    """Simple cycle as a vertex sequence plus vertex and edge bitmasks."""

    vertices: tuple[int, ...]
    vmask: int
    emask: int

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [_norm(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def enumerate_cycles(g: SmallGraph) -> list[Cycle]:
    """All simple cycles, each listed once starting from its smallest vertex.

    Ordered by length, then vertex sequence.
    """
    idx = g.edge_index
    out: list[Cycle] = []

    def walk(start: int, path: list[int], vmask: int, emask: int) -> None:
        last = path[-1]
        for w in iter_bits(g.adj[last]):
            if w == start and len(path) >= 3 and path[1] < path[-1]:
                out.append(
                    Cycle(tuple(path), vmask, emask | 1 << idx[_norm(last, w)])
                )
            elif w > start and not vmask >> w & 1:
                path.append(w)
                walk(start, path, vmask | 1 << w, emask | 1 << idx[_norm(last, w)])
                path.pop()

    for s in range(g.n):
        walk(s, [s], 1 << s, 0)
    out.sort(key=lambda c: (len(c), c.vertices))
    return out


def disjoint_cycle_pairs(
    g: SmallGraph, cycles: Sequence[Cycle] | None = None
) -> list[tuple[Cycle, Cycle]]:
    """Unordered pairs of vertex-disjoint cycles, earlier cycle first."""
    cycles = enumerate_cycles(g) if cycles is None else cycles
    return [
        (c1, c2)
        for i, c1 in enumerate(cycles)
        for c2 in cycles[i + 1 :]
        if not c1.vmask & c2.vmask
    ]
