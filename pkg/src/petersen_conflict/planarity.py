"""Planarity, rotation systems and faces of sphere embeddings.

A rotation system lists, for each vertex, its neighbours in clockwise
order. Faces are traced on darts ``(u, v)``: the dart following ``(u, v)``
is ``(v, w)`` where ``w`` comes right after ``u`` in the rotation at ``v``.
A connected graph's rotation system is spherical exactly when
``V - E + F == 2``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product

from .graph import Cycle, Edge, GraphError, Permutation, SmallGraph, automorphism_group

Dart = tuple[int, int]
Rotation = tuple[tuple[int, ...], ...]


def is_planar(g: SmallGraph) -> bool:
    """Planarity via the Left-Right test from networkx."""
    import networkx as nx

    if g.m <= 8 or g.n <= 4:
        return True
    if g.m > 3 * g.n - 6:
        return False
    planar, _ = nx.check_planarity(g.to_networkx())
    return planar


def planar_rotation(g: SmallGraph) -> Rotation:
    """One spherical rotation system of a planar graph (certificate)."""
    import networkx as nx

    planar, emb = nx.check_planarity(g.to_networkx())
    if not planar:
        raise GraphError("graph is not planar")
    return tuple(
        tuple(emb.neighbors_cw_order(v)) if g.degree(v) else () for v in range(g.n)
    )


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = min(range(len(seq)), key=seq.__getitem__)
    return tuple(seq[i:]) + tuple(seq[:i])


def trace_faces(g: SmallGraph, rotation: Rotation) -> list[tuple[Dart, ...]]:
    succ: dict[Dart, int] = {}
    for v, rot in enumerate(rotation):
        k = len(rot)
        for i, u in enumerate(rot):
            succ[(v, u)] = rot[(i + 1) % k]
    seen: set[Dart] = set()
    faces = []
    for u, v in g.edges:
        for start in ((u, v), (v, u)):
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                a, b = d
                d = (b, succ[(b, a)])
            faces.append(tuple(walk))
    return faces


@dataclass(frozen=True)
class Face:
    """A face as its boundary walk of darts (clockwise-consistent)."""

    darts: tuple[Dart, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.darts)

    def __len__(self) -> int:
        return len(self.darts)

    def is_simple_cycle(self) -> bool:
        vs = self.vertices
        return len(vs) >= 3 and len(set(vs)) == len(vs)


@dataclass(frozen=True, eq=False)
class SphereEmbedding:
    """A connected planar graph together with a spherical rotation system."""

    graph: SmallGraph
    rotation: Rotation
    _faces: tuple[Face, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        g = self.graph
        for v in range(g.n):
            if sorted(self.rotation[v]) != g.neighbors(v):
                raise GraphError(f"rotation at {v} does not list its neighbours")
        faces = tuple(Face(w) for w in trace_faces(g, self.rotation))
        if g.is_connected() and g.n - g.m + len(faces) != 2 and g.m > 0:
            raise GraphError("rotation system is not spherical")
        object.__setattr__(self, "_faces", faces)

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._faces

    @cached_property
    def dart_face(self) -> dict[Dart, tuple[int, int]]:
        """Map dart -> (face index, position in that face's walk)."""
        return {
            d: (fi, pos)
            for fi, f in enumerate(self._faces)
            for pos, d in enumerate(f.darts)
        }

    @cached_property
    def vertex_corners(self) -> dict[int, list[tuple[int, int]]]:
        """Corners ``(face, position)`` at each vertex, in face order."""
        out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(self.graph.n)}
        for fi, f in enumerate(self._faces):
            for pos, d in enumerate(f.darts):
                out[d[0]].append((fi, pos))
        return out

    def faces_at(self, v: int) -> list[int]:
        return sorted({fi for fi, _ in self.vertex_corners[v]})

    def edge_faces(self, e: Edge) -> tuple[int, int]:
        u, v = e
        return self.dart_face[(u, v)][0], self.dart_face[(v, u)][0]

    def canonical_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_canonical_cycle(r) for r in self.rotation)

    def mirror(self) -> SphereEmbedding:
        return SphereEmbedding(self.graph, tuple(tuple(reversed(r)) for r in self.rotation))

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "rotation": {g.label(v): [g.label(u) for u in r] for v, r in enumerate(self.rotation)},
            "faces": [[g.label(v) for v in f.vertices] for f in self._faces],
        }


def faces(emb: SphereEmbedding) -> list[Face]:
    return list(emb.faces)


def _rotation_choices(nbrs: list[int], mod_reflection: bool) -> list[tuple[int, ...]]:
    if len(nbrs) <= 2:
        return [tuple(nbrs)]
    first, rest = nbrs[0], nbrs[1:]
    out = []
    for p in permutations(rest):
        if mod_reflection and p[0] > p[-1]:
            continue
        out.append((first, *p))
    return out


def _image_key(rotation: Rotation, perm: Permutation, reflect: bool) -> tuple[tuple[int, ...], ...]:
    n = len(rotation)
    out: list[tuple[int, ...]] = [()] * n
    for v, r in enumerate(rotation):
        img = [perm[u] for u in r]
        if reflect:
            img.reverse()
        out[perm[v]] = _canonical_cycle(img)
    return tuple(out)


def iter_spherical_rotations(g: SmallGraph) -> Iterator[Rotation]:
    """Every spherical rotation system of connected ``g``, one per mirror pair."""
    n, m = g.n, g.m
    target_faces = 2 - n + m
    nbrs = [g.neighbors(v) for v in range(n)]
    pivot = next((v for v in range(n) if len(nbrs[v]) >= 3), None)
    choices = [
        _rotation_choices(nbrs[v], mod_reflection=(v == pivot)) for v in range(n)
    ]
    # Dart ids: dart (u, v) -> slot; succ via the rotation chosen at v.
    dart_id: dict[Dart, int] = {}
    for u, v in g.edges:
        dart_id[(u, v)] = len(dart_id)
        dart_id[(v, u)] = len(dart_id)
    nd = len(dart_id)
    rev = [0] * nd
    for (u, v), i in dart_id.items():
        rev[i] = dart_id[(v, u)]
    # For each vertex and choice, the partial successor map on darts leaving v.
    partial: list[list[list[tuple[int, int]]]] = []
    for v in range(n):
        opts = []
        for rot in choices[v]:
            k = len(rot)
            opts.append(
                [(dart_id[(v, rot[i])], dart_id[(v, rot[(i + 1) % k])]) for i in range(k)]
            )
        partial.append(opts)
    # next(d) for d = (a, b) is the dart leaving b after rev(d) in b's rotation.
    nxt = [0] * nd
    for combo in product(*(range(len(c)) for c in choices)):
        nxt_out = [0] * nd
        for v, ci in enumerate(combo):
            for d_out, d_after in partial[v][ci]:
                nxt_out[d_out] = d_after
        for d in range(nd):
            nxt[d] = nxt_out[rev[d]]
        seen = bytearray(nd)
        count = 0
        for s in range(nd):
            if seen[s]:
                continue
            count += 1
            if count > target_faces:
                break
            d = s
            while not seen[d]:
                seen[d] = 1
                d = nxt[d]
        if count == target_faces:
            yield tuple(choices[v][ci] for v, ci in enumerate(combo))


def enumerate_sphere_embeddings(
    g: SmallGraph,
    group: Sequence[Permutation] | None = None,
    limit: int | None = None,
) -> list[SphereEmbedding]:
    """All sphere embeddings of ``g`` up to reflection and the given symmetries.

    ``group`` defaults to the full automorphism group of ``g``; pass a
    subgroup (e.g. the stabiliser of a set of extra edges) to keep embeddings
    that are only equivalent under symmetries you do not want to quotient by.
    """
    if not g.is_connected():
        raise GraphError("graph must be connected")
    if not is_planar(g):
        raise GraphError("graph is not planar: no sphere embedding exists")
    group = automorphism_group(g) if group is None else group
    seen: set = set()
    out: list[SphereEmbedding] = []
    for rot in iter_spherical_rotations(g):
        key = min(
            _image_key(rot, p, refl) for p in group for refl in (False, True)
        )
        if key in seen:
            continue
        seen.add(key)
        out.append(SphereEmbedding(g, rot))
        if limit is not None and len(out) >= limit:
            break
    return out


def face_path(
    emb: SphereEmbedding, sources: set[int], targets: set[int], blocked: int = 0
) -> list[tuple[int, Dart]] | None:
    """Shortest dual path between face sets, never crossing edges in ``blocked``.

    Each step ``(face, dart)`` leaves ``face`` across the edge of ``dart``;
    the list is empty when the two sets share a face and ``None`` when no
    path exists. Ties go to the smaller face index, then dart position.
    """
    idx = emb.graph.edge_index
    prev: dict[int, tuple[int, Dart] | None] = {}
    queue: deque[int] = deque()
    for f in sorted(sources):
        prev[f] = None
        queue.append(f)
    hit = None
    while queue:
        f = queue.popleft()
        if f in targets:
            hit = f
            break
        for d in emb.faces[f].darts:
            e = (min(d), max(d))
            if blocked >> idx[e] & 1:
                continue
            g_face = emb.dart_face[(d[1], d[0])][0]
            if g_face not in prev:
                prev[g_face] = (f, d)
                queue.append(g_face)
    if hit is None:
        return None
    steps: list[tuple[int, Dart]] = []
    f = hit
    while prev[f] is not None:
        pf, d = prev[f]
        steps.append((pf, d))
        f = pf
    steps.reverse()
    return steps


def cycle_separation_parity(emb: SphereEmbedding, cycle: Cycle | Sequence[int], a: int, b: int) -> int:
    """1 iff ``cycle`` (of the embedded graph) separates ``a`` from ``b``."""
    g = emb.graph
    vs = cycle.vertices if isinstance(cycle, Cycle) else tuple(cycle)
    if a in vs or b in vs:
        raise GraphError("query vertices must avoid the cycle")
    blocked = 0
    for i in range(len(vs)):
        e = (min(vs[i], vs[(i + 1) % len(vs)]), max(vs[i], vs[(i + 1) % len(vs)]))
        if e not in g.edge_index:
            raise GraphError(f"cycle edge {e} is not in the embedded graph")
        blocked |= 1 << g.edge_index[e]
    path = face_path(emb, set(emb.faces_at(a)), set(emb.faces_at(b)), blocked)
    return 0 if path is not None else 1
