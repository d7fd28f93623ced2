"""Strong conflict graphs and signed-graph balance.

Vertices are fragments. A ``-`` edge (conflict) says the two arcs cannot
share a side; a ``+`` edge (anti-conflict) says they must. A signed graph
is balanced iff some side map ``s: fragments -> {+1, -1}`` satisfies
every edge, i.e. no cycle carries an odd number of ``-`` edges.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .linking import Diagram, anti_conflict_witness, build_diagram, pairwise_base_parities
from .mps import MpsRecord
from .planarity import SphereEmbedding

NEG, POS = "-", "+"


@dataclass(frozen=True)
class SignedEdge:
    pair: tuple[int, int]
    sign: str
    provenance: str  # "conflict" or "anti-conflict"


@dataclass(frozen=True)
class SignedMultigraph:
    labels: tuple[str, ...]
    edges: tuple[SignedEdge, ...]

    def __post_init__(self) -> None:
        seen = set()
        for e in self.edges:
            i, j = e.pair
            if not (0 <= i < j < len(self.labels)):
                raise ValueError(f"bad pair {e.pair}")
            if (e.pair, e.sign) in seen:
                raise ValueError(f"duplicate {e.sign} edge on {e.pair}")
            seen.add((e.pair, e.sign))

    @property
    def size(self) -> int:
        return len(self.labels)

    def signature(self) -> tuple[tuple[str, str, str], ...]:
        """Order-free summary used to compare graphs across embeddings."""
        return tuple(
            sorted((self.labels[e.pair[0]], self.labels[e.pair[1]], e.sign) for e in self.edges)
        )

    def sign_counts(self) -> dict[str, int]:
        return {s: sum(1 for e in self.edges if e.sign == s) for s in (NEG, POS)}

    def switch(self, subset: Iterable[int]) -> SignedMultigraph:
        """Switch at ``subset``: flip the sign of every edge with exactly one end inside."""
        sub = set(subset)
        out = []
        for e in self.edges:
            i, j = e.pair
            flip = (i in sub) != (j in sub)
            sign = ({NEG: POS, POS: NEG}[e.sign]) if flip else e.sign
            out.append(SignedEdge(e.pair, sign, e.provenance))
        # a switched digon stays a digon; keep pairs unique per sign
        return SignedMultigraph(self.labels, tuple(out))

    def to_dict(self) -> dict:
        return {
            "fragments": list(self.labels),
            "edges": [
                {"pair": [self.labels[e.pair[0]], self.labels[e.pair[1]]], "sign": e.sign}
                for e in self.edges
            ],
        }

    def to_dot(self, name: str = "conflict") -> str:
        lines = [f'graph "{name}" {{']
        for lab in self.labels:
            lines.append(f'  "{lab}";')
        for e in self.edges:
            a, b = (self.labels[i] for i in e.pair)
            style = "solid" if e.sign == NEG else "dashed"
            lines.append(f'  "{a}" -- "{b}" [label="{e.sign}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BalanceVerdict:
    balanced: bool
    sides: tuple[int, ...] | None = None  # +1 / -1 per vertex when balanced
    odd_cycle: tuple[SignedEdge, ...] | None = field(default=None)  # when unbalanced

    def validate(self, g: SignedMultigraph) -> bool:
        """Re-check the certificate against ``g``."""
        if self.balanced:
            s = self.sides
            if s is None or len(s) != g.size:
                return False
            return all(
                (s[e.pair[0]] != s[e.pair[1]]) == (e.sign == NEG) for e in g.edges
            )
        cyc = self.odd_cycle
        if not cyc or any(e not in g.edges for e in cyc):
            return False
        # closed walk: each vertex has even degree in the edge multiset
        deg: dict[int, int] = {}
        for e in cyc:
            for v in e.pair:
                deg[v] = deg.get(v, 0) + 1
        if any(d % 2 for d in deg.values()):
            return False
        return sum(1 for e in cyc if e.sign == NEG) % 2 == 1

    def to_dict(self, g: SignedMultigraph) -> dict:
        if self.balanced:
            cert = {g.labels[i]: s for i, s in enumerate(self.sides or ())}
        else:
            cert = [
                {"pair": [g.labels[e.pair[0]], g.labels[e.pair[1]]], "sign": e.sign}
                for e in self.odd_cycle or ()
            ]
        return {"balanced": self.balanced, "certificate": cert}


def is_balanced(g: SignedMultigraph) -> BalanceVerdict:
    """Two-colour by BFS; on a clash return the odd-negative cycle it exposes."""
    n = g.size
    adj: dict[int, list[tuple[int, SignedEdge]]] = {v: [] for v in range(n)}
    for e in g.edges:
        i, j = e.pair
        adj[i].append((j, e))
        adj[j].append((i, e))
    side = [0] * n
    parent: list[SignedEdge | None] = [None] * n
    for root in range(n):
        if side[root]:
            continue
        side[root] = 1
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, e in adj[v]:
                want = -side[v] if e.sign == NEG else side[v]
                if not side[w]:
                    side[w] = want
                    parent[w] = e
                    queue.append(w)
                elif side[w] != want:
                    return BalanceVerdict(False, odd_cycle=_close_cycle(v, w, e, parent))
    return BalanceVerdict(True, sides=tuple(side))


def _tree_path(v: int, parent: Sequence[SignedEdge | None]) -> list[tuple[int, SignedEdge]]:
    out = []
    while parent[v] is not None:
        e = parent[v]
        u = e.pair[0] if e.pair[1] == v else e.pair[1]
        out.append((v, e))
        v = u
    return out


def _close_cycle(v: int, w: int, e: SignedEdge, parent: Sequence[SignedEdge | None]) -> tuple[SignedEdge, ...]:
    pv, pw = _tree_path(v, parent), _tree_path(w, parent)
    # drop the shared tail towards the root
    while pv and pw and pv[-1][1] is pw[-1][1]:
        pv.pop()
        pw.pop()
    return tuple([x for _, x in pv] + [e] + [x for _, x in reversed(pw)])


def strong_conflict_graph(rec: MpsRecord, emb: SphereEmbedding, diagram: Diagram | None = None) -> SignedMultigraph:
    """Certified conflict (``-``) and anti-conflict (``+``) edges between fragments."""
    diagram = build_diagram(rec, emb) if diagram is None else diagram
    edges = []
    for i, j in combinations(range(rec.k), 2):
        if pairwise_base_parities(diagram, i, j) == {0, 1}:
            edges.append(SignedEdge((i, j), NEG, "conflict"))
        if anti_conflict_witness(diagram, i, j) or anti_conflict_witness(diagram, j, i):
            edges.append(SignedEdge((i, j), POS, "anti-conflict"))
    return SignedMultigraph(tuple(rec.removed_labels()), tuple(edges))
