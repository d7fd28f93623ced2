"""Per-host analysis, the built-in claim table and deterministic JSON reports."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from .conflict import NEG, POS, BalanceVerdict, SignedMultigraph, is_balanced, strong_conflict_graph
from .family import FAMILY_NAMES, FamilyGraph, canonical_name, family_member
from .graph import automorphism_group
from .linking import Diagram, SearchResult, build_diagram, search_diagram
from .mps import MpsRecord, enumerate_mps, raw_removed_sets, size_histogram, verify_mps_transfer
from .planarity import SphereEmbedding, enumerate_sphere_embeddings

SCHEMA = 1


@dataclass
class RecordAnalysis:
    record: MpsRecord
    embeddings: list[SphereEmbedding]
    conflict_graphs: list[SignedMultigraph]
    verdict: BalanceVerdict
    search: list[dict] = field(default_factory=list)  # one summary per embedding

    @property
    def conflict(self) -> SignedMultigraph:
        return self.conflict_graphs[0]

    @property
    def embedding_independent(self) -> bool:
        return len({g.signature() for g in self.conflict_graphs}) == 1

    @property
    def all_linked(self) -> bool:
        return all(s["all_linked"] for s in self.search)


@dataclass
class HostAnalysis:
    member: FamilyGraph
    group_order: int
    raw_count: int
    records: list[RecordAnalysis]

    @property
    def name(self) -> str:
        return self.member.name


def _search_summary(diagram: Diagram) -> dict:
    res: SearchResult = search_diagram(diagram, samples=2)
    return {
        "configurations": res.configurations,
        "all_linked": res.all_linked,
        "configuration_sums": sorted(res.sums),
        "unlinked": [c.describe() for c in res.unlinked[:5]],
        "sample_certificates": [
            {
                "configuration": c.describe(),
                "cycles": [_cycle_labels(diagram, cert.c1), _cycle_labels(diagram, cert.c2)],
                "parity": cert.parity,
            }
            for c, cert in res.samples
        ],
    }


def _cycle_labels(diagram: Diagram, cycle) -> list[str]:
    return [diagram.host.label(v) for v in cycle.vertices]


def _search_job(args: tuple[MpsRecord, SphereEmbedding]) -> dict:
    rec, emb = args
    return _search_summary(build_diagram(rec, emb))


def analyse(
    name: str,
    *,
    search: bool = True,
    embedding_limit: int | None = None,
    jobs: int = 1,
) -> HostAnalysis:
    member = family_member(name)
    g = member.graph
    group = automorphism_group(g)
    raw = raw_removed_sets(g)
    out = []
    for rec in enumerate_mps(g, group):
        embs = enumerate_sphere_embeddings(rec.subgraph, rec.stabilizer, limit=embedding_limit)
        graphs = [strong_conflict_graph(rec, e) for e in embs]
        out.append(RecordAnalysis(rec, embs, graphs, is_balanced(graphs[0])))
    if search:
        tasks = [(ra.record, e) for ra in out for e in ra.embeddings]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                summaries = list(pool.map(_search_job, tasks))
        else:
            summaries = [_search_job(t) for t in tasks]
        it = iter(summaries)
        for ra in out:
            ra.search = [next(it) for _ in ra.embeddings]
    return HostAnalysis(member, len(group), len(raw), out)


# ---------------------------------------------------------------------------
# Claim table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    tag: str
    host: str
    statement: str
    expected: Any
    compute: Callable[[HostAnalysis], Any]


def _count(h: HostAnalysis) -> int:
    return len(h.records)


def _hist(h: HostAnalysis) -> dict[str, int]:
    return {str(k): v for k, v in size_histogram([r.record for r in h.records]).items()}


def _balanced(h: HostAnalysis) -> int:
    return sum(r.verdict.balanced for r in h.records)


def _all_linked(h: HostAnalysis) -> bool | None:
    if any(not r.search for r in h.records):
        return None
    return all(r.all_linked for r in h.records)


def _embedding_independent(h: HostAnalysis) -> bool:
    return all(r.embedding_independent for r in h.records)


def _is_matching(rec: MpsRecord) -> bool:
    seen = 0
    for u, v in rec.fragments:
        if seen >> u & 1 or seen >> v & 1:
            return False
        seen |= 1 << u | 1 << v
    return True


def _is_path(rec: MpsRecord) -> bool:
    sub = rec.host.edge_subgraph(rec.removed)
    touched = [v for v in range(sub.n) if sub.degree(v)]
    degs = sorted(sub.degree(v) for v in touched)
    if degs != [1, 1] + [2] * (len(touched) - 2):
        return False
    return len(touched) == rec.k + 1 and sub.induced(touched).is_connected()


def _k6_shapes(h: HostAnalysis) -> list[str]:
    return sorted(
        "matching" if _is_matching(r.record) else "path" if _is_path(r.record) else "other"
        for r in h.records
    )


def _pg_shape(h: HostAnalysis) -> list[str]:
    return sorted(
        f"|R|={r.record.k},{'independent' if _is_matching(r.record) else 'adjacent'}"
        for r in h.records
    )


def _g9_bigons(h: HostAnalysis) -> bool:
    small = [r for r in h.records if r.record.k == 2]
    return len(small) == 6 and all(
        sorted(e.sign for e in r.conflict.edges) == [POS, NEG] and not r.verdict.balanced
        for r in small
    )


def _g8_grouping(h: HostAnalysis) -> dict[str, int]:
    g = h.member.graph
    w = g.vertex_of("w")
    y = g.edge_mask([(u, w) for u in g.neighbors(w)])
    keep = sum(1 for r in h.records if not r.record.removed & y)
    return {"whole_Y_kept": keep, "Y_edge_removed": len(h.records) - keep}


def _octahedron_triangle(h: HostAnalysis) -> bool:
    for r in h.records:
        if _is_matching(r.record):
            return sorted(e.sign for e in r.conflict.edges) == [NEG] * 3
    return False


def _transfer(name: str, labels: str) -> Callable[[HostAnalysis], bool]:
    def run(h: HostAnalysis) -> bool:
        g = h.member.graph
        return verify_mps_transfer(g, [g.vertex_of(s) for s in labels]).passed
    return run


def _claims() -> list[Claim]:
    rows: list[Claim] = []
    counts = {"K6": 2, "K331": 3, "G7": 6, "G8": 14, "G9": 10, "K44me": 7, "PG": 2}
    for host, n in counts.items():
        rows.append(Claim(f"Prop {host}", host, "number of MPS up to symmetry", n, _count))
        rows.append(Claim(f"Prop {host}", host, "no single edge removal planarizes", True,
                          lambda h: all(r.record.k >= 2 for r in h.records)))
        rows.append(Claim(f"Prop {host}", host, "every configuration has an odd cycle pair",
                          True, _all_linked))
        rows.append(Claim(f"Fig {host}", host, "conflict graph independent of embedding",
                          True, _embedding_independent))
        balanced = 3 if host == "K44me" else 0
        rows.append(Claim(f"Abstract/{host}", host, "balanced strong conflict graphs",
                          balanced, _balanced))
    rows += [
        Claim("Prop K6", "K6", "removal shapes", ["matching", "path"], _k6_shapes),
        Claim("Prop K6", "K6", "octahedron record is a negative triangle", True,
              _octahedron_triangle),
        Claim("Prop K6", "K6", "Delta-Y transfer through triangle 456", True,
              _transfer("K6", "456")),
        Claim("Prop K331", "K331", "Delta-Y transfer through triangle v,c,z", True,
              _transfer("K331", "vcz")),
        Claim("Prop G9", "G9", "removed-set sizes", {"2": 6, "3": 4}, _hist),
        Claim("Prop G9", "G9", "each |R|=2 record is an unbalanced bigon", True, _g9_bigons),
        Claim("Fig G8", "G8", "figure grouping by the Y at w",
              {"whole_Y_kept": 7, "Y_edge_removed": 7}, _g8_grouping),
        Claim("Prop PG", "PG", "both records remove two non-adjacent edges",
              ["|R|=2,independent", "|R|=2,independent"], _pg_shape),
    ]
    return rows


CLAIMS = _claims()

# Sentences whose literal reading contradicts the surrounding statement.
NOTES = {
    "K331": "closing sentence of the K331 proof says 'is balanced'; computed verdicts are listed per record",
}


def evaluate_claims(h: HostAnalysis) -> list[dict]:
    out = []
    for c in CLAIMS:
        if c.host != h.name:
            continue
        got = c.compute(h)
        out.append({
            "tag": c.tag,
            "statement": c.statement,
            "expected": c.expected,
            "computed": got,
            "ok": got == c.expected,
        })
    return out


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def record_dict(ra: RecordAnalysis) -> dict:
    rec = ra.record
    d = {
        "removed_edges": rec.removed_labels(),
        "orbit_size": rec.orbit_size,
        "planar_embedding_count": len(ra.embeddings),
    }
    return d


def mps_dict(h: HostAnalysis) -> dict:
    return {
        "schema": SCHEMA,
        "host": h.name,
        "automorphisms": h.group_order,
        "raw_count": h.raw_count,
        "by_size": _hist(h),
        "records": [record_dict(r) for r in h.records],
    }


def conflict_dict(ra: RecordAnalysis) -> dict:
    g = ra.conflict
    d = {"removed_edges": ra.record.removed_labels(), **g.to_dict(), **ra.verdict.to_dict(g)}
    d["embedding_independent"] = ra.embedding_independent
    if not ra.embedding_independent:
        d["per_embedding"] = [x.to_dict()["edges"] for x in ra.conflict_graphs]
    return d


def search_dict(ra: RecordAnalysis) -> dict:
    return {"removed_edges": ra.record.removed_labels(), "embeddings": ra.search}


def full_report(h: HostAnalysis) -> dict:
    claims = evaluate_claims(h)
    rep = mps_dict(h)
    rep["conflict"] = [conflict_dict(r) for r in h.records]
    if all(r.search for r in h.records):
        rep["search"] = [search_dict(r) for r in h.records]
    rep["claims"] = claims
    rep["discrepancies"] = [c for c in claims if not c["ok"]]
    if h.name in NOTES:
        rep["notes"] = [NOTES[h.name]]
    return rep


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def verify(names: list[str] | None = None, *, embedding_limit: int | None = None, jobs: int = 1) -> dict:
    """Run every claim for ``names`` (default: whole family)."""
    names = list(FAMILY_NAMES) if names is None else [canonical_name(n) for n in names]
    hosts = [full_report(analyse(n, embedding_limit=embedding_limit, jobs=jobs)) for n in names]
    total_balanced = sum(
        1 for h in hosts for c in h["conflict"] if c["balanced"]
    )
    out = {"schema": SCHEMA, "hosts": hosts, "ok": all(not h["discrepancies"] for h in hosts)}
    if names == list(FAMILY_NAMES):
        out["balanced_total"] = {"expected": 3, "computed": total_balanced,
                                 "ok": total_balanced == 3}
        out["ok"] = out["ok"] and out["balanced_total"]["ok"]
    return out


def balanced_records(h: HostAnalysis) -> list[list[str]]:
    return [r.record.removed_labels() for r in h.records if r.verdict.balanced]

