"""Command-line entry point: ``petersen-conflict <verb> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .family import FAMILY_NAMES, all_members, canonical_name, family_member
from .graph import GraphError, automorphism_group, parse_graph_text
from .mps import MpsRecord, enumerate_mps
from .planarity import enumerate_sphere_embeddings

OK, DISCREPANCY, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror or exc}") from exc


def _fmt_record(rec: MpsRecord) -> str:
    return " ".join(rec.removed_labels())


def cmd_family(args) -> int:
    members = [family_member(args.name)] if args.name else all_members()
    chunks = []
    for fg in members:
        g = fg.graph
        chunks.append(f"# {fg.name}: {fg.description}\n# labels {' '.join(g.labels)}\n{g.to_text()}")
    _emit("\n".join(chunks), args.out)
    return OK


def _mps_from_file(path: str) -> dict:
    try:
        g = parse_graph_text(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    recs = enumerate_mps(g, automorphism_group(g))
    return {
        "schema": report.SCHEMA,
        "host": path,
        "records": [
            {
                "removed_edges": r.removed_labels(),
                "orbit_size": r.orbit_size,
                "planar_embedding_count": len(
                    enumerate_sphere_embeddings(r.subgraph, r.stabilizer)
                ) if r.subgraph.is_connected() else 0,
            }
            for r in recs
        ],
    }


def cmd_mps(args) -> int:
    if args.graph_file:
        data = _mps_from_file(args.graph_file)
    else:
        h = report.analyse(args.name, search=False, embedding_limit=args.embedding_limit)
        data = report.mps_dict(h)
    if args.format == "json":
        _emit(report.dumps(data), args.out)
    else:
        lines = [f"{data['host']}: {len(data['records'])} MPS up to symmetry"]
        for r in data["records"]:
            lines.append(
                f"  R = {' '.join(r['removed_edges'])}  orbit {r['orbit_size']}"
                f"  embeddings {r['planar_embedding_count']}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return OK


def cmd_conflict(args) -> int:
    h = report.analyse(args.name, search=False, embedding_limit=args.embedding_limit)
    if args.format == "json":
        data = {"schema": report.SCHEMA, "host": h.name,
                "records": [report.conflict_dict(r) for r in h.records]}
        _emit(report.dumps(data), args.out)
    elif args.format == "dot":
        _emit("".join(r.conflict.to_dot(f"{h.name} {_fmt_record(r.record)}") for r in h.records),
              args.out)
    else:
        lines = [f"{h.name}: strong conflict graphs"]
        for r in h.records:
            signs = " ".join(
                f"{r.conflict.labels[e.pair[0]]}{e.sign}{r.conflict.labels[e.pair[1]]}"
                for e in r.conflict.edges
            ) or "(no edges)"
            verdict = "balanced" if r.verdict.balanced else "unbalanced"
            lines.append(f"  R = {_fmt_record(r.record)}: {signs}  [{verdict}]")
        _emit("\n".join(lines) + "\n", args.out)
    return OK


def cmd_search(args) -> int:
    h = report.analyse(args.name, embedding_limit=args.embedding_limit, jobs=args.jobs)
    linked = all(r.all_linked for r in h.records)
    if args.format == "json":
        data = {"schema": report.SCHEMA, "host": h.name, "all_linked": linked,
                "records": [report.search_dict(r) for r in h.records]}
        _emit(report.dumps(data), args.out)
    else:
        lines = [f"{h.name}: configuration search"]
        for r in h.records:
            n = sum(s["configurations"] for s in r.search)
            state = "all linked" if r.all_linked else "UNLINKED configurations found"
            lines.append(f"  R = {_fmt_record(r.record)}: {len(r.search)} embedding(s), "
                         f"{n} configurations, {state}")
        _emit("\n".join(lines) + "\n", args.out)
    return OK if linked else DISCREPANCY


def cmd_verify(args) -> int:
    names = None if args.name in (None, "all") else [args.name]
    data = report.verify(names, embedding_limit=args.embedding_limit, jobs=args.jobs)
    if args.format == "json":
        _emit(report.dumps(data), args.out)
    else:
        lines = []
        for h in data["hosts"]:
            lines.append(f"{h['host']}:")
            for c in h["claims"]:
                mark = "ok  " if c["ok"] else "FAIL"
                tail = "" if c["ok"] else f"  expected {c['expected']!r}, computed {c['computed']!r}"
                lines.append(f"  {mark} [{c['tag']}] {c['statement']}{tail}")
            bal = [c["removed_edges"] for c in h["conflict"] if c["balanced"]]
            if bal and any(not c["ok"] for c in h["claims"] if "balanced" in c["statement"]):
                for r in bal:
                    lines.append(f"       balanced record: R = {' '.join(r)}")
            for note in h.get("notes", []):
                lines.append(f"  note: {note}")
        if "balanced_total" in data:
            b = data["balanced_total"]
            mark = "ok  " if b["ok"] else "FAIL"
            lines.append(f"{mark} balanced strong conflict graphs across the family: "
                         f"expected {b['expected']}, computed {b['computed']}")
        lines.append("verified" if data["ok"] else "discrepancies found")
        _emit("\n".join(lines) + "\n", args.out)
    return OK if data["ok"] else DISCREPANCY


def cmd_emit_dot(args) -> int:
    h = report.analyse(args.name, search=False, embedding_limit=args.embedding_limit)
    outdir = Path(args.out or f"{h.name}-dot")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        for i, r in enumerate(h.records, 1):
            title = f"{h.name} R={_fmt_record(r.record)}"
            (outdir / f"{h.name}_{i:02d}.dot").write_text(r.conflict.to_dot(title))
    except OSError as exc:
        raise UsageError(f"cannot write to {outdir}: {exc.strerror or exc}") from exc
    print(f"wrote {len(h.records)} DOT files to {outdir}")
    return OK


def _family_name(value: str) -> str:
    try:
        return canonical_name(value)
    except GraphError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="petersen-conflict",
        description="Maximal planar subgraphs, conflict graphs and linking search "
                    "for the Petersen family.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--embedding-limit", type=int, default=None, metavar="N",
                        help="cap sphere embeddings per record")
    common.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker processes for the configuration search")
    common.add_argument("--out", default=None, help="output file (directory for emit-dot)")
    common.add_argument("--format", choices=("json", "dot", "text"), default="text")
    sub = p.add_subparsers(dest="verb", required=True)
    names = ", ".join(FAMILY_NAMES)

    s = sub.add_parser("family", parents=[common], help="print family graphs")
    s.add_argument("name", nargs="?", type=_family_name, help=names)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("mps", parents=[common], help="maximal planar subgraphs")
    s.add_argument("name", nargs="?", type=_family_name, help=names)
    s.add_argument("--graph-file", help="read a graph in 'n m / u v' text format instead")
    s.set_defaults(func=cmd_mps)

    for verb, func, hlp in (
        ("conflict", cmd_conflict, "strong conflict graphs and balance"),
        ("search", cmd_search, "exhaustive configuration search"),
        ("emit-dot", cmd_emit_dot, "one DOT file per record"),
    ):
        s = sub.add_parser(verb, parents=[common], help=hlp)
        s.add_argument("name", type=_family_name, help=names)
        s.set_defaults(func=func)

    s = sub.add_parser("verify", parents=[common], help="check the claim table")
    s.add_argument("name", nargs="?", default="all", help=f"{names} or all")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "mps" and not (args.name or args.graph_file):
        parser.error("mps needs a family name or --graph-file")
    if args.verb == "verify" and args.name != "all":
        try:
            args.name = canonical_name(args.name)
        except GraphError as exc:
            parser.error(str(exc))
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
