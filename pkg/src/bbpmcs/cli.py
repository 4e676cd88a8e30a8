"""Command-line entry point: ``bbpmcs <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad graph file, graph not
outerplanar, engine limits) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path

from . import bench
from .blocks import decompose_bc, is_outerplanar
from .errors import BBPError
from .graph import DEFAULT_WEIGHTS, RootedGraph, read_graph, read_weights
from .metric import MODES, audit_metric, compute_mcs, distance
from .parts import parts, parts_star

AUDIT_COLUMNS = ("a", "b", "c", "d_ab", "d_bc", "d_ac", "slack")


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x} ({float(x):.6f})"


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _weights(args):
    return read_weights(args.weights) if args.weights else DEFAULT_WEIGHTS


def _graph_files(items: list[str]) -> list[Path]:
    out = []
    for item in items:
        p = Path(item)
        out.extend(sorted(p.glob("*.graph")) if p.is_dir() else [p])
    return out


def cmd_mcs(args, out) -> int:
    g, h = read_graph(args.a), read_graph(args.b)
    res = compute_mcs(g, h, _weights(args), args.mode, args.solver)
    if args.format == "csv":
        out.write(_csv([{"a": g.name, "b": h.name, "mode": args.mode, "weight": str(res.weight)}],
                       ("a", "b", "mode", "weight")))
    else:
        out.write(f"weight = {fmt(res.weight)}\n")
    if args.print_mapping:
        for i, (gv, hv) in sorted(res.vertex_map.items()):
            out.write(f"v {i}: {gv} -> {hv}\n")
        for e, (eg, eh) in sorted(res.edge_map.items()):
            out.write(f"e {e[0]}-{e[1]}: {eg[0]}-{eg[1]} -> {eh[0]}-{eh[1]}\n")
    return 0


def cmd_distance(args, out) -> int:
    g, h = read_graph(args.a), read_graph(args.b)
    r = distance(g, h, _weights(args), args.mode)
    if args.format == "csv":
        row = {"a": g.name, "b": h.name, "mode": args.mode, "mcs_weight": str(r.mcs_weight),
               "w_a": str(r.denominators[0]), "w_b": str(r.denominators[1]), "distance": str(r.distance)}
        out.write(_csv([row], tuple(row)))
    else:
        out.write(f"d({g.name}, {h.name}) = {fmt(r.distance)}\n")
        out.write(f"mcs = {fmt(r.mcs_weight)}, w = {r.denominators[0]}, {r.denominators[1]}\n")
    return 0


def cmd_metric_audit(args, out) -> int:
    corpus = [read_graph(p) for p in _graph_files(args.inputs)]
    audit = audit_metric(corpus, _weights(args), args.mode)
    rows = [
        {"a": v.a, "b": v.b, "c": v.c, "d_ab": str(v.d_ab), "d_bc": str(v.d_bc), "d_ac": str(v.d_ac),
         "slack": str(v.slack)}
        for v in audit.triangle_violations
    ]
    if args.csv:
        Path(args.csv).write_text(_csv(rows, AUDIT_COLUMNS))
    if args.format == "csv":
        out.write(_csv(rows, AUDIT_COLUMNS))
        return 0
    out.write(f"graphs: {len(corpus)}, mode: {args.mode}\n")
    out.write(f"identity failures: {len(audit.identity_failures)}\n")
    out.write(f"symmetry failures: {len(audit.symmetry_failures)}\n")
    out.write(f"triangle violations: {len(audit.triangle_violations)}\n")
    for v in audit.triangle_violations:
        out.write(f"  d({v.a},{v.c}) = {v.d_ac} > d({v.a},{v.b}) + d({v.b},{v.c}) = {v.d_ab} + {v.d_bc}; "
                  f"slack {fmt(v.slack)}\n")
    return 0


def cmd_parts(args, out) -> int:
    g = read_graph(args.file)
    if args.all_roots:
        cat = parts_star(g)
    else:
        cat = parts(RootedGraph(g, min(g.vertices) if args.root is None else args.root))
    compound = len(cat.compound_parts())
    if args.format == "csv":
        if args.counts_only:
            out.write(_csv([{"parts": len(cat), "compound": compound}], ("parts", "compound")))
        else:
            rows = [{"id": p.part_id, "root": p.root, "vertices": " ".join(map(str, sorted(p.origin))),
                     "rule": p.rule, "compound": int(p.is_compound_root)} for p in cat]
            out.write(_csv(rows, ("id", "root", "vertices", "rule", "compound")))
        return 0
    if not args.counts_only:
        for p in cat:
            out.write(f"{p}\n")
    out.write(f"parts: {len(cat)}, compound-root: {compound}\n")
    return 0


def cmd_decompose(args, out) -> int:
    g = read_graph(args.file)
    bc = decompose_bc(g)
    if args.format == "csv":
        rows = [{"kind": "block", "index": i, "edges": " ".join(f"{a}-{b}" for a, b in sorted(b))}
                for i, b in enumerate(bc.blocks)]
        rows += [{"kind": "bridge", "index": i, "edges": f"{a}-{b}"} for i, (a, b) in enumerate(sorted(bc.bridges))]
        out.write(_csv(rows, ("kind", "index", "edges")))
        return 0
    for i, vs in enumerate(bc.block_vertices):
        out.write(f"block {i}: vertices={{{', '.join(map(str, sorted(vs)))}}} edges={len(bc.blocks[i])}\n")
    for a, b in sorted(bc.bridges):
        out.write(f"bridge: {a}-{b}\n")
    out.write(f"articulation vertices: {sorted(bc.articulation_vertices)}\n")
    return 0


def cmd_check_outerplanar(args, out) -> int:
    g = read_graph(args.file)
    res = is_outerplanar(g, block_size_limit=args.block_size_limit)
    if res:
        out.write("outerplanar\n")
        for i, cyc in enumerate(res.cycles):
            out.write(f"block {i}: outer cycle {' '.join(map(str, cyc))}\n")
        return 0
    out.write(f"NotOuterplanar: block {res.offending_block} has no outerplanar embedding\n")
    return 1


def cmd_bench(args, out) -> int:
    sizes = [int(x) for x in args.sizes.split(",")]
    fit = bench.fit_growth(sizes, args.solver, args.family, workers=args.workers, seed=args.seed)
    rows = fit.rows()
    text = _csv(rows, bench.CSV_COLUMNS)
    if args.csv:
        Path(args.csv).write_text(text)
    if args.format == "csv":
        out.write(text)
        return 0
    out.write(f"{args.family}, solver {fit.solver}\n")
    for r in rows:
        out.write(f"n={r['n']:>4} calls={r['calls']:>6} max_k={r['max_k']:>4} work={r['sum_k3'] + r['sum_k2']:>14} "
                  f"ratio={r['ratio_prev'] or '-':>9} wall={r['wall_ms']} ms\n")
    out.write(f"log-log slope = {fit.slope:.3f}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--weights", metavar="FILE", help="weight-scheme file")
    common.add_argument("--format", choices=("text", "csv"), help="output format")
    common.add_argument("--seed", type=int, help="seed for random families")

    p = argparse.ArgumentParser(prog="bbpmcs", description="Block-and-bridge preserving maximum common subgraphs.")
    p.add_argument("--weights", metavar="FILE", default=None, help="weight-scheme file")
    p.add_argument("--format", choices=("text", "csv"), default="text", help="output format")
    p.add_argument("--seed", type=int, default=0, help="seed for random families")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("mcs", parents=[common], help="maximum common subgraph weight")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--mode", choices=MODES, default="bbp")
    s.add_argument("--solver", choices=("per-instance", "grouped"), default="per-instance")
    s.add_argument("--print-mapping", action="store_true")
    s.set_defaults(func=cmd_mcs)

    s = sub.add_parser("distance", parents=[common], help="MCS distance between two graphs")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--mode", choices=MODES, default="bbp")
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("metric-audit", parents=[common], help="check metric axioms over a corpus")
    s.add_argument("inputs", nargs="+", help="graph files or directories of *.graph files")
    s.add_argument("--mode", choices=MODES, default="bbp")
    s.add_argument("--csv", metavar="OUT", help="write triangle violations to this CSV file")
    s.set_defaults(func=cmd_metric_audit)

    s = sub.add_parser("parts", parents=[common], help="parts of a rooted tree")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--root", type=int)
    g.add_argument("--all-roots", action="store_true")
    s.add_argument("--counts-only", action="store_true")
    s.set_defaults(func=cmd_parts)

    s = sub.add_parser("decompose", parents=[common], help="blocks and bridges")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("check-outerplanar", parents=[common], help="outerplanarity test")
    s.add_argument("file")
    s.add_argument("--block-size-limit", type=int, default=16)
    s.set_defaults(func=cmd_check_outerplanar)

    s = sub.add_parser("bench", parents=[common], help="matching work-unit growth")
    s.add_argument("family", choices=("star", "path", "random"))
    s.add_argument("--sizes", default="32,64,128")
    s.add_argument("--solver", choices=("per-instance", "grouped"), default="per-instance")
    s.add_argument("--csv", metavar="OUT")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except BBPError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        # bad flag values that argparse cannot see, e.g. --sizes 3,2,1
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
