"""Command-line entry point.

One executable, ten subcommands, machine-readable output. Exit codes:
0 for PASS/complete, 1 for a verified identity mismatch, 2 for an
inconclusive windowed computation (margin never stabilized), 64 for
malformed usage. JSON output is canonical: sorted keys, two-space
indent, rationals rendered "num/den". GKMSLICE_WORKERS caps the worker
pool used for independent slice computations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import arrangement, curves, gkm
from .rootdata import RootDatum, root_datum
from .series import series_to_json

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code pinned to 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def worker_count() -> int:
    env = os.environ.get("GKMSLICE_WORKERS")
    if env is not None:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"GKMSLICE_WORKERS must be an integer, got {env!r}")
        if n < 1:
            raise UsageError("GKMSLICE_WORKERS must be >= 1")
        return n
    return min(8, os.cpu_count() or 1)


def parse_window(text: str, dims: int) -> list[tuple[int, int]]:
    """Parse "lo:hi" or "lo:hi,lo:hi,..."; one range broadcasts."""
    ranges = []
    for chunk in text.split(","):
        parts = chunk.split(":")
        if len(parts) != 2:
            raise UsageError(f"window range must be lo:hi, got {chunk!r}")
        try:
            lo, hi = int(parts[0]), int(parts[1])
        except ValueError:
            raise UsageError(f"window bounds must be integers, got {chunk!r}")
        if lo > hi:
            raise UsageError(f"empty window range {chunk!r}")
        ranges.append((lo, hi))
    if len(ranges) == 1 and dims > 1:
        ranges = ranges * dims
    if len(ranges) != dims:
        raise UsageError(f"window needs {dims} ranges, got {len(ranges)}")
    return ranges


def get_root_datum(label: str, n: int | None) -> RootDatum:
    try:
        return root_datum(label, n)
    except ValueError as exc:
        raise UsageError(str(exc))


def jsonable(value):
    """Coerce report payloads to JSON-safe structures, rationals as str."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {
            (k if isinstance(k, str) else gkm.vertex_name(k)): jsonable(v)
            for k, v in value.items()
        }
    return str(value)


def render_json(payload: dict) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, indent=2) + "\n"


def render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([str(v) for v in row])
    return buf.getvalue()


def emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def add_common(p: Parser, formats=("json", "csv", "human")) -> None:
    p.add_argument("--format", choices=formats, default="json")
    p.add_argument("--output", default=None, help="write the report to this path")


def deg_key(deg: tuple[int, int]) -> str:
    return f"{deg[0]},{deg[1]}"


# ---- subcommand handlers ----


def cmd_jd_series(args) -> int:
    if args.group.strip().upper() != "GL":
        raise UsageError("jd-series supports --group GL (pointwise diagonals)")
    degs = [
        (a, b)
        for total in range(args.maxdeg + 1)
        for a in range(total + 1)
        for b in [total - a]
    ]

    def rank_at(deg):
        return arrangement.jd_slice(args.n, args.d, deg, method=args.method).rank

    workers = worker_count()
    if workers > 1 and len(degs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ranks = list(pool.map(rank_at, degs))
    else:
        ranks = [rank_at(deg) for deg in degs]
    table = {deg: rank for deg, rank in zip(degs, ranks)}
    if args.format == "json":
        payload = {
            "group": f"GL{args.n}",
            "n": args.n,
            "d": args.d,
            "maxdeg": args.maxdeg,
            "method": args.method,
            "table": {deg_key(deg): table[deg] for deg in degs},
        }
        emit(args, render_json(payload))
    elif args.format == "csv":
        rows = [[a, b, table[(a, b)]] for a, b in degs]
        emit(args, render_csv(["xdeg", "ydeg", "rank"], rows))
    else:
        lines = [f"GL{args.n} d={args.d} slice ranks (xdeg, ydeg) -> rank"]
        lines += [f"  ({a}, {b}) -> {table[(a, b)]}" for a, b in degs]
        emit(args, "\n".join(lines) + "\n")
    return EXIT_PASS


def cmd_catalan(args) -> int:
    report = arrangement.catalan_quotient(args.n, method=args.method)
    degs = sorted(report.table)
    if args.format == "json":
        payload = {
            "n": report.n,
            "method": report.method,
            "total": report.total,
            "top_degree": report.top_degree,
            "boundary_zero": report.boundary_zero,
            "table": {deg_key(deg): report.table[deg] for deg in degs},
        }
        emit(args, render_json(payload))
    elif args.format == "csv":
        rows = [[a, b, report.table[(a, b)]] for a, b in degs]
        emit(args, render_csv(["xdeg", "ydeg", "dim"], rows))
    else:
        lines = [f"n={report.n} total={report.total}"]
        lines += [f"  ({a}, {b}) -> {report.table[(a, b)]}" for a, b in degs]
        emit(args, "\n".join(lines) + "\n")
    return EXIT_PASS if report.boundary_zero else EXIT_MISMATCH


def cmd_freeness(args) -> int:
    report = arrangement.freeness_check(args.n, args.d, args.maxdeg, method=args.method)
    failed_stages = sorted({k for k, _ in report.failures})
    stages = [
        {"stage": k, "status": "FAIL" if k in failed_stages else "PASS"}
        for k in range(1, args.n + 1)
    ]
    if args.format == "json":
        payload = {
            "n": report.n,
            "d": report.d,
            "maxdeg": report.max_total,
            "ok": report.ok,
            "checks": report.stages_checked,
            "stages": stages,
            "failures": [
                {"stage": k, "bidegree": list(deg)} for k, deg in report.failures
            ],
        }
        emit(args, render_json(payload))
    elif args.format == "csv":
        rows = [[s["stage"], s["status"]] for s in stages]
        emit(args, render_csv(["stage", "status"], rows))
    else:
        lines = [f"stage {s['stage']}: {s['status']}" for s in stages]
        lines.append("PASS" if report.ok else "FAIL")
        emit(args, "\n".join(lines) + "\n")
    return EXIT_PASS if report.ok else EXIT_MISMATCH


def build_graph(args) -> gkm.GkmGraph:
    label = args.group.strip().upper()
    if label == "FLAG":
        window = parse_window(args.window or "-3:3", 1)
        return gkm.build_flag_rank1_graph(window[0], d=args.d)
    rd = get_root_datum(args.group, getattr(args, "n", None))
    window = parse_window(args.window or "-8:8", rd.rank)
    return gkm.build_gkm_graph(rd, args.d, window)


def cmd_gkm_graph(args) -> int:
    graph = build_graph(args)
    if args.format == "dot":
        emit(args, gkm.graph_to_dot(graph))
    elif args.format == "csv":
        rows = [
            [gkm.vertex_name(a), gkm.vertex_name(b), str(w)] for a, b, w in graph.edges
        ]
        emit(args, render_csv(["a", "b", "weight"], rows))
    elif args.format == "human":
        lines = [f"{graph.label}: {len(graph.vertices)} vertices, {len(graph.edges)} edges"]
        lines += [
            f"  {gkm.vertex_name(a)} -- {gkm.vertex_name(b)}  [{w}]"
            for a, b, w in graph.edges
        ]
        emit(args, "\n".join(lines) + "\n")
    else:
        emit(args, render_json(gkm.graph_to_json(graph)))
    return EXIT_PASS


def named_class(graph: gkm.GkmGraph, name: str, d: int) -> dict:
    """Resolve a class name: b<k> on lattice graphs, pair<k>/step<k>/constant
    on the flag graph."""
    key = name.strip().lower()
    try:
        if key.startswith("b"):
            return gkm.sl2_classes(d, int(key[1:]))
        if key.startswith("pair"):
            return gkm.flag_rank1_classes("pair", int(key[4:]))
        if key.startswith("step"):
            return gkm.flag_rank1_classes("step", int(key[4:]))
        if key == "constant":
            return gkm.flag_constant_class(graph)
    except ValueError:
        pass
    raise UsageError(f"unknown class name {name!r} (use b<k>, pair<k>, step<k>, constant)")


def cmd_gkm_verify(args) -> int:
    graph = build_graph(args)
    if args.classes_file:
        with open(args.classes_file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        cls = gkm.class_from_json(data, graph.ring)
        name = args.classes_file
    elif args.cls:
        cls = named_class(graph, args.cls, args.d)
        name = args.cls
    else:
        raise UsageError("gkm-verify needs --class or --classes-file")
    report = gkm.verify_residue_conditions(graph, cls)
    status = "PASS" if report.ok else "FAIL"
    if args.format == "json":
        payload = {
            "graph": graph.label,
            "class": name,
            "status": status,
            "characters_checked": report.characters_checked,
            "components_checked": report.components_checked,
            "failures": report.failures,
        }
        emit(args, render_json(payload))
    elif args.format == "csv":
        rows = [[f["kind"], jsonable(f)] for f in report.failures]
        emit(args, render_csv(["kind", "detail"], rows))
    else:
        lines = [f"{status}: class {name} on {graph.label}"]
        lines += [f"  {jsonable(f)}" for f in report.failures]
        emit(args, "\n".join(lines) + "\n")
    return EXIT_PASS if report.ok else EXIT_MISMATCH


CURVE_NAMES = {
    "3,3": "three-lines",
    "three-lines": "three-lines",
    "2,4": "tacnode",
    "tacnode": "tacnode",
    "2,2": "node",
    "node": "node",
}


def cmd_msv(args) -> int:
    key = args.curve.strip().lower().replace(" ", "")
    name = CURVE_NAMES.get(key)
    if name is None:
        raise UsageError(f"unknown curve {args.curve!r} (use 3,3 / 2,4 / 2,2 or a name)")
    if name == "three-lines":
        spec = curves.three_lines_spec()
        series = curves.msv_assemble(spec)
        match = series == curves.three_lines_closed_form()
        branches = spec.branches
    elif name == "tacnode":
        spec = curves.tacnode_spec()
        series = curves.msv_assemble(spec)
        match = series == curves.tacnode_closed_form()
        branches = spec.branches
    else:
        series = curves.node_series()
        match = True
        branches = 2
    if args.punctual:
        series = curves.punctual_series(series, branches)
    payload = {
        "curve": name,
        "status": "PASS" if match else "FAIL",
        "closed_form_match": match,
        "punctual": bool(args.punctual),
        "punctual_factor": curves.PUNCTUAL_FACTOR,
        "alternate_factor": curves.ALTERNATE_FACTOR,
        "series": series_to_json(series),
        "first_mismatch": None,
    }
    if args.format == "json":
        emit(args, render_json(payload))
    elif args.format == "csv":
        emit(args, render_csv(["curve", "status"], [[name, payload["status"]]]))
    else:
        emit(args, f"{payload['status']}: {name} series assembled\n")
    return EXIT_PASS if match else EXIT_MISMATCH


def cmd_conjecture_check(args) -> int:
    try:
        report = curves.conjecture_vs_msv(args.n, args.d, order=args.order)
    except ValueError as exc:
        raise UsageError(str(exc))
    first = None
    if report.mismatches:
        deg, coeff, dim = report.mismatches[0]
        first = {"bidegree": list(deg), "series_coefficient": coeff, "quotient_dim": dim}
    if args.format == "json":
        payload = {
            "n": report.n,
            "d": report.d,
            "order": report.order,
            "reference": report.reference_name,
            "status": "PASS" if report.ok else "MISMATCH",
            "first_mismatch": first,
            "table": {deg_key(deg): v for deg, v in sorted(report.table.items())},
        }
        emit(args, render_json(payload))
    elif args.format == "csv":
        rows = [[a, b, v] for (a, b), v in sorted(report.table.items())]
        emit(args, render_csv(["qdeg", "tdeg", "dim"], rows))
    else:
        status = "PASS" if report.ok else f"MISMATCH at {first['bidegree']}"
        emit(args, f"{status}: ({args.n},{args.d}) vs {report.reference_name}"
                   f" through q-order {args.order}\n")
    return EXIT_PASS if report.ok else EXIT_MISMATCH


LINK_NAMES = {"T33": "T(3,3)", "T(3,3)": "T(3,3)", "T24": "T(2,4)", "T(2,4)": "T(2,4)"}


def cmd_compare_knot(args) -> int:
    key = args.link.strip().upper().replace(" ", "")
    name = LINK_NAMES.get(key)
    if name is None:
        raise UsageError(f"unknown link {args.link!r} (use T24 or T33)")
    report = curves.knot_compare(name)
    normalization = f"T^{report.shift}" if report.shift is not None else None
    payload = {
        "link": name,
        "status": "PASS" if report.ok else "FAIL",
        "equal": report.ok,
        "normalization": normalization,
        "factor_used": report.factor_used,
        "alternate_factor": report.alternate_factor,
        "first_mismatch": None if report.ok else "series differ beyond a T power",
    }
    if args.format == "json":
        emit(args, render_json(payload))
    elif args.format == "csv":
        emit(args, render_csv(
            ["link", "equal", "normalization"], [[name, report.ok, normalization]]
        ))
    else:
        emit(args, f"{payload['status']}: {name} normalization {normalization}\n")
    return EXIT_PASS if report.ok else EXIT_MISMATCH


def cmd_ordinary_quotient(args) -> int:
    rd = get_root_datum(args.group, args.n)
    window = parse_window(args.window or "0:1", rd.rank)
    result = arrangement.ordinary_homology_quotient_slice(
        rd, args.d, args.ydeg, window, margin=args.margin
    )
    generators = [str(p) for p in result.submodule.row_polys()]
    if args.format == "json":
        payload = {
            "group": rd.label,
            "d": args.d,
            "ydeg": args.ydeg,
            "window": [list(r) for r in window],
            "ambient_dim": result.ambient_dim,
            "submodule_rank": result.submodule_rank,
            "quotient_dim": result.quotient_dim,
            "status": result.status,
            "margin": result.margin,
            "submodule_rows": generators,
        }
        emit(args, render_json(payload))
    elif args.format == "csv":
        emit(args, render_csv(
            ["ambient_dim", "submodule_rank", "quotient_dim", "status"],
            [[result.ambient_dim, result.submodule_rank, result.quotient_dim, result.status]],
        ))
    else:
        emit(args, f"{result.status}: quotient dim {result.quotient_dim} "
                   f"({result.ambient_dim} ambient, rank {result.submodule_rank})\n")
    return EXIT_PASS if result.status in ("exact", "stabilized") else EXIT_INCONCLUSIVE


def cmd_flag_rank1(args) -> int:
    window = parse_window(args.window or "0:3", 1)[0]
    result = arrangement.flag_rank1_module_slice(window, margin=args.margin)
    lo, hi = window
    pair_ok = all(result.contains(arrangement.flag_pair_element(k)) for k in range(lo, hi + 1))
    step_ok = all(result.contains(arrangement.flag_step_element(k)) for k in range(lo + 1, hi + 1))
    identity_ok = pair_ok and step_ok and result.quotient_dim == 1
    payload = {
        "window": list(window),
        "ambient_dim": result.ambient_dim,
        "submodule_rank": result.space.rank,
        "quotient_dim": result.quotient_dim,
        "status": result.status,
        "margin": result.margin,
        "pair_classes_in_module": pair_ok,
        "step_classes_in_module": step_ok,
    }
    if args.format == "json":
        emit(args, render_json(payload))
    elif args.format == "csv":
        emit(args, render_csv(
            ["quotient_dim", "status", "pair_ok", "step_ok"],
            [[result.quotient_dim, result.status, pair_ok, step_ok]],
        ))
    else:
        emit(args, f"{result.status}: quotient dim {result.quotient_dim}, "
                   f"pair {'PASS' if pair_ok else 'FAIL'}, step {'PASS' if step_ok else 'FAIL'}\n")
    if result.status == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_PASS if identity_ok else EXIT_MISMATCH


def build_parser() -> Parser:
    parser = Parser(prog="gkmslice", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", parser_class=Parser)
    sub.required = True

    p = sub.add_parser("jd-series", help="bigraded slice ranks of a diagonal power")
    p.add_argument("--group", default="GL")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--maxdeg", type=int, default=8)
    p.add_argument("--method", choices=("spanning", "vanishing"), default="spanning")
    add_common(p)
    p.set_defaults(func=cmd_jd_series)

    p = sub.add_parser("catalan", help="bigraded generator table of the diagonal ideal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("spanning", "vanishing"), default="spanning")
    add_common(p)
    p.set_defaults(func=cmd_catalan)

    p = sub.add_parser("freeness", help="regular-sequence stage checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--maxdeg", type=int, default=8)
    p.add_argument("--method", choices=("spanning", "vanishing"), default="spanning")
    add_common(p)
    p.set_defaults(func=cmd_freeness)

    p = sub.add_parser("gkm-graph", help="emit a moment graph as JSON or DOT")
    p.add_argument("--group", required=True, help="GL2, SL2, B2, ..., or FLAG")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--window", default=None,
                   help="lo:hi per lattice dimension; negative bounds need --window=-8:8")
    add_common(p, formats=("json", "dot", "csv", "human"))
    p.set_defaults(func=cmd_gkm_graph)

    p = sub.add_parser("gkm-verify", help="residue conditions for a localized class")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--window", default=None)
    p.add_argument("--class", dest="cls", default=None, help="b<k>, pair<k>, step<k>, constant")
    p.add_argument("--classes-file", default=None, help="JSON tuple-of-forms")
    add_common(p)
    p.set_defaults(func=cmd_gkm_verify)

    p = sub.add_parser("msv", help="assemble a curve counting series")
    p.add_argument("--curve", required=True, help="3,3 / 2,4 / 2,2 or a curve name")
    p.add_argument("--punctual", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_msv)

    p = sub.add_parser("conjecture-check", help="quotient slices vs the curve series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--order", type=int, default=6)
    add_common(p)
    p.set_defaults(func=cmd_conjecture_check)

    p = sub.add_parser("compare-knot", help="punctual series vs a pinned link series")
    p.add_argument("--link", required=True, help="T24 or T33")
    add_common(p)
    p.set_defaults(func=cmd_compare_knot)

    p = sub.add_parser("ordinary-quotient", help="windowed lattice-module quotient")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--ydeg", type=int, default=0)
    p.add_argument("--window", default=None)
    p.add_argument("--margin", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_ordinary_quotient)

    p = sub.add_parser("flag-rank1", help="rank-one flag module window slice")
    p.add_argument("--window", default=None)
    p.add_argument("--margin", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_flag_rank1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"gkmslice: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
