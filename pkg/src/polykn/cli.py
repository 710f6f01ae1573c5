"""Command-line front end: construct, verify, witness, search, table, transform.

Colorings travel as JSON documents {"n": ..., "k": ..., "edges": [[i, j, c],
...]} with 1-indexed endpoints, i < j, and a tight palette.  Exit codes:
0 success, 1 verification found a violation (or no witness applies), 2 bad
input or flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .constructions import FamilyKind, build
from .core import EdgeColoring, comb_certificate, majority_certificate
from .search import SearchReport, brute_force_poly, structured_poly, theorem_table
from .transforms import improve_toward_combed, recolor_unitary_triple
from .verify import adversarial_hamcycle, adversarial_matching, is_polychromatic

# fixed 12-entry palette for DOT output, cycled by color index
DOT_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)


class CliError(Exception):
    pass


def coloring_to_document(c: EdgeColoring) -> dict:
    return {"n": c.n, "k": c.k, "edges": [[i, j, col] for (i, j, col) in c.edges()]}


def coloring_from_document(doc: dict) -> EdgeColoring:
    try:
        n = int(doc["n"])
        k = int(doc["k"])
        edges = doc["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed coloring document: {exc}")
    if n < 2 or len(edges) != n * (n - 1) // 2:
        raise CliError(f"expected {n * (n - 1) // 2} edges for n={n}, got {len(edges)}")
    mapping = {}
    seen_colors = set()
    for item in edges:
        if len(item) != 3:
            raise CliError(f"bad edge entry {item!r}")
        i, j, col = (int(x) for x in item)
        if not (1 <= i < j <= n):
            raise CliError(f"bad edge endpoints ({i}, {j})")
        if not (1 <= col <= k):
            raise CliError(f"color {col} outside 1..{k}")
        if (i, j) in mapping:
            raise CliError(f"duplicate edge ({i}, {j})")
        mapping[(i, j)] = col
        seen_colors.add(col)
    if seen_colors != set(range(1, k + 1)):
        raise CliError(f"palette not tight: colors {sorted(seen_colors)} vs k={k}")
    return EdgeColoring.from_pairs(n, mapping)


def coloring_to_dot(c: EdgeColoring) -> str:
    lines = [f"graph k{c.n} {{"]
    for (i, j, col) in c.edges():
        hexcode = DOT_PALETTE[(col - 1) % len(DOT_PALETTE)]
        lines.append(f'  {i} -- {j} [color="{hexcode}", label={col}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_coloring(path: str) -> EdgeColoring:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read coloring from {path}: {exc}")
    return coloring_from_document(doc)


def _emit_coloring(c: EdgeColoring, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _emit(json.dumps(coloring_to_document(c), indent=2) + "\n", out)
    elif fmt == "dot":
        _emit(coloring_to_dot(c), out)
    else:
        raise CliError(f"format {fmt!r} not supported for colorings (use json or dot)")


def _cmd_construct(args) -> int:
    kind = FamilyKind.parse(args.family)
    c = build(kind, args.n)
    _emit_coloring(c, args.format, args.out)
    return 0


def _cmd_verify(args) -> int:
    kind = FamilyKind.parse(args.family)
    c = _load_coloring(args.input)
    cert = is_polychromatic(c, kind)
    if cert.polychromatic:
        print(f"polychromatic: n={c.n} k={c.k} family={kind.value}")
        return 0
    print(
        f"violated: color {cert.violating_color} avoided by "
        f"{kind.value} member {list(cert.witness.edges)}"
    )
    return 1


def _cmd_witness(args) -> int:
    kind = FamilyKind.parse(args.family)
    c = _load_coloring(args.input)
    ic = comb_certificate(c)
    if ic is None:
        raise CliError("input coloring is not combed; no inherited classes exist")
    strict = kind is FamilyKind.ONE_FACTOR
    cert = majority_certificate(ic, strict=strict)
    entry = cert.entry(args.color)
    if entry.status != "fails":
        detail = f"j={entry.j}" if entry.status == "prefix" else "unitary vertex"
        print(f"no witness: color {args.color} satisfies the majority condition ({detail})")
        return 1
    if strict:
        witness = adversarial_matching(ic, args.color)
    else:
        witness = adversarial_hamcycle(ic, args.color)
    doc = {
        "family": witness.kind.value,
        "avoided_color": args.color,
        "edges": [list(e) for e in witness.edges],
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def _report_to_text(report: SearchReport) -> str:
    lines = [
        f"n={report.n} family={report.kind.value} mode={report.mode}",
        f"optimum k = {report.optimum}",
        f"nodes explored = {report.nodes}",
        f"wall time = {report.wall_time:.3f}s",
        "one optimal coloring:",
        json.dumps(coloring_to_document(report.coloring)),
    ]
    return "\n".join(lines) + "\n"


def _cmd_search(args) -> int:
    kind = FamilyKind.parse(args.family)
    if args.mode == "full":
        report = brute_force_poly(args.n, kind, threads=args.threads)
    else:
        report = structured_poly(args.n, kind, args.mode, threads=args.threads)
    _emit(_report_to_text(report), args.out)
    return 0


def _parse_range(spec: str) -> range:
    try:
        lo, hi = spec.split(":")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise CliError(f"bad range {spec!r}, expected a:b")


def _cmd_table(args) -> int:
    kind = FamilyKind.parse(args.family)
    if args.n_range:
        ns = _parse_range(args.n_range)
    elif args.n:
        ns = range(args.n, args.n + 1)
    else:
        raise CliError("table needs --n or --n-range")
    rows = theorem_table(kind, ns)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["n", "family", "construction_k", "formula_k", "search_k", "search_mode", "agrees"]
        )
        for r in rows:
            writer.writerow([
                r.n, r.kind.value, r.construction_k, r.formula_k,
                r.search_k if r.search_k is not None else "",
                r.search_mode or "",
                str(r.agrees).lower(),
            ])
        _emit(buf.getvalue(), args.out)
    elif args.format == "json":
        payload = [
            {
                "n": r.n, "family": r.kind.value,
                "construction_k": r.construction_k, "formula_k": r.formula_k,
                "search_k": r.search_k, "search_mode": r.search_mode,
                "agrees": r.agrees,
            }
            for r in rows
        ]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = ["   n construction formula search agree"]
        for r in rows:
            search = str(r.search_k) if r.search_k is not None else "-"
            lines.append(
                f"{r.n:4d} {r.construction_k:12d} {r.formula_k:7d} "
                f"{search:>6s} {'yes' if r.agrees else 'NO':>5s}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_transform(args) -> int:
    kind = FamilyKind.parse(args.family)
    c = _load_coloring(args.input)
    if args.op == "improve":
        result = improve_toward_combed(c, kind)
        print(
            f"moves={result.moves} combed={str(result.combed).lower()} "
            f"constant_set={result.constant_set_size}"
        )
        _emit_coloring(result.coloring, args.format, args.out)
    else:
        try:
            x, y, z = (int(v) for v in args.vertices.split(","))
        except (AttributeError, ValueError):
            raise CliError("recolor needs --vertices x,y,z")
        _emit_coloring(recolor_unitary_triple(c, x, y, z), args.format, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polykn",
        description="Polychromatic edge-colorings of complete graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_family=True):
        if need_family:
            p.add_argument("--family", required=True, choices=["f1", "f2", "hc"])
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=None, help="reserved; algorithms are deterministic")

    p = sub.add_parser("construct", help="emit the built-in polychromatic coloring")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", default="json", choices=["json", "dot"])

    p = sub.add_parser("verify", help="check a coloring document for polychromaticity")
    common(p)
    p.add_argument("--input", required=True)

    p = sub.add_parser("witness", help="adversarial member for a failing majority color")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--color", type=int, required=True)

    p = sub.add_parser("search", help="exact or restricted search for the optimum")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", default="full", choices=["full", "ordered", "combed"])
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("table", help="construction/formula/search comparison table")
    common(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-range", dest="n_range", default=None)
    p.add_argument("--format", default="table", choices=["table", "csv", "json"])

    p = sub.add_parser("transform", help="apply a coloring transform")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--op", default="improve", choices=["improve", "recolor"])
    p.add_argument("--vertices", default=None, help="x,y,z for --op recolor")
    p.add_argument("--format", default="json", choices=["json", "dot"])

    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    handlers = {
        "construct": _cmd_construct,
        "verify": _cmd_verify,
        "witness": _cmd_witness,
        "search": _cmd_search,
        "table": _cmd_table,
        "transform": _cmd_transform,
    }
    try:
        return handlers[args.command](args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
