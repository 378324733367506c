"""Command-line entry point: ``peakwalk analyze|simulate|family|scan|witness``."""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import math
import os
import sys
from typing import Iterator, Sequence

from .dynamics import probability_series
from .enumerate import enumerate_connected_graphs, enumerate_trees
from .errors import PeakwalkError, UnknownName
from .families import gn_facts, xn_facts
from .graph6 import read_graph6
from .graphs import MatrixKind, WeightedGraph, k2_family_graph, matrix, named_graph, xn_graph
from .peak import PeakOptions, Verdict, check_peak_graph
from .survey import BOTH_KINDS, format_tsv, list_witnesses, scan

EXIT_PEAK = 0
EXIT_OTHER = 1
EXIT_USAGE = 2


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


def load_graph(spec: str) -> WeightedGraph:
    """A named graph if ``spec`` names one, otherwise a file.

    ``*.json`` files hold a weighted edge list ``{"n", "edges", "pair"}``;
    anything else is read as graph6 and the first graph is used.
    """
    try:
        return named_graph(spec)
    except (UnknownName, ValueError):
        pass
    if not os.path.exists(spec):
        raise UnknownName(f"{spec!r} is neither a known graph name nor an existing file")
    if spec.lower().endswith(".json"):
        with open(spec, encoding="utf-8") as fh:
            return WeightedGraph.from_json(json.load(fh), label=spec)
    for g in read_graph6(spec):
        return g
    raise ValueError(f"{spec}: no graphs in file")


def _parse_pair(text: str | None, g: WeightedGraph) -> tuple[int, int]:
    if text is None:
        if g.pair is None:
            raise ValueError("graph has no designated pair; pass --pair u,v")
        return g.pair
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"--pair expects 'u,v', got {text!r}") from None
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
        raise ValueError(f"invalid pair ({u}, {v}) for a graph on {g.n} vertices")
    return u, v


def _options(args: argparse.Namespace) -> PeakOptions:
    return PeakOptions.from_env(
        cluster_tol=args.tol_cluster,
        entry_tol=args.tol_entry,
        recog_tol=args.tol_recog,
        pst_tol=args.tol_pst,
    )


def _order_range(text: str) -> range:
    lo, _, hi = text.partition("-")
    try:
        a = int(lo)
        b = int(hi) if hi else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A-B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def _source(args: argparse.Namespace) -> Iterator[WeightedGraph]:
    if args.graph6:
        return read_graph6(args.graph6)
    if args.enumerate:
        return itertools.chain.from_iterable(enumerate_connected_graphs(n) for n in args.enumerate)
    return itertools.chain.from_iterable(enumerate_trees(n) for n in args.trees)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    u, v = _parse_pair(args.pair, g)
    res = check_peak_graph(g, u, v, args.matrix, _options(args))
    print(_dump(res.to_json()))
    return EXIT_PEAK if res.verdict is Verdict.PEAK else EXIT_OTHER


def cmd_simulate(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    u, v = _parse_pair(args.pair, g)
    kind = MatrixKind.parse(args.matrix)
    series = probability_series(matrix(g, kind), u, v, args.tmax, args.steps, kind)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            series.write_csv(fh)
    if args.summary:
        t, p = series.argmax()
        print(_dump({"u": u, "v": v, "matrix": kind.value, "steps": args.steps, "tmax": args.tmax,
                     "argmax_t": t, "max_probability": p}))
    elif not args.out:
        sys.stdout.write(series.to_csv())
    return 0


def cmd_family(args: argparse.Namespace) -> int:
    opts = _options(args)
    if args.name == "xn":
        facts = xn_facts(args.n)
        g = xn_graph(args.n)
    else:
        facts = gn_facts(args.n)
        g = k2_family_graph(args.n)
    out = facts.to_json()
    res = check_peak_graph(g, opts=opts)
    out["engine"] = {"verdict": res.verdict.value, "tau0": res.tau0, "bound": res.bound, "phase": res.phase}
    match = res.verdict is Verdict.PEAK and abs(res.bound - float(out["bound"])) <= 1e-8
    if args.name == "gn":
        match = match and abs(res.tau0 - facts.tau0) <= 1e-8
    elif args.n > 1:
        # for n = 1 the end pair collapses and the engine pair is the edge
        match = match and abs(res.tau0 - math.pi) <= 1e-8 and abs(res.phase - facts.phase) <= 1e-8
    out["engine_match"] = bool(match)
    print(_dump(out))
    return EXIT_PEAK if match else EXIT_OTHER


def cmd_scan(args: argparse.Namespace) -> int:
    kinds = BOTH_KINDS if args.matrix == "both" else (MatrixKind.parse(args.matrix),)
    rows = scan(_source(args), kinds, _options(args), workers=args.workers, strict=args.strict)
    sys.stdout.write(format_tsv(rows))
    return EXIT_OTHER if any(r.failures for r in rows) else 0


def cmd_witness(args: argparse.Namespace) -> int:
    for w in list_witnesses(_source(args), args.matrix, _options(args)):
        print(w.to_jsonl())
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_tolerances(p: argparse.ArgumentParser) -> None:
    grp = p.add_argument_group("tolerances (default: PEAKWALK_TOL_* or built-in)")
    grp.add_argument("--tol-cluster", type=float, help="eigenvalue clustering tolerance")
    grp.add_argument("--tol-entry", type=float, help="idempotent entry zero threshold")
    grp.add_argument("--tol-recog", type=float, help="quadratic-integer recognition tolerance")
    grp.add_argument("--tol-pst", type=float, help="distance of the bound from 1 counted as PST")


def _add_graph(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="graph name (petersen, xn4, path9, ...) or file")
    p.add_argument("--matrix", default="A", choices=["A", "L"], help="adjacency or Laplacian")
    p.add_argument("--pair", help="vertex pair 'u,v' (default: the graph's designated pair)")


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph6", metavar="FILE", help="graph6 file, one graph per line")
    src.add_argument("--enumerate", type=_order_range, metavar="N",
                     help="all connected graphs on N (or A-B) vertices, N <= 8")
    src.add_argument("--trees", type=_order_range, metavar="N", help="all trees on N (or A-B) vertices, N <= 12")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="peakwalk", description="Peak state transfer in quantum walks on graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide peak state transfer for one vertex pair")
    _add_graph(p)
    _add_tolerances(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="transfer probability on a time grid, as CSV")
    _add_graph(p)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--summary", action="store_true", help="print the grid maximum as JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("family", help="exact facts for X_n or G_n, checked against the engine")
    p.add_argument("--name", required=True, choices=["xn", "gn"])
    p.add_argument("--n", type=int, required=True)
    _add_tolerances(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("scan", help="census table as TSV")
    _add_source(p)
    p.add_argument("--matrix", default="both", choices=["A", "L", "both"])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strict", action="store_true", help="re-verify every peak verdict in the time domain")
    _add_tolerances(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("witness", help="every peak (graph, pair) as JSON lines")
    _add_source(p)
    p.add_argument("--matrix", default="A", choices=["A", "L"])
    _add_tolerances(p)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (PeakwalkError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"peakwalk: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
