"""Census of peak and perfect state transfer over streams of graphs."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph6 import encode_graph6
from .graphs import MatrixKind, WeightedGraph, matrix
from .peak import (
    PeakOptions,
    PeakResult,
    TransferClass,
    Verdict,
    check_peak,
    check_peak_laplacian,
    verify_at_time,
)
from .spectral import decompose

log = logging.getLogger(__name__)

BOTH_KINDS = (MatrixKind.ADJACENCY, MatrixKind.LAPLACIAN)


@dataclass(frozen=True)
class CensusRow:
    n: int
    total: int = 0
    peak_A: int = 0
    pst_A: int = 0
    peak_L: int = 0
    pst_L: int = 0
    failures: int = 0

    def __add__(self, other: CensusRow) -> CensusRow:
        if self.n != other.n:
            raise ValueError("cannot merge rows for different n")
        return CensusRow(
            self.n,
            self.total + other.total,
            self.peak_A + other.peak_A,
            self.pst_A + other.pst_A,
            self.peak_L + other.peak_L,
            self.pst_L + other.pst_L,
            self.failures + other.failures,
        )

    def as_tuple(self) -> tuple[int, ...]:
        return (self.n, self.total, self.peak_A, self.pst_A, self.peak_L, self.pst_L, self.failures)


TSV_COLUMNS = ("n", "total", "pst_A", "peak_A", "pst_L", "peak_L", "failures")


def format_tsv(rows: Iterable[CensusRow]) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    for r in rows:
        lines.append("\t".join(str(getattr(r, c)) for c in TSV_COLUMNS))
    return "\n".join(lines) + "\n"


def _pair_check(g: WeightedGraph, kind: MatrixKind, M, dec, u: int, v: int, opts: PeakOptions) -> PeakResult:
    if kind is MatrixKind.LAPLACIAN:
        return check_peak_laplacian(g, u, v, opts, dec=dec)
    return check_peak(M, u, v, opts, dec=dec)


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    for u in range(n):
        for v in range(u + 1, n):
            yield u, v


def _confirmed(dec, res: PeakResult, opts: PeakOptions) -> bool:
    check = verify_at_time(dec, res.u, res.v, res.tau0, entry_tol=opts.entry_tol)
    if not check.is_peak:
        log.warning("peak verdict for (%d, %d) not confirmed at tau0=%.12g: %s",
                    res.u, res.v, res.tau0, check.detail)
    return check.is_peak


def classify_graph(
    g: WeightedGraph,
    kinds: Sequence[MatrixKind] = BOTH_KINDS,
    opts: PeakOptions | None = None,
    strict: bool = False,
) -> dict[MatrixKind, tuple[bool, bool]]:
    """For each kind, whether some vertex pair has peak transfer and whether some has PST.

    The decomposition is computed once per kind; the pair loop stops as
    soon as both flags are set.
    """
    opts = opts or PeakOptions()
    out = {}
    for kind in kinds:
        M = matrix(g, kind)
        dec = decompose(M, opts.cluster_tol)
        peak = pst = False
        for u, v in _pairs(g.n):
            res = _pair_check(g, kind, M, dec, u, v, opts)
            if res.verdict is not Verdict.PEAK:
                continue
            if strict and not _confirmed(dec, res, opts):
                continue
            peak = True
            if res.classification is TransferClass.PERFECT:
                pst = True
            if pst:
                break
        out[kind] = (peak, pst)
    return out


def _row_for(g: WeightedGraph, kinds: Sequence[MatrixKind], opts: PeakOptions, strict: bool) -> CensusRow:
    try:
        flags = classify_graph(g, kinds, opts, strict)
    except Exception as exc:  # engine failure on one graph must not abort the census
        log.error("graph %s (n=%d) failed: %s: %s", _describe(g), g.n, type(exc).__name__, exc)
        return CensusRow(g.n, total=1, failures=1)
    a = flags.get(MatrixKind.ADJACENCY, (False, False))
    lap = flags.get(MatrixKind.LAPLACIAN, (False, False))
    return CensusRow(g.n, 1, int(a[0]), int(a[1]), int(lap[0]), int(lap[1]), 0)


def _row_task(args: tuple) -> CensusRow:
    return _row_for(*args)


def _describe(g: WeightedGraph) -> str:
    if g.label:
        return g.label
    try:
        return encode_graph6(g)
    except ValueError:
        return repr(g.edges)


def scan(
    source: Iterable[WeightedGraph],
    kinds: Iterable[MatrixKind | str] = BOTH_KINDS,
    opts: PeakOptions | None = None,
    workers: int = 1,
    strict: bool = False,
) -> list[CensusRow]:
    """Count graphs with peak / perfect state transfer between some pair, per order n.

    Graphs are independent, so with ``workers > 1`` they are farmed out to
    a process pool; rows are merged by addition, which makes the result
    independent of scheduling. Rows come back sorted by n.
    """
    kinds = tuple(dict.fromkeys(MatrixKind.parse(k) for k in kinds))
    opts = opts or PeakOptions()
    if workers < 1:
        raise ValueError("workers must be at least 1")
    tasks = ((g, kinds, opts, strict) for g in source)
    acc: dict[int, CensusRow] = {}
    if workers == 1:
        results: Iterable[CensusRow] = map(_row_task, tasks)
        for row in results:
            acc[row.n] = acc[row.n] + row if row.n in acc else row
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for row in pool.map(_row_task, tasks, chunksize=64):
                acc[row.n] = acc[row.n] + row if row.n in acc else row
    return [acc[n] for n in sorted(acc)]


@dataclass(frozen=True)
class Witness:
    graph: WeightedGraph
    u: int
    v: int
    result: PeakResult

    def to_json(self) -> dict:
        return {"graph6": encode_graph6(self.graph), "n": self.graph.n, "u": self.u, "v": self.v,
                "result": self.result.to_json()}

    def to_jsonl(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def list_witnesses(
    source: Iterable[WeightedGraph],
    kind: MatrixKind | str = MatrixKind.ADJACENCY,
    opts: PeakOptions | None = None,
) -> Iterator[Witness]:
    """Every (graph, pair) in the stream with a Peak verdict, in stream order."""
    kind = MatrixKind.parse(kind)
    opts = opts or PeakOptions()
    for g in source:
        M = matrix(g, kind)
        dec = decompose(M, opts.cluster_tol)
        for u, v in _pairs(g.n):
            res = _pair_check(g, kind, M, dec, u, v, opts)
            if res.verdict is Verdict.PEAK:
                yield Witness(g, u, v, res)
