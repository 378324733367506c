import io
import itertools
import json
import logging

import pytest

from peakwalk.enumerate import certificate, enumerate_connected_graphs, enumerate_trees
from peakwalk.graph6 import encode_graph6, parse_graph6, read_graph6
from peakwalk.graphs import MatrixKind, WeightedGraph, path_graph, star_graph
from peakwalk.peak import PeakOptions, TransferClass, Verdict
from peakwalk.survey import CensusRow, classify_graph, format_tsv, list_witnesses, scan


def connected(*ns):
    return itertools.chain.from_iterable(enumerate_connected_graphs(n) for n in ns)


def test_row_n4():
    (row,) = scan(enumerate_connected_graphs(4))
    assert (row.total, row.peak_A, row.pst_A, row.peak_L, row.pst_L, row.failures) == (6, 4, 1, 5, 2, 0)


def test_row_n6():
    (row,) = scan(enumerate_connected_graphs(6))
    assert (row.peak_A, row.peak_L, row.pst_A, row.pst_L) == (20, 50, 1, 0)


def test_tree_row_n9():
    (row,) = scan(enumerate_trees(9))
    assert (row.total, row.peak_A, row.peak_L, row.pst_A, row.pst_L) == (47, 6, 1, 0, 0)


def test_row_invariants():
    for row in scan(connected(2, 3, 4, 5)):
        assert row.pst_A <= row.peak_A <= row.total
        assert row.pst_L <= row.peak_L <= row.total


def test_rows_sorted_and_merged():
    stream = list(connected(3, 4)) + list(connected(3))
    rows = scan(stream)
    assert [r.n for r in rows] == [3, 4]
    assert rows[0].total == 4


def test_parallel_matches_serial():
    graphs = list(connected(2, 3, 4, 5, 6))
    assert scan(graphs, workers=1) == scan(graphs, workers=3)


def test_single_kind():
    (row,) = scan(enumerate_connected_graphs(4), kinds=["L"])
    assert (row.peak_A, row.pst_A, row.peak_L, row.pst_L) == (0, 0, 5, 2)


def test_strict_mode_agrees():
    graphs = list(connected(2, 3, 4, 5))
    assert scan(graphs, strict=True) == scan(graphs)


@pytest.mark.parametrize("scale", [100.0, 0.01])
def test_tolerance_insensitivity(scale):
    graphs = list(connected(2, 3, 4, 5, 6))
    opts = PeakOptions(cluster_tol=1e-8 * scale, entry_tol=1e-9 * scale)
    assert scan(graphs, opts=opts) == scan(graphs)


def test_failures_are_counted_and_logged(caplog):
    disconnected = WeightedGraph(4, ((0, 1), (2, 3)))
    with caplog.at_level(logging.ERROR, logger="peakwalk.survey"):
        (row,) = scan([disconnected, path_graph(4)])
    assert row.total == 2 and row.failures == 1
    assert "Disconnected" in caplog.text


def test_graph6_stream():
    text = "\n".join(encode_graph6(g) for g in enumerate_connected_graphs(4))
    (row,) = scan(read_graph6(io.StringIO(text)))
    assert row.total == 6 and row.peak_L == 5


def test_merge_requires_same_n():
    with pytest.raises(ValueError):
        CensusRow(3) + CensusRow(4)


def test_tsv_layout():
    text = format_tsv([CensusRow(4, 6, 4, 1, 5, 2, 0)])
    assert text.splitlines() == ["n\ttotal\tpst_A\tpeak_A\tpst_L\tpeak_L\tfailures", "4\t6\t1\t4\t2\t5\t0"]


def test_classify_graph_flags():
    flags = classify_graph(path_graph(3))
    assert flags[MatrixKind.ADJACENCY] == (True, True)
    assert flags[MatrixKind.LAPLACIAN] == (True, False)


# --- witnesses --------------------------------------------------------------------------


def test_witnesses_trees_ten_laplacian():
    found = list(list_witnesses(enumerate_trees(10), "L"))
    graphs = {encode_graph6(w.graph) for w in found}
    assert len(graphs) == 2
    star = encode_graph6(star_graph(9))
    certs = {certificate(parse_graph6(g6)) for g6 in graphs}
    assert certificate(parse_graph6(star)) in certs
    assert all(w.result.verdict is Verdict.PEAK for w in found)


def test_witness_p3():
    found = list(list_witnesses(enumerate_trees(3), "A"))
    perfect = [(w.u, w.v) for w in found if w.result.classification is TransferClass.PERFECT]
    assert len(found) == 3 and perfect == [(1, 2)]


def test_witness_k2():
    (w,) = list(list_witnesses(enumerate_connected_graphs(2)))
    assert w.result.bound == pytest.approx(1.0)
    record = json.loads(w.to_jsonl())
    assert record["graph6"] == "A_" and record["result"]["verdict"] == "Peak"
