import io

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from peakwalk.enumerate import enumerate_connected_graphs
from peakwalk.errors import BadParam, MalformedGraph6, UnsupportedOrder
from peakwalk.graph6 import encode_graph6, iter_graph6, parse_graph6, read_graph6
from peakwalk.graphs import WeightedGraph, petersen_graph, xn_graph


def edge_set(g):
    return {(u, v) for u, v, _ in g.edges}


@pytest.mark.parametrize("text,n,edges", [
    ("A_", 2, {(0, 1)}),
    ("Bw", 3, {(0, 1), (0, 2), (1, 2)}),
    ("A?", 2, set()),
])
def test_hand_decoded(text, n, edges):
    g = parse_graph6(text)
    assert g.n == n and edge_set(g) == edges


def test_header_is_accepted():
    assert edge_set(parse_graph6(">>graph6<<A_")) == {(0, 1)}


@st.composite
def random_graphs(draw, max_n=70):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return WeightedGraph(n, tuple(p for p, keep in zip(pairs, mask) if keep))


@given(random_graphs())
def test_round_trip_and_networkx_agreement(g):
    text = encode_graph6(g)
    assert parse_graph6(text).edges == g.edges
    ref = nx.Graph()
    ref.add_nodes_from(range(g.n))
    ref.add_edges_from(edge_set(g))
    assert text == nx.to_graph6_bytes(ref, header=False).decode().strip()


def test_long_form_order():
    ref = nx.path_graph(100)
    text = nx.to_graph6_bytes(ref, header=False).decode().strip()
    g = parse_graph6(text)
    assert g.n == 100 and edge_set(g) == set(ref.edges())
    assert encode_graph6(g) == text


@pytest.mark.parametrize("n", range(1, 8))
def test_round_trip_enumerated(n):
    for g in enumerate_connected_graphs(n):
        assert parse_graph6(encode_graph6(g)).edges == g.edges


@pytest.mark.slow
def test_round_trip_enumerated_eight():
    for g in enumerate_connected_graphs(8):
        assert parse_graph6(encode_graph6(g)).edges == g.edges


def test_petersen_matches_networkx():
    assert encode_graph6(petersen_graph()) == nx.to_graph6_bytes(nx.petersen_graph(), header=False).decode().strip()


@pytest.mark.parametrize("bad", ["", "A", "A_?", "B ", "Bw\x7f", "A`"])
def test_malformed(bad):
    with pytest.raises(MalformedGraph6):
        parse_graph6(bad)


def test_unsupported_orders():
    with pytest.raises(UnsupportedOrder):
        parse_graph6("?")
    with pytest.raises(UnsupportedOrder):
        parse_graph6("~~??????")


def test_weighted_graph_cannot_be_encoded():
    with pytest.raises(BadParam):
        encode_graph6(xn_graph(2))


def test_line_numbers_in_errors():
    stream = io.StringIO("A_\n\nBw\nB!\n")
    with pytest.raises(MalformedGraph6, match="line 4"):
        list(iter_graph6(stream))


def test_read_skips_blank_lines():
    graphs = list(read_graph6(io.StringIO("A_\n\n  \nBw\n")))
    assert [g.n for g in graphs] == [2, 3]
