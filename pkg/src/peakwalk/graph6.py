"""graph6 reading and writing (unweighted simple graphs only).

Format: N(n) then the upper triangle x(0,1), x(0,2), x(1,2), x(0,3), ...
packed six bits per byte, most significant bit first, each byte offset
by 63. N(n) is one byte for n <= 62 and ``~`` plus three bytes up to
258047; the 36-bit ``~~`` form is rejected.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator, TextIO

from .errors import BadParam, MalformedGraph6, UnsupportedOrder
from .graphs import WeightedGraph

MAX_ORDER = 258047
_HEADER = ">>graph6<<"


def _decode_order(data: bytes) -> tuple[int, int]:
    if not data:
        raise MalformedGraph6("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        raise UnsupportedOrder("graphs with more than 258047 vertices are not supported")
    if len(data) < 4:
        raise MalformedGraph6("truncated long-form vertex count")
    n = 0
    for byte in data[1:4]:
        n = (n << 6) | (byte - 63)
    if n <= 62:
        raise MalformedGraph6("long-form vertex count used for n <= 62")
    return n, 4


def parse_graph6(line: str) -> WeightedGraph:
    """Decode one graph6 string into a unit-weight graph."""
    text = line.strip()
    if text.startswith(_HEADER):
        text = text[len(_HEADER):]
    try:
        data = text.encode("ascii")
    except UnicodeEncodeError:
        raise MalformedGraph6("non-ASCII character in graph6 string") from None
    bad = [b for b in data if b < 63 or b > 126]
    if bad:
        raise MalformedGraph6(f"byte {bad[0]} outside the graph6 range 63..126")
    n, offset = _decode_order(data)
    if n < 1:
        raise UnsupportedOrder("the null graph (n = 0) has no vertices to walk on")
    nbits = n * (n - 1) // 2
    body = data[offset:]
    if len(body) != (nbits + 5) // 6:
        raise MalformedGraph6(
            f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    for pad in range(k, 6 * len(body)):
        if (body[pad // 6] - 63) >> (5 - pad % 6) & 1:
            raise MalformedGraph6("nonzero padding bits")
    return WeightedGraph(n, tuple(edges), text)


def encode_graph6(g: WeightedGraph) -> str:
    """Encode a unit-weight graph; raises BadParam for weighted graphs."""
    if not g.is_unweighted:
        raise BadParam("graph6 cannot carry edge weights; use the JSON edge-list format")
    n = g.n
    if n > MAX_ORDER:
        raise UnsupportedOrder(f"n={n} exceeds {MAX_ORDER}")
    if n <= 62:
        out = [n + 63]
    else:
        out = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    present = {(u, v) for u, v, _ in g.edges}
    bits = [(i, j) in present for j in range(1, n) for i in range(j)]
    bits += [False] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out).decode("ascii")


def iter_graph6(source: str | Path | TextIO) -> Iterator[tuple[int, WeightedGraph]]:
    """Yield ``(line_number, graph)`` for each non-blank line.

    Parse errors are re-raised with the offending line number attached.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="ascii") as fh:
            yield from iter_graph6(fh)
        return
    for lineno, line in enumerate(source, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            yield lineno, parse_graph6(text)
        except (MalformedGraph6, UnsupportedOrder) as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None


def read_graph6(source: str | Path | TextIO) -> Iterator[WeightedGraph]:
    for _, g in iter_graph6(source):
        yield g
