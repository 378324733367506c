"""Isomorph-free generation of small connected graphs and trees.

Connected graphs on n vertices are grown from those on n - 1 vertices by
adding a vertex with a nonempty neighbourhood (every connected graph has
a non-cut vertex), then deduplicated by canonical form. Canonical forms
come from colour refinement plus individualisation, with twin pruning
at each branch point. Trees are grown leaf by leaf and deduplicated with
centre-rooted AHU codes.
"""

from __future__ import annotations

from typing import Iterator

from .errors import BadParam
from .graphs import WeightedGraph

MAX_GRAPH_ORDER = 8
MAX_TREE_ORDER = 12


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for x in cell:
                m |= 1 << x
            masks.append(m)
        new: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for x in cell:
                sig = tuple(_popcount(adj[x] & m) for m in masks)
                groups.setdefault(sig, []).append(x)
            if len(groups) > 1:
                split = True
            for sig in sorted(groups):
                new.append(groups[sig])
        cells = new
        if not split:
            return cells


def _certificate(adj: list[int], order: list[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        row = 0
        nb = adj[v]
        while nb:
            low = nb & -nb
            row |= 1 << pos[low.bit_length() - 1]
            nb ^= low
        rows.append(row)
    return tuple(rows)


def _twins(adj: list[int], a: int, b: int) -> bool:
    return adj[a] & ~(1 << b) == adj[b] & ~(1 << a)


def canonical_form(adj: list[int]) -> tuple[tuple[int, ...], list[int]]:
    """Return ``(certificate, order)`` for a graph given as neighbour bitmasks.

    Two graphs are isomorphic iff their certificates are equal; ``order``
    lists the original vertices in canonical position order.
    """
    n = len(adj)
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            cert = _certificate(adj, order)
            if best[0] is None or cert > best[0]:
                best[0], best[1] = cert, order
            return
        tried: list[int] = []
        for v in cells[target]:
            # swapping twins in the same cell is an automorphism fixing the partition
            if any(_twins(adj, v, w) for w in tried):
                continue
            tried.append(v)
            rest = [x for x in cells[target] if x != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(n))])
    return best[0], best[1]


def graph_to_masks(g: WeightedGraph) -> list[int]:
    adj = [0] * g.n
    for u, v, _ in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def certificate(g: WeightedGraph) -> tuple[int, ...]:
    """Isomorphism-invariant certificate of an unweighted graph."""
    return canonical_form(graph_to_masks(g))[0]


def _masks_to_graph(rows: tuple[int, ...]) -> WeightedGraph:
    n = len(rows)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rows[i] >> j & 1]
    return WeightedGraph(n, tuple(edges))


def _connected_level(n: int) -> list[tuple[int, ...]]:
    level: list[tuple[int, ...]] = [(0,)]
    for k in range(2, n + 1):
        seen: dict[tuple[int, ...], None] = {}
        for rows in level:
            base = list(rows)
            for nbrs in range(1, 1 << (k - 1)):
                adj = base + [nbrs]
                for x in range(k - 1):
                    if nbrs >> x & 1:
                        adj[x] |= 1 << (k - 1)
                cert, _ = canonical_form(adj)
                seen.setdefault(cert, None)
        level = list(seen)
    return level


def enumerate_connected_graphs(n: int) -> Iterator[WeightedGraph]:
    """One canonical representative per connected simple graph on n vertices."""
    if not isinstance(n, int) or not 1 <= n <= MAX_GRAPH_ORDER:
        raise BadParam(f"connected-graph enumeration supports 1 <= n <= {MAX_GRAPH_ORDER}")
    for rows in _connected_level(n):
        yield _masks_to_graph(rows)


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


def _centres(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    leaves = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for leaf in leaves:
            for w in adj[leaf]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
            deg[leaf] = 0
        leaves = nxt
    return leaves


def _ahu(adj: list[list[int]], root: int, parent: int) -> str:
    return "(" + "".join(sorted(_ahu(adj, c, root) for c in adj[root] if c != parent)) + ")"


def tree_code(adj: list[list[int]]) -> str:
    """Canonical string of a free tree given as adjacency lists."""
    return max(_ahu(adj, c, -1) for c in _centres(adj))


def _tree_from_code(code: str) -> WeightedGraph:
    edges, stack, n = [], [], 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        else:
            stack.pop()
    return WeightedGraph(n, tuple(edges))


def enumerate_trees(n: int) -> Iterator[WeightedGraph]:
    """One representative per isomorphism class of trees on n vertices."""
    if not isinstance(n, int) or not 1 <= n <= MAX_TREE_ORDER:
        raise BadParam(f"tree enumeration supports 1 <= n <= {MAX_TREE_ORDER}")
    level = ["()"]
    for _ in range(2, n + 1):
        seen: dict[str, None] = {}
        for code in level:
            t = _tree_from_code(code)
            adj = t.neighbours()
            for v in range(t.n):
                grown = [list(a) for a in adj] + [[v]]
                grown[v].append(t.n)
                seen.setdefault(tree_code(grown), None)
        level = list(seen)
    for code in level:
        yield _tree_from_code(code)
