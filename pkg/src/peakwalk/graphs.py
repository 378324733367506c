"""Weighted graphs, their adjacency/Laplacian matrices and named constructors.

Vertices are 0-based everywhere. Each named graph stores its designated
transfer pair.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import BadParam, UnknownName

Edge = tuple[int, int, float]


class MatrixKind(str, Enum):
    ADJACENCY = "A"
    LAPLACIAN = "L"

    @classmethod
    def parse(cls, text: str | MatrixKind) -> MatrixKind:
        if isinstance(text, MatrixKind):
            return text
        key = text.strip().upper()
        for kind in cls:
            if key in (kind.value, kind.name):
                return kind
        raise BadParam(f"unknown matrix kind {text!r} (expected A or L)")


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with nonzero finite edge weights.

    ``edges`` is normalised to sorted ``(u, v, w)`` triples with ``u < v``.
    ``pair`` is the distinguished vertex pair when the source designates one.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    label: str | None = None
    pair: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise BadParam(f"vertex count must be a positive integer, got {self.n!r}")
        norm: list[Edge] = []
        seen: set[tuple[int, int]] = set()
        for item in self.edges:
            if len(item) == 2:
                u, v = item
                w = 1.0
            else:
                u, v, w = item
            u, v, w = int(u), int(v), float(w)
            if u == v:
                raise BadParam(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if u < 0 or v >= self.n:
                raise BadParam(f"edge ({u}, {v}) out of range for n={self.n}")
            if not math.isfinite(w) or w == 0.0:
                raise BadParam(f"edge ({u}, {v}) has invalid weight {w!r}")
            if (u, v) in seen:
                raise BadParam(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            norm.append((u, v, w))
        norm.sort()
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(norm))
        if self.pair is not None:
            u, v = (int(x) for x in self.pair)
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise BadParam(f"invalid designated pair {self.pair!r}")
            object.__setattr__(self, "pair", (u, v))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges)

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.neighbours()]

    def is_connected(self) -> bool:
        adj = self.neighbours()
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def with_pair(self, u: int, v: int) -> WeightedGraph:
        return WeightedGraph(self.n, self.edges, self.label, (u, v))

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "edges": [[u, v, w] for u, v, w in self.edges]}
        if self.pair is not None:
            out["pair"] = list(self.pair)
        return out

    @classmethod
    def from_json(cls, data: dict | str, label: str | None = None) -> WeightedGraph:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = data["n"]
            edges = [tuple(e) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise BadParam(f"weighted JSON needs 'n' and 'edges': {exc}") from None
        pair = data.get("pair")
        return cls(n, tuple(edges), label or data.get("label"), tuple(pair) if pair else None)


def matrix(g: WeightedGraph, kind: MatrixKind | str = MatrixKind.ADJACENCY) -> np.ndarray:
    """Dense real symmetric matrix of ``g``.

    The Laplacian uses weighted degrees on the diagonal and ``-w`` off it.
    """
    kind = MatrixKind.parse(kind)
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        a[u, v] = a[v, u] = w
    if kind is MatrixKind.ADJACENCY:
        return a
    return np.diag(a.sum(axis=1)) - a


def adjacency_matrix(g: WeightedGraph) -> np.ndarray:
    return matrix(g, MatrixKind.ADJACENCY)


def laplacian_matrix(g: WeightedGraph) -> np.ndarray:
    return matrix(g, MatrixKind.LAPLACIAN)


def _check_order(n: int, lo: int = 1) -> int:
    if not isinstance(n, (int, np.integer)) or n < lo:
        raise BadParam(f"parameter must be an integer >= {lo}, got {n!r}")
    return int(n)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def path_graph(n: int) -> WeightedGraph:
    """Path 0-1-...-(n-1); designated pair is the two ends."""
    n = _check_order(n)
    pair = (0, n - 1) if n > 1 else None
    return WeightedGraph(n, tuple((i, i + 1) for i in range(n - 1)), f"path{n}", pair)


def cycle_graph(n: int) -> WeightedGraph:
    n = _check_order(n, 3)
    edges = [(i, (i + 1) % n) for i in range(n)]
    return WeightedGraph(n, tuple(edges), f"cycle{n}", (0, n // 2))


def complete_graph(n: int) -> WeightedGraph:
    n = _check_order(n)
    pair = (0, 1) if n > 1 else None
    return WeightedGraph(n, tuple(combinations(range(n), 2)), f"complete{n}", pair)


def star_graph(n: int) -> WeightedGraph:
    """K_{1,n}: centre 0 joined to leaves 1..n; pair is centre-to-leaf."""
    n = _check_order(n)
    return WeightedGraph(n + 1, tuple((0, i) for i in range(1, n + 1)), f"star{n}", (0, 1))


def hypercube_graph(d: int) -> WeightedGraph:
    """Q_d on bit strings; pair is the antipodal pair (0, 2^d - 1)."""
    d = _check_order(d)
    n = 1 << d
    edges = [(x, x | (1 << b)) for x in range(n) for b in range(d) if not x & (1 << b)]
    return WeightedGraph(n, tuple(edges), f"hypercube{d}", (0, n - 1))


def petersen_graph() -> WeightedGraph:
    """Petersen graph with the outer 5-cycle on 0..4.

    Spokes join i and i + 5, and the inner vertices 5..9 form a pentagram.
    Relative to the usual drawing with inner labels 1..5 and outer 6..10,
    outer vertex 5 + i becomes i and inner vertex i becomes 4 + i. The
    designated pair is the spoke (0, 5); every edge behaves the same.
    """
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return WeightedGraph(10, tuple(outer + spokes + inner), "petersen", (0, 5))


_G11_EDGES = (
    "0/1,0/2,0/3,1/2,1/3,2/3,0/5,1/8,3/4,4/6,4/7,5/6,6/7,7/8,6/9,7/9,"
    "5/10,6/10,7/10,8/10,9/10"
)
_G12_EDGES = (
    "0/1,0/4,0/6,1/2,2/3,3/4,4/5,5/6,1/11,2/8,3/7,4/7,5/7,5/9,6/9,6/10,"
    "7/8,7/9,8/9,9/10,8/11,10/11"
)


def _parse_edges(spec: str) -> tuple[tuple[int, int], ...]:
    return tuple(tuple(int(x) for x in item.split("/")) for item in spec.split(","))  # type: ignore[misc]


def g11_graph() -> WeightedGraph:
    """The 11-vertex planar graph with adjacency peak transfer at distance 4.

    The designated pair is u = 2, v = 9.
    """
    return WeightedGraph(11, _parse_edges(_G11_EDGES), "g11", (2, 9))


def g12_graph() -> WeightedGraph:
    """The 12-vertex self-dual planar graph with Laplacian peak transfer.

    The designated pair is u = 0, v = 8.
    """
    return WeightedGraph(12, _parse_edges(_G12_EDGES), "g12", (0, 8))


def signed_c4_graph() -> WeightedGraph:
    """C4 with edge 0-1 weighted -1 (zero transfer between 0,2 and 1,3)."""
    edges = ((0, 1, -1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0))
    return WeightedGraph(4, edges, "c4neg", (0, 2))


def k2_family_graph(n: int) -> WeightedGraph:
    """G_n: n copies of K2, one endpoint of each joined to both u and v.

    Vertex 0 is v, vertex 1 is u, and copy i
    (0-based) is the edge (2 + 2i, 3 + 2i) with 2 + 2i adjacent to u and v.
    """
    n = _check_order(n)
    edges = []
    for i in range(n):
        a, b = 2 + 2 * i, 3 + 2 * i
        edges += [(0, a), (1, a), (a, b)]
    return WeightedGraph(2 * n + 2, tuple(edges), f"k2family{n}", (1, 0))


def xn_labels(n: int) -> list[str]:
    """Names of the vertices of X_n in path order: v_n, w_1, v_{n-1}, ..., v_1, w_n."""
    n = _check_order(n)
    out = []
    for k in range(1, n + 1):
        out += [f"v{n + 1 - k}", f"w{k}"]
    return out


def _xn_index_sizes(n: int) -> list[int]:
    # subscript of the vertex at each path position
    sizes = []
    for k in range(1, n + 1):
        sizes += [n + 1 - k, k]
    return sizes


def xn_graph(n: int) -> WeightedGraph:
    """The weighted path X_n on 2n vertices.

    Position 2k-2 holds v_{n+1-k} and position 2k-1 holds w_k; the edge
    v_j w_k has weight sqrt(j k). The designated pair is (w_1, w_n), i.e.
    positions 1 and 2n-1. For n = 1 these coincide, and the pair is the
    edge (v_1, w_1) instead.
    """
    n = _check_order(n)
    sizes = _xn_index_sizes(n)
    edges = [(p, p + 1, math.sqrt(sizes[p] * sizes[p + 1])) for p in range(2 * n - 1)]
    pair = (0, 1) if n == 1 else (1, 2 * n - 1)
    return WeightedGraph(2 * n, tuple(edges), f"xn{n}", pair)


def yn_partition(n: int) -> list[list[int]]:
    """Vertex classes of Y_n in X_n path order (class p has size of its subscript)."""
    n = _check_order(n)
    classes, start = [], 0
    for size in _xn_index_sizes(n):
        classes.append(list(range(start, start + size)))
        start += size
    return classes


def yn_graph(n: int) -> WeightedGraph:
    """Unweighted blow-up Y_n of X_n.

    Every vertex v_j, w_j of X_n becomes a class of j vertices and every
    edge becomes a complete bipartite join. The pair is one vertex of W_1
    and one of W_n, or the single edge when n = 1.
    """
    classes = yn_partition(n)
    edges = []
    for a, b in zip(classes, classes[1:]):
        edges += [(x, y) for x in a for y in b]
    total = classes[-1][-1] + 1
    pair = (0, 1) if n == 1 else (classes[1][0], classes[-1][0])
    return WeightedGraph(total, tuple(edges), f"yn{n}", pair)


_FIXED = {
    "petersen": petersen_graph,
    "g11": g11_graph,
    "g12": g12_graph,
    "c4neg": signed_c4_graph,
    "k2": lambda: path_graph(2),
}

_PARAMETRISED = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "star": star_graph,
    "hypercube": hypercube_graph,
    "k2family": k2_family_graph,
    "gn": k2_family_graph,
    "xn": xn_graph,
    "yn": yn_graph,
}

_NAME_RE = re.compile(r"^([a-z_][a-z0-9_]*?)(?:[(:]?(-?\d+)\)?)?$")


def named_graph(name: str, *params: int) -> WeightedGraph:
    """Resolve a graph by name.

    Accepts ``petersen``, ``g11``, ``g12``, ``c4neg``, ``k2`` and the
    parametrised families ``path``, ``cycle``, ``complete``, ``star``,
    ``hypercube``, ``k2family`` (alias ``gn``), ``xn`` and ``yn``. The
    parameter may be passed positionally or inline: ``path9``,
    ``xn(4)``, ``hypercube:3``.
    """
    key = name.strip().lower()
    if key in _FIXED and not params:
        return _FIXED[key]()
    match = _NAME_RE.match(key)
    if match is None:
        raise UnknownName(name)
    base, inline = match.groups()
    if base not in _PARAMETRISED:
        raise UnknownName(name)
    if inline is not None:
        params = (int(inline),) + params
    if len(params) != 1:
        raise BadParam(f"{base} takes exactly one integer parameter")
    return _PARAMETRISED[base](params[0])


def known_names() -> list[str]:
    return sorted(_FIXED) + sorted(f"{k}<n>" for k in _PARAMETRISED)


def graph_from_edges(n: int, edges: Iterable[Sequence], label: str | None = None) -> WeightedGraph:
    return WeightedGraph(n, tuple(tuple(e) for e in edges), label)
