"""Core graph objects: simple graphs, red/blue edge colourings, blow-ups and witnesses."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Color",
    "Graph",
    "TwoColoring",
    "BlowupMap",
    "Witness",
    "edge_key",
    "graph_power",
    "complete_blowup",
    "complete_graph",
    "verify_witness",
]


class Color(str, Enum):
    RED = "R"
    BLUE = "B"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @classmethod
    def parse(cls, text: str) -> "Color":
        key = text.strip().upper()
        if key in ("R", "RED"):
            return cls.RED
        if key in ("B", "BLUE"):
            return cls.BLUE
        raise ValueError(f"unknown colour {text!r}")


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on the vertices ``0 .. order-1``.

    Instances are immutable. Neighbourhoods are frozensets; integer bitmasks
    of the neighbourhoods are built on first use for the search kernels.
    """

    __slots__ = ("_order", "_adj", "_masks", "_num_edges")

    def __init__(self, order: int, edges: Iterable[tuple[int, int]] = ()):
        if order < 0:
            raise ValueError("order must be non-negative")
        adj: list[set[int]] = [set() for _ in range(order)]
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) references a vertex outside [0, {order})")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._order = order
        self._adj = tuple(frozenset(a) for a in adj)
        self._masks: tuple[int, ...] | None = None
        self._num_edges = sum(len(a) for a in self._adj) // 2

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        return cls(len(adjacency), ((u, v) for u, nb in enumerate(adjacency) for v in nb if u < v))

    @property
    def order(self) -> int:
        return self._order

    @property
    def num_edges(self) -> int:
        return self._num_edges

    def vertices(self) -> range:
        return range(self._order)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._order and v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u in range(self._order):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    @property
    def masks(self) -> tuple[int, ...]:
        if self._masks is None:
            self._masks = tuple(sum(1 << w for w in a) for a in self._adj)
        return self._masks

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph induced by ``vertices``, relabelled to ``0..m-1`` in increasing id order.

        Returns the subgraph and the tuple of original ids (new id -> old id).
        """
        kept = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(kept)}
        edges = [(index[u], index[w]) for u in kept for w in self._adj[u] if w in index and u < w]
        return Graph(len(kept), edges), kept

    def is_complete(self) -> bool:
        return self._num_edges == self._order * (self._order - 1) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._order, self._adj))

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, edges={self._num_edges})"


def complete_graph(order: int) -> Graph:
    return Graph(order, ((u, v) for u in range(order) for v in range(u + 1, order)))


class TwoColoring:
    """A total red/blue colouring of the edge set of ``host``."""

    __slots__ = ("host", "_colors")

    def __init__(self, host: Graph, colors: Mapping[tuple[int, int], Color]):
        table: dict[tuple[int, int], Color] = {}
        for (u, v), c in colors.items():
            key = edge_key(u, v)
            if not host.has_edge(*key):
                raise ValueError(f"colour given for non-edge {key}")
            table[key] = Color(c)
        if len(table) != host.num_edges:
            missing = next(e for e in host.edges() if e not in table)
            raise ValueError(f"colouring is not total: edge {missing} has no colour")
        self.host = host
        self._colors = table

    @classmethod
    def from_function(cls, host: Graph, fn: Callable[[int, int], Color]) -> "TwoColoring":
        return cls(host, {e: fn(*e) for e in host.edges()})

    @classmethod
    def constant(cls, host: Graph, color: Color) -> "TwoColoring":
        return cls(host, {e: color for e in host.edges()})

    def color(self, u: int, v: int) -> Color:
        return self._colors[edge_key(u, v)]

    def get(self, u: int, v: int) -> Color | None:
        """Colour of ``{u, v}``, or ``None`` for a non-edge."""
        return self._colors.get(edge_key(u, v))

    def items(self) -> Iterator[tuple[tuple[int, int], Color]]:
        for e in self.host.edges():
            yield e, self._colors[e]

    def count(self, color: Color) -> int:
        return sum(1 for c in self._colors.values() if c is color)

    def swapped(self) -> "TwoColoring":
        return TwoColoring(self.host, {e: c.other for e, c in self._colors.items()})

    def recolored(self, changes: Mapping[tuple[int, int], Color]) -> "TwoColoring":
        table = dict(self._colors)
        for (u, v), c in changes.items():
            table[edge_key(u, v)] = c
        return TwoColoring(self.host, table)

    def color_graph(self, color: Color) -> Graph:
        return Graph(self.host.order, (e for e, c in self._colors.items() if c is color))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoColoring):
            return NotImplemented
        return self.host == other.host and self._colors == other._colors

    def __repr__(self) -> str:
        return f"TwoColoring(edges={len(self._colors)}, blue={self.count(Color.BLUE)})"


@dataclass(frozen=True)
class BlowupMap:
    """Cluster structure of a complete blow-up.

    Blown-up vertex ``v * cluster_size + offset`` belongs to the cluster of base vertex ``v``.
    """

    base_order: int
    cluster_size: int

    @property
    def order(self) -> int:
        return self.base_order * self.cluster_size

    def cluster_of(self, x: int) -> int:
        return x // self.cluster_size

    def members_of(self, v: int) -> tuple[int, ...]:
        start = v * self.cluster_size
        return tuple(range(start, start + self.cluster_size))


@dataclass(frozen=True)
class Witness:
    """Ordered vertices claimed to span a monochromatic k-th power of a path."""

    color: Color
    vertices: tuple[int, ...]
    power: int

    def __len__(self) -> int:
        return len(self.vertices)


def _bfs_ball(g: Graph, source: int, radius: int) -> set[int]:
    seen = {source}
    frontier = deque([(source, 0)])
    while frontier:
        v, d = frontier.popleft()
        if d == radius:
            continue
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                frontier.append((w, d + 1))
    seen.discard(source)
    return seen


def graph_power(g: Graph, k: int) -> Graph:
    """k-th power of ``g``: join every pair at distance between 1 and k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return g
    return Graph.from_adjacency([_bfs_ball(g, v, k) for v in g.vertices()])


def complete_blowup(g: Graph, cluster_size: int) -> tuple[Graph, BlowupMap]:
    """Replace every vertex by a clique of ``cluster_size`` vertices and every edge by a complete bipartite graph."""
    if cluster_size < 1:
        raise ValueError("cluster_size must be at least 1")
    bmap = BlowupMap(g.order, cluster_size)
    r = cluster_size
    edges: list[tuple[int, int]] = []
    for v in g.vertices():
        members = bmap.members_of(v)
        edges.extend((members[i], members[j]) for i in range(r) for j in range(i + 1, r))
    for u, v in g.edges():
        edges.extend((x, y) for x in bmap.members_of(u) for y in bmap.members_of(v))
    blown = Graph(bmap.order, edges)
    expected = r * r * g.num_edges + g.order * r * (r - 1) // 2
    assert blown.num_edges == expected, "blow-up edge count mismatch"
    return blown, bmap


def verify_witness(g: Graph, coloring: TwoColoring, w: Witness) -> bool:
    """Check that ``w`` is a monochromatic copy of the k-th power of a path in ``g``.

    Every pair of positions at distance at most ``w.power`` must be an edge of
    ``g`` carrying ``w.color``. Malformed witnesses yield ``False``.
    """
    try:
        k = int(w.power)
        color = Color(w.color)
        seq = [int(x) for x in w.vertices]
    except (TypeError, ValueError):
        return False
    if k < 1 or not seq or len(set(seq)) != len(seq):
        return False
    if any(not 0 <= x < g.order for x in seq):
        return False
    if coloring.host is not g and coloring.host != g:
        return False
    for i, x in enumerate(seq):
        for y in seq[i + 1 : i + 1 + k]:
            if not g.has_edge(x, y) or coloring.get(x, y) is not color:
                return False
    return True
