"""Brute-force reference implementations used as test oracles.

None of these share code with the library beyond the plain data types.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, product

import numpy as np

from sizeramsey.graph import Color, Graph, TwoColoring


def adjacency_matrix(g: Graph) -> np.ndarray:
    A = np.zeros((g.order, g.order), dtype=np.int64)
    for u, v in g.edges():
        A[u, v] = A[v, u] = 1
    return A


def power_edges(g: Graph, k: int) -> set[tuple[int, int]]:
    """Pairs at distance 1..k, via boolean matrix powers of (I + A)."""
    n = g.order
    if n == 0:
        return set()
    step = (np.eye(n, dtype=np.int64) + adjacency_matrix(g)) > 0
    reach = np.eye(n, dtype=bool)
    for _ in range(k):
        reach = (reach.astype(np.int64) @ step.astype(np.int64)) > 0
    return {(u, v) for u in range(n) for v in range(u + 1, n) if reach[u, v]}


def bfs_power_edges(g: Graph, k: int) -> set[tuple[int, int]]:
    """Pairs at BFS distance 1..k, from a plain breadth-first search per source."""
    out = set()
    for src in range(g.order):
        dist = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        out.update((src, v) for v, d in dist.items() if v > src and 1 <= d <= k)
    return out


def blowup_edges(g: Graph, r: int) -> set[tuple[int, int]]:
    out = set()
    for x in range(g.order * r):
        for y in range(x + 1, g.order * r):
            bx, by = x // r, y // r
            if bx == by or g.has_edge(bx, by):
                out.add((x, y))
    return out


def witness_ok(g: Graph, c: TwoColoring, color: Color, seq, k: int) -> bool:
    if len(set(seq)) != len(seq) or not seq:
        return False
    for i in range(len(seq)):
        for j in range(len(seq)):
            if 1 <= abs(i - j) <= k:
                x, y = seq[i], seq[j]
                if not (0 <= x < g.order and 0 <= y < g.order) or not g.has_edge(x, y):
                    return False
                if c.color(x, y) is not color:
                    return False
    return True


def mono_cliques(c: TwoColoring, vertices, t: int) -> list[tuple[tuple[int, ...], Color]]:
    found = []
    for combo in combinations(sorted(vertices), t):
        cols = {c.get(x, y) for x, y in combinations(combo, 2)}
        if t <= 1:
            found.extend((combo, col) for col in Color)
        elif len(cols) == 1 and None not in cols:
            found.append((combo, cols.pop()))
    return found


def has_biclique(left, right, adjacent, s: int) -> bool:
    for L in combinations(sorted(left), s):
        for R in combinations(sorted(right), s):
            if all(adjacent(x, y) for x in L for y in R):
                return True
    return False


def transversal_exists(g: Graph, classes, n: int) -> bool:
    m = len(classes)

    def grow(path):
        if len(path) == n:
            return True
        want = classes[len(path) % m]
        return any(grow(path + [u]) for u in g.neighbors(path[-1]) if u in want and u not in path)

    return any(grow([x]) for x in classes[0])


def expansion_holds(g: Graph, sigma: int) -> bool:
    """Every two disjoint sets of size at least sigma span an edge, checked over all sizes."""
    V = range(g.order)
    for size_s in range(sigma, g.order - sigma + 1):
        for S in combinations(V, size_s):
            rest = [v for v in V if v not in S]
            for size_t in range(sigma, len(rest) + 1):
                for T in combinations(rest, size_t):
                    if not any(g.has_edge(x, y) for x in S for y in T):
                        return False
    return True


def representative_system_exists(cands, c: TwoColoring, k: int) -> bool:
    """Some choice y_i in cands[i] with every pair within distance k red."""
    n = len(cands)

    def ok(choice):
        return all(
            c.get(choice[i], choice[j]) is Color.RED for i in range(n) for j in range(i + 1, min(n, i + k + 1))
        )

    return any(ok(ch) for ch in product(*cands))
