"""Generators for lifting instances with a controlled cross-cluster pattern."""

from __future__ import annotations

import random
from itertools import combinations

from oracles import has_biclique
from sizeramsey.cover import MonoClique
from sizeramsey.graph import Color, Graph, TwoColoring, complete_blowup, graph_power


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def kss_free_red_instance(n: int, k: int, t: int, s: int, density: float, seed: int):
    """Blow-up of P_n^k with clusters of size t, blue inside clusters.

    Between clusters at distance at most k, blue edges are added in random
    order and kept only if no blue K_{s,s} appears, so the red lifting
    precondition holds by construction. Returns (blown, coloring, cliques, path).
    """
    rng = random.Random(seed)
    blown, bmap = complete_blowup(graph_power(path_graph(n), k), t)
    blue = {e for v in range(n) for e in combinations(bmap.members_of(v), 2)}
    for i in range(n):
        for j in range(i + 1, min(n, i + k + 1)):
            A, B = bmap.members_of(i), bmap.members_of(j)
            pairs = [(x, y) for x in A for y in B]
            rng.shuffle(pairs)
            for x, y in pairs:
                if rng.random() >= density:
                    continue
                blue.add((x, y))
                if has_biclique(A, B, lambda a, b: (a, b) in blue, s):
                    blue.discard((x, y))
    coloring = TwoColoring.from_function(blown, lambda u, v: Color.BLUE if (u, v) in blue else Color.RED)
    cliques = {v: MonoClique(bmap.members_of(v), Color.BLUE) for v in range(n)}
    return blown, coloring, cliques, list(range(n))
