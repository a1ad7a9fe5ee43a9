"""
Monochromatic cliques and path covers
=====================================

Every 2-colouring of K_6 has a monochromatic triangle; the pentagon colouring
of K_5 shows that 6 is needed. A coloured complete graph also splits into k
blue paths plus k+1 classes joined only by red edges.
"""

import numpy as np

from sizeramsey import Color, TwoColoring, complete_graph, cover_blue_paths_red_multipartite, find_mono_clique
from sizeramsey.cover import kst_edge_bound_check
from sizeramsey.graph import Graph

rng = np.random.default_rng(3)
k6 = complete_graph(6)
c = TwoColoring.from_function(k6, lambda u, v: Color.BLUE if rng.random() < 0.5 else Color.RED)
print("random K_6 colouring:", find_mono_clique(c, 3))

ring = {tuple(sorted((i, (i + 1) % 5))) for i in range(5)}
pentagon = TwoColoring.from_function(complete_graph(5), lambda u, v: Color.RED if (u, v) in ring else Color.BLUE)
print("pentagon colouring of K_5:", find_mono_clique(pentagon, 3))

# cover a random colouring of K_14 with k=2 blue paths
c14 = TwoColoring.from_function(complete_graph(14), lambda u, v: Color.BLUE if rng.random() < 0.3 else Color.RED)
cover = cover_blue_paths_red_multipartite(c14, 2)
print("blue paths:", cover.paths)
print("red classes:", [sorted(cl) for cl in cover.classes])

# K_{2,2}-free bipartite graphs stay under 4 t^(3/2) edges; a perfect matching trivially does
t = 8
matching = Graph(2 * t, [(i, t + i) for i in range(t)])
print("matching obeys the bound:", kst_edge_bound_check(matching, 2))
