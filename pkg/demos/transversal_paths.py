"""
Paths that cycle through classes
================================

The depth-first search looks for a path whose i-th vertex lies in class
i mod (k+1). Vertices it gives up on are marked dead for good.
"""

from sizeramsey import TransversalInstance, find_transversal_path, replay_trace
from sizeramsey.graph import Graph

# a 6-cycle with alternating classes has a path through all six vertices
c6 = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
inst = TransversalInstance(c6, ({0, 2, 4}, {1, 3, 5}), 6)
out = find_transversal_path(inst, trace=True)
print("path:", out.path)
print("decisions:", out.log)

# replaying the log rebuilds every intermediate state
states = replay_trace(inst, out.log)
print("states replayed:", len(states), "final path length", len(states[-1].path))

# two disconnected classes: the search marks every start vertex dead
split = TransversalInstance(Graph(4, [(0, 2), (1, 3)]), ({0, 1}, {2, 3}), 3)
fail = find_transversal_path(split)
print("found:", fail.found, "dead sets:", [sorted(d) for d in fail.state.dead])
