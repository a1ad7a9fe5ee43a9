"""
From a coloured blow-up to a monochromatic path power
=====================================================

solve runs the whole pipeline: pick a monochromatic triangle in each cluster,
colour the host power by the presence of blue K_{2,2} between clusters, split
that colouring into blue paths and red classes, and lift the result back.
"""

from sizeramsey import (
    Adversary,
    SolveConfig,
    color_with,
    complete_blowup,
    graph_power,
    sample_host,
    solve,
    verify_witness,
)
from sizeramsey.lift import format_report

h = sample_host(a=14, n=5, c="1/2", seed=2).graph
blown, bmap = complete_blowup(graph_power(h, 2), 6)
print("blow-up:", blown.order, "vertices,", blown.num_edges, "edges")

for name in ("all-blue", "all-red", "uniform", "parity"):
    coloring = color_with(Adversary.parse(name), blown, bmap, seed=2)
    report = solve(h, blown, bmap, coloring, SolveConfig(k=2, n=5, cluster_size=6, s=2, t=3))
    w = report.witness
    if w is None:
        print(f"{name:9s} no witness, stopped at {report.failed_stage}")
    else:
        print(f"{name:9s} {w.color.value} path power of length {len(w)}, valid={verify_witness(blown, coloring, w)}")

# the full text report for the last run
print(format_report(report))
