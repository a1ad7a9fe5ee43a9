"""
A seeded campaign
=================

Run a few trials per adversary, then check how the blow-up's edge count
compares with a bound that grows linearly in n.
"""

import tempfile

from sizeramsey import ExperimentSpec, edge_budget_report, replay_failure, run_experiment
from sizeramsey.experiment import format_edge_budget
from sizeramsey.host import paper_constants

spec = ExperimentSpec(trials=4, master_seed=1)
with tempfile.TemporaryDirectory() as out:
    result = run_experiment(spec, out)
    print(result.summary())
    for tr in result.trials[:5]:
        print(tr.line())
    # a failed trial leaves its inputs behind and replays to the same report
    failed = [tr for tr in result.trials if tr.dump is not None]
    if failed:
        print("replay identical:", replay_failure(failed[0].dump) == failed[0].report_text)

# with the full constants the bound per unit of n does not depend on n
pc = paper_constants(2)
for n in (10, 100, 1000):
    print("n", n, "blow-up edges per n <=", edge_budget_report(2, n, 6, constants=pc).per_n)

print(format_edge_budget(edge_budget_report(2, 5, 6, constants=pc)))
