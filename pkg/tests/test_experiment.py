import json
from fractions import Fraction

import pytest

from sizeramsey.experiment import (
    ExperimentSpec,
    SpecError,
    edge_budget_report,
    format_edge_budget,
    replay_failure,
    run_experiment,
    stage_seed,
)
from sizeramsey.graph import complete_blowup, graph_power
from sizeramsey.host import paper_constants
from synthetic import path_graph


def test_stage_seeds_are_distinct_and_stable():
    seeds = {stage_seed(7, trial, stage, attempt) for trial in range(5) for stage in ("host", "certify", "color", "solve") for attempt in range(3)}
    assert len(seeds) == 60
    assert stage_seed(7, 2, "color") == stage_seed(7, 2, "color")
    assert stage_seed(7, 2, "color") != stage_seed(8, 2, "color")


def test_spec_json_round_trip():
    spec = ExperimentSpec(trials=3, adversaries=["uniform", "parity"], sigma=4)
    assert ExperimentSpec.from_json(spec.to_json()) == spec
    assert json.loads(spec.to_json())["sigma"] == 4


@pytest.mark.parametrize(
    "changes",
    [{"trials": -1}, {"adversaries": []}, {"adversaries": ["nope"]}, {"a": "7/3"}, {"lifter": "x"}, {"cluster_size": 2}, {"max_host_pairs": 10}],
)
def test_spec_rejects(changes):
    with pytest.raises(SpecError):
        ExperimentSpec(**changes)


def test_spec_rejects_unknown_keys():
    with pytest.raises(SpecError):
        ExperimentSpec.from_json('{"trails": 3}')


def test_small_campaign_is_sound_and_deterministic(tmp_path):
    spec = ExperimentSpec(trials=3, master_seed=5)
    a = run_experiment(spec, tmp_path / "a")
    b = run_experiment(spec, tmp_path / "b")
    assert (tmp_path / "a" / "campaign.txt").read_bytes() == (tmp_path / "b" / "campaign.txt").read_bytes()
    assert a.verify_failures == 0 and a.exit_code == 0
    summary = a.summary()
    assert summary["trials"] == 15 == summary["witnesses"] + summary["failures"]
    for tr in a.trials:
        if tr.report.witness is None:
            assert tr.dump is not None
            assert replay_failure(tr.dump) == (tr.dump / "report.txt").read_text()
    assert b.summary() == summary


def test_constant_adversaries_give_both_colors():
    result = run_experiment(ExperimentSpec(trials=2, adversaries=["all-blue", "all-red"]))
    colors = {tr.report.witness.color.value for tr in result.trials if tr.report.witness is not None}
    assert colors == {"B", "R"}


def test_memory_guard(tmp_path):
    with pytest.raises(SpecError):
        run_experiment(ExperimentSpec(trials=1, adversaries=["uniform"], max_blown_edges=100))


def test_host_file_and_expansion_certificate(tmp_path):
    from sizeramsey.io import write_graph

    write_graph(path_graph(12), tmp_path / "h.txt")
    spec = ExperimentSpec(trials=1, adversaries=["all-blue"], host_file=str(tmp_path / "h.txt"), sigma=3, exact_expansion=True)
    tr = run_experiment(spec).trials[0]
    assert tr.host_order == 12 and tr.expansion == "falsified" and tr.host_attempts == 1


def test_edge_budget_against_realized_counts():
    h = path_graph(10)
    eb = edge_budget_report(2, 5, 6, h)
    assert eb.power_edges == graph_power(h, 2).num_edges == 17
    assert eb.blowup_edges == complete_blowup(graph_power(h, 2), 6)[0].num_edges
    assert eb.power_bound == Fraction(10 * (2 + 4), 2)
    assert eb.blowup_edges <= eb.blowup_bound
    assert "bound_per_n" in format_edge_budget(eb)


def test_edge_budget_from_constants_is_linear_in_n():
    pc = paper_constants(2)
    per_n = {edge_budget_report(2, n, 6, constants=pc).per_n for n in (10, 20, 40)}
    assert len(per_n) == 1
    with pytest.raises(ValueError):
        edge_budget_report(2, 5, 6)
