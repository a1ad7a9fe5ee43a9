"""Seeded experiment campaigns: host, blow-up, adversary, solve, re-verify.

Every random draw in a campaign comes from ``stage_seed(master, trial,
stage)``, so one trial can be re-run in isolation. Trials that end in a stage
failure are dumped (host, colouring, configuration, report) and can be
replayed to the same report byte for byte.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path

import numpy as np

from .adversary import Adversary, color_with
from .graph import Graph, complete_blowup, graph_power, verify_witness
from .host import (
    PaperConstants,
    WorkBoundExceeded,
    certify_expansion_exact,
    certify_expansion_sampled,
    sample_host,
)
from .io import read_coloring, read_graph, write_coloring, write_graph
from .lift import SolveConfig, SolveReport, format_report, solve

__all__ = [
    "ExperimentSpec",
    "SpecError",
    "TrialResult",
    "CampaignResult",
    "stage_seed",
    "run_trial",
    "run_experiment",
    "replay_failure",
    "EdgeBudget",
    "edge_budget_report",
    "format_edge_budget",
]

log = logging.getLogger(__name__)

STAGES = {"host": 0, "certify": 1, "color": 2, "solve": 3}


class SpecError(ValueError):
    pass


def stage_seed(master: int, trial: int, stage: str, attempt: int = 0) -> int:
    """Seed for one stage of one trial, derived from the master seed alone."""
    seq = np.random.SeedSequence(entropy=master, spawn_key=(trial, STAGES[stage], attempt))
    return int(seq.generate_state(1, dtype=np.uint32)[0])


@dataclass
class ExperimentSpec:
    k: int = 2
    n: int = 5
    cluster_size: int = 6
    s: int = 2
    t: int = 3
    a: str = "14"
    c: str = "1/2"
    b: int | None = None
    epsilon: str | None = None
    host_file: str | None = None
    adversaries: list[str] = field(default_factory=lambda: ["uniform", "all-red", "all-blue", "parity", "anticlique"])
    trials: int = 40
    master_seed: int = 0
    lifter: str = "greedy"
    sigma: int | None = None
    exact_expansion: bool = False
    expansion_trials: int = 200
    require_expansion: bool = False
    host_attempts: int = 5
    max_blown_edges: int = 5_000_000
    max_host_pairs: int = 20_000_000

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.trials < 0:
            raise SpecError("trials must be non-negative")
        if self.host_attempts < 1:
            raise SpecError("host_attempts must be at least 1")
        if not self.adversaries:
            raise SpecError("at least one adversary is needed")
        try:
            for name in self.adversaries:
                Adversary.parse(name)
            self.solve_config(0)
            Fraction(self.a), Fraction(self.c)
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
        if self.host_file is None:
            an = Fraction(self.a) * self.n
            if an.denominator != 1:
                raise SpecError(f"a*n = {an} must be an integer")
            pairs = (2 * an) * (2 * an - 1) / 2
            if pairs > self.max_host_pairs:
                raise SpecError(f"sampling {pairs} vertex pairs exceeds the memory guard {self.max_host_pairs}")

    def solve_config(self, seed: int) -> SolveConfig:
        return SolveConfig(
            k=self.k,
            n=self.n,
            s=self.s,
            t=self.t,
            cluster_size=self.cluster_size,
            epsilon=None if self.epsilon is None else Fraction(self.epsilon),
            lifter=self.lifter,
            seed=seed,
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise SpecError(f"unknown spec keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentSpec":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


@dataclass
class TrialResult:
    index: int
    adversary: str
    host_order: int
    host_max_degree: int
    host_attempts: int
    expansion: str
    blown_edges: int
    report: SolveReport
    report_text: str
    verified: bool | None
    dump: Path | None = None

    def line(self) -> str:
        head = (
            f"trial {self.index} adversary={self.adversary} host_order={self.host_order} "
            f"host_max_degree={self.host_max_degree} host_attempts={self.host_attempts} "
            f"expansion={self.expansion} blown_edges={self.blown_edges}"
        )
        w = self.report.witness
        if w is not None:
            verdict = "yes" if self.verified else "NO"
            return f"{head} outcome=witness color={w.color.value} length={len(w)} verified={verdict}"
        stage = self.report.stages[-1]
        reason = stage.info.get("reason", "")
        return f"{head} outcome=failure stage={stage.stage} reason={reason}"


@dataclass
class CampaignResult:
    spec: ExperimentSpec
    trials: list[TrialResult]

    @property
    def verify_failures(self) -> int:
        return sum(1 for tr in self.trials if tr.verified is False)

    @property
    def exit_code(self) -> int:
        return 1 if self.verify_failures else 0

    def summary(self) -> dict[str, int]:
        colors = Counter(tr.report.witness.color.value for tr in self.trials if tr.report.witness is not None)
        return {
            "trials": len(self.trials),
            "witnesses": sum(colors.values()),
            "blue": colors.get("B", 0),
            "red": colors.get("R", 0),
            "failures": sum(1 for tr in self.trials if tr.report.witness is None),
            "verify_failures": self.verify_failures,
        }

    def text(self) -> str:
        lines = ["campaign", f"spec {self.spec.to_json()}"]
        lines.extend(tr.line() for tr in self.trials)
        lines.append("summary " + " ".join(f"{k}={v}" for k, v in self.summary().items()))
        by_stage = Counter(tr.report.failed_stage for tr in self.trials if tr.report.witness is None)
        lines.append("failures_by_stage " + " ".join(f"{k}={v}" for k, v in sorted(by_stage.items())))
        by_adv: dict[str, Counter] = {}
        for tr in self.trials:
            key = tr.report.witness.color.value if tr.report.witness is not None else "fail"
            by_adv.setdefault(tr.adversary, Counter())[key] += 1
        for adv, counts in by_adv.items():
            lines.append(f"adversary {adv} " + " ".join(f"{k}={counts[k]}" for k in ("B", "R", "fail")))
        return "\n".join(lines).rstrip() + "\n"


def _build_host(spec: ExperimentSpec, trial: int) -> tuple[Graph, int, str]:
    """Draw (or load) a host that passes the degree and expansion checks the campaign settings ask for."""
    last: tuple[Graph, int, str] | None = None
    for attempt in range(spec.host_attempts):
        if spec.host_file is not None:
            h = read_graph(spec.host_file)
        else:
            h = sample_host(spec.a, spec.n, spec.c, seed=stage_seed(spec.master_seed, trial, "host", attempt)).graph
        verdict = _certify(spec, h, trial, attempt)
        last = (h, attempt + 1, verdict)
        degree_ok = spec.b is None or h.max_degree() <= spec.b
        if degree_ok and not (spec.require_expansion and verdict == "falsified"):
            return last
        if spec.host_file is not None:
            break  # a fixed host gains nothing from a retry
    assert last is not None
    return last


def _certify(spec: ExperimentSpec, h: Graph, trial: int, attempt: int) -> str:
    if spec.sigma is None:
        return "skipped"
    if 2 * spec.sigma > h.order:
        return "not_applicable"
    if spec.exact_expansion:
        try:
            return certify_expansion_exact(h, spec.sigma).verdict
        except WorkBoundExceeded:
            return "work_bound_exceeded"
    seed = stage_seed(spec.master_seed, trial, "certify", attempt)
    return certify_expansion_sampled(h, spec.sigma, spec.expansion_trials, seed).verdict


def _blowup_size(hk: Graph, r: int) -> int:
    return r * r * hk.num_edges + hk.order * r * (r - 1) // 2


def run_trial(spec: ExperimentSpec, trial: int, adversary: Adversary, dump_root: Path | None = None) -> TrialResult:
    h, attempts, expansion = _build_host(spec, trial)
    hk = graph_power(h, spec.k)
    size = _blowup_size(hk, spec.cluster_size)
    if size > spec.max_blown_edges:
        raise SpecError(f"blow-up would have {size} edges, above the memory guard {spec.max_blown_edges}")
    blown, bmap = complete_blowup(hk, spec.cluster_size)
    coloring = color_with(adversary, blown, bmap, stage_seed(spec.master_seed, trial, "color"), spec.t)
    cfg = spec.solve_config(stage_seed(spec.master_seed, trial, "solve"))
    report = solve(h, blown, bmap, coloring, cfg)
    text = format_report(report)
    verified = None
    if report.witness is not None:
        # independent of the check inside solve
        verified = verify_witness(blown, coloring, report.witness)
    dump = None
    if report.witness is None and dump_root is not None:
        dump = dump_root / f"trial_{trial:04d}"
        dump.mkdir(parents=True, exist_ok=True)
        write_graph(h, dump / "host.txt")
        write_coloring(coloring, dump / "coloring.txt")
        (dump / "config.json").write_text(_config_json(cfg), encoding="utf-8", newline="\n")
        (dump / "report.txt").write_text(text, encoding="utf-8", newline="\n")
    return TrialResult(
        trial,
        adversary.label,
        h.order,
        h.max_degree(),
        attempts,
        expansion,
        blown.num_edges,
        report,
        text,
        verified,
        dump,
    )


def run_experiment(spec: ExperimentSpec, out_dir: str | Path | None = None) -> CampaignResult:
    """Run ``spec.trials`` trials per adversary; trial indices run adversary by adversary."""
    spec.validate()
    dump_root = Path(out_dir) / "failures" if out_dir is not None else None
    results = []
    index = 0
    for name in spec.adversaries:
        adversary = Adversary.parse(name)
        for _ in range(spec.trials):
            results.append(run_trial(spec, index, adversary, dump_root))
            log.info(results[-1].line())
            index += 1
    campaign = CampaignResult(spec, results)
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        (Path(out_dir) / "campaign.txt").write_text(campaign.text(), encoding="utf-8", newline="\n")
    return campaign


def _config_json(cfg: SolveConfig) -> str:
    data = {f.name: getattr(cfg, f.name) for f in fields(cfg)}
    for key in ("epsilon", "a"):
        if data[key] is not None:
            data[key] = str(data[key])
    return json.dumps(data, sort_keys=True) + "\n"


def _config_from_json(text: str) -> SolveConfig:
    data = json.loads(text)
    for key in ("epsilon", "a"):
        if data.get(key) is not None:
            data[key] = Fraction(data[key])
    return SolveConfig(**data)


def replay_failure(dump: str | Path) -> str:
    """Re-run a dumped trial and return its report text."""
    dump = Path(dump)
    h = read_graph(dump / "host.txt")
    cfg = _config_from_json((dump / "config.json").read_text(encoding="utf-8"))
    blown, bmap = complete_blowup(graph_power(h, cfg.k), cfg.cluster_size)
    coloring = read_coloring(dump / "coloring.txt", blown)
    return format_report(solve(h, blown, bmap, coloring, cfg))


# -- edge budget ------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeBudget:
    k: int
    n: int
    cluster_size: int
    host_order: int
    max_degree: int
    power_edges: int | None
    power_bound: Fraction
    blowup_edges: int | None
    blowup_bound: Fraction

    @property
    def per_n(self) -> Fraction:
        return self.blowup_bound / self.n


def edge_budget_report(
    k: int,
    n: int,
    cluster_size: int,
    host: Graph | None = None,
    *,
    constants: PaperConstants | None = None,
    order: int | None = None,
    max_degree: int | None = None,
) -> EdgeBudget:
    """Realized edge counts of the blow-up next to the degree-sum bound, which is linear in ``n``.

    ``|E(H^k)| <= order * (D + D^2 + ... + D^k) / 2`` for maximum degree ``D``,
    and the blow-up has ``r^2 |E(H^k)| + order * r(r-1)/2`` edges. Without a
    host, ``order`` and ``max_degree`` default to ``a*n`` and ``b`` from
    ``constants``.
    """
    if host is not None:
        order, max_degree = host.order, host.max_degree()
    elif constants is not None:
        order = order if order is not None else int(constants.a * n)
        max_degree = max_degree if max_degree is not None else int(constants.b)
    if order is None or max_degree is None:
        raise ValueError("need a host, its degree statistics, or the constants")
    r = cluster_size
    power_bound = Fraction(order * sum(max_degree**i for i in range(1, k + 1)), 2)
    inside = order * r * (r - 1) // 2
    power_edges = blowup_edges = None
    if host is not None:
        power_edges = graph_power(host, k).num_edges
        blowup_edges = r * r * power_edges + inside
    return EdgeBudget(k, n, r, order, max_degree, power_edges, power_bound, blowup_edges, r * r * power_bound + inside)


def format_edge_budget(eb: EdgeBudget) -> str:
    lines = [
        "edge-budget",
        f"k {eb.k}",
        f"n {eb.n}",
        f"cluster_size {eb.cluster_size}",
        f"host_order {eb.host_order}",
        f"host_max_degree {eb.max_degree}",
    ]
    if eb.power_edges is not None:
        lines.append(f"power_edges {eb.power_edges}")
    lines.append(f"power_edges_bound {eb.power_bound}")
    if eb.blowup_edges is not None:
        lines.append(f"blowup_edges {eb.blowup_edges}")
    lines.append(f"blowup_edges_bound {eb.blowup_bound}")
    lines.append(f"bound_per_n {eb.per_n}")
    return "\n".join(lines) + "\n"
