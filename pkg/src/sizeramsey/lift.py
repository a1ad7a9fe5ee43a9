"""End-to-end search for a monochromatic power of a path in a coloured blow-up.

Pipeline: a monochromatic clique in every cluster, keep the majority colour
(swapping colour roles if red wins), colour the power of the majority-side
host by whether the cluster cliques span a blue ``K_{s,s}``, split into a
blue path or a red power path, and lift the result back into the blow-up.
Everything after the role swap works with "blue" meaning the majority colour.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Literal, Mapping, Sequence

import numpy as np

from .cover import (
    MonoClique,
    PartitionCover,
    RamseyTable,
    SearchExhausted,
    auxiliary_coloring,
    complete_with_red,
    cover_blue_paths_red_multipartite,
    has_blue_kss,
    mono_clique_in,
)
from .dfs import TransversalInstance, find_transversal_path
from .graph import BlowupMap, Color, Graph, TwoColoring, Witness, graph_power, verify_witness

__all__ = [
    "SolveConfig",
    "SolveReport",
    "StageLog",
    "MajoritySide",
    "RamseyStepFailed",
    "select_majority_side",
    "Dichotomy",
    "claim_dichotomy",
    "LiftError",
    "MissingKssWitness",
    "PreconditionViolated",
    "LiftOutcome",
    "lift_blue",
    "lift_red_greedy",
    "lift_red_resample",
    "solve",
    "format_report",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveConfig:
    k: int = 2
    n: int = 5
    s: int = 2
    t: int = 3
    cluster_size: int = 6
    epsilon: Fraction | None = None
    a: Fraction | None = None
    lifter: Literal["greedy", "resample"] = "greedy"
    seed: int = 0
    max_rounds: int = 1_000_000
    greedy_budget: int = 200_000

    def __post_init__(self):
        if self.k < 1 or self.n < 1 or self.s < 1 or self.t < 1:
            raise ValueError("k, n, s and t must be positive")
        if self.cluster_size < self.t:
            raise ValueError("cluster_size must be at least t")
        if self.lifter not in ("greedy", "resample"):
            raise ValueError(f"unknown lifter {self.lifter!r}")

    @property
    def eps(self) -> Fraction:
        return Fraction(1, 3 * (self.k + 1)) if self.epsilon is None else Fraction(self.epsilon)

    @property
    def warnings(self) -> list[str]:
        out = []
        table = RamseyTable()
        if self.t in table and self.cluster_size < table[self.t]:
            out.append(f"cluster_size {self.cluster_size} < r(K_{self.t}) = {table[self.t]}: the Ramsey step may fail")
        if self.s < 2 * self.k:
            out.append(f"s = {self.s} < 2k = {2 * self.k}: blue lifting uses overlapping blocks and may fail")
        return out


# -- Ramsey step --------------------------------------------------------------


class RamseyStepFailed(RuntimeError):
    def __init__(self, cluster: int):
        super().__init__(f"cluster {cluster} has no monochromatic clique of the requested size")
        self.cluster = cluster


@dataclass(frozen=True)
class MajoritySide:
    W: tuple[int, ...]
    cliques: dict[int, MonoClique]
    swapped: bool
    internal: TwoColoring
    blue_clusters: int
    red_clusters: int

    def original(self, color: Color) -> Color:
        return color.other if self.swapped else color


def select_majority_side(bmap: BlowupMap, coloring: TwoColoring, t: int) -> MajoritySide:
    """Pick a monochromatic ``K_t`` per cluster and keep the clusters of the majority colour.

    If red cliques are the majority, the colours are exchanged globally and
    ``swapped`` is set; ``internal`` is the colouring the rest of the
    pipeline should use, in which the kept cliques are blue. On an exact tie
    the side of cluster 0 is kept, so exchanging the input colours selects
    the same clusters.
    """
    found: dict[int, MonoClique] = {}
    for v in range(bmap.base_order):
        clique = mono_clique_in(bmap.members_of(v), coloring.get, t)
        if clique is None:
            raise RamseyStepFailed(v)
        found[v] = clique
    blue = [v for v, c in found.items() if c.color is Color.BLUE]
    red = [v for v, c in found.items() if c.color is Color.RED]
    base = bmap.base_order
    if 2 * len(blue) > base:
        swapped = False
    elif 2 * len(red) > base:
        swapped = True
    else:
        swapped = base > 0 and found[0].color is Color.RED
    W = tuple(red if swapped else blue)
    internal = coloring.swapped() if swapped else coloring
    cliques = {v: MonoClique(found[v].vertices, Color.BLUE) for v in W}
    return MajoritySide(W, cliques, swapped, internal, len(blue), len(red))


# -- dichotomy ----------------------------------------------------------------


@dataclass
class Dichotomy:
    kind: Literal["blue_path", "red_power_path", "infeasible"]
    path: tuple[int, ...] = ()
    cover: PartitionCover | None = None
    threshold: Fraction = Fraction(0)
    reasons: tuple[str, ...] = ()


def claim_dichotomy(
    f: Graph,
    k: int,
    n: int,
    chi_prime: TwoColoring,
    epsilon: Fraction,
    a: Fraction,
) -> Dichotomy:
    """Blue ``P_n`` or red ``P_n^k`` in the k-th power of ``f`` under ``chi_prime``.

    The colouring is completed to a complete graph with non-edges red and
    covered by blue paths plus red-joined classes. A cover path with at least
    ``n`` vertices is returned as a blue path; otherwise a class-cycling path
    is searched for in ``f`` itself, which is a red power path in ``f^k``.
    The threshold ``epsilon * a * n`` is recorded; a class below it is noted
    in the reasons of an infeasible outcome but does not stop the search.
    """
    if chi_prime.host.order != f.order:
        raise ValueError("chi_prime must colour the k-th power of f")
    threshold = Fraction(epsilon) * Fraction(a) * n
    if f.order == 0:
        return Dichotomy("infeasible", threshold=threshold, reasons=("empty_host",))
    try:
        cover = cover_blue_paths_red_multipartite(complete_with_red(chi_prime), k)
    except SearchExhausted as exc:
        return Dichotomy("infeasible", threshold=threshold, reasons=(f"cover_search_exhausted: {exc}",))
    longest = cover.longest_path()
    if len(longest) >= n:
        return Dichotomy("blue_path", tuple(longest[:n]), cover, threshold)
    reasons = []
    if min(cover.class_sizes) < threshold:
        reasons.append("class_below_threshold")
    if any(not A for A in cover.classes):
        return Dichotomy("infeasible", cover=cover, threshold=threshold, reasons=tuple(reasons + ["empty_class"]))
    outcome = find_transversal_path(TransversalInstance(f, cover.classes, n))
    if outcome.found:
        return Dichotomy("red_power_path", outcome.path, cover, threshold, tuple(reasons))
    return Dichotomy("infeasible", cover=cover, threshold=threshold, reasons=tuple(reasons + ["transversal_failure"]))


# -- lifting ------------------------------------------------------------------


class LiftError(RuntimeError):
    pass


class MissingKssWitness(LiftError):
    def __init__(self, index: int):
        super().__init__(f"no blue K_(s,s) between the cliques of path positions {index} and {index + 1}")
        self.index = index


class PreconditionViolated(LiftError):
    def __init__(self, i: int, j: int):
        super().__init__(f"cliques at path positions {i} and {j} span a blue K_(s,s)")
        self.pair = (i, j)


def _middle_block(Y: Sequence[int], X: Sequence[int], k: int) -> list[int] | None:
    """Order part of one clique so its first k lie in ``Y`` and its last k in ``X``.

    With ``|X|, |Y| >= 2k`` the two halves are disjoint: the first k of ``Y``,
    then the first k of ``X`` outside them. Smaller sets force the halves to
    share ``o`` vertices of ``X & Y``; the smallest feasible ``o`` is used.
    """
    Ys, Xs = sorted(Y), sorted(X)
    head = Ys[:k]
    tail = [x for x in Xs if x not in head][:k]
    if len(head) == k and len(tail) == k:
        return head + tail
    common = sorted(set(X) & set(Y))
    y_only = [y for y in Ys if y not in X]
    x_only = [x for x in Xs if x not in Y]
    for o in range(1, min(k, len(common)) + 1):
        shared = common[:o]
        spare = common[o:]
        first = (y_only + spare)[: k - o]
        last = (x_only + [c for c in spare if c not in first])[: k - o]
        if len(first) == k - o and len(last) == k - o:
            return sorted(first) + shared + sorted(last)
    return None


def lift_blue(
    blue_path: Sequence[int],
    coloring: TwoColoring,
    cliques: Mapping[int, MonoClique],
    s: int,
    k: int,
) -> Witness:
    """Lift a blue path ``x_1..x_n`` of the auxiliary colouring to a blue k-th power path.

    For each path edge a blue ``K_{s,s}`` with sides ``X_i`` (in the clique of
    ``x_i``) and ``Y_{i+1}`` (in the clique of ``x_{i+1}``) is recovered. Each
    clique contributes a block whose first k vertices lie in ``Y_i`` and whose
    last k lie in ``X_i``; the end cliques use up to 2k vertices of ``X_1``
    and ``Y_n``. For ``s >= 2k`` the witness has exactly ``2kn`` vertices.
    """
    n = len(blue_path)
    if n == 0:
        raise LiftError("empty path")
    if s < k:
        raise LiftError(f"s = {s} < k = {k}: a block cannot start inside Y and end inside X")
    B = [cliques[x].vertices for x in blue_path]
    if n == 1:
        return Witness(Color.BLUE, tuple(sorted(B[0])[: 2 * k]), k)
    X: list[tuple[int, ...]] = [()] * n
    Y: list[tuple[int, ...]] = [()] * n
    for i in range(n - 1):
        kss = has_blue_kss(coloring, B[i], B[i + 1], s)
        if kss is None:
            raise MissingKssWitness(i)
        X[i], Y[i + 1] = kss.left, kss.right
    seq = sorted(X[0])[: 2 * k]
    for i in range(1, n - 1):
        block = _middle_block(Y[i], X[i], k)
        if block is None:
            raise LiftError(f"clique at path position {i} cannot host a block (s = {s}, k = {k})")
        seq.extend(block)
    seq.extend(sorted(Y[n - 1])[: 2 * k])
    return Witness(Color.BLUE, tuple(seq), k)


@dataclass
class LiftOutcome:
    witness: Witness | None
    status: Literal["ok", "failure", "budget_exhausted"]
    steps: int = 0
    trace: list[tuple[int, int, int]] = field(default_factory=list)
    max_blue_density: float = 0.0
    kst_bound: float = 0.0


def _window_pairs(n: int, k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, min(n, i + k + 1))]


def _check_red_precondition(path_cliques: Sequence[Sequence[int]], coloring: TwoColoring, s: int, k: int) -> None:
    for i, j in _window_pairs(len(path_cliques), k):
        if has_blue_kss(coloring, path_cliques[i], path_cliques[j], s) is not None:
            raise PreconditionViolated(i, j)


def _blue_density(coloring: TwoColoring, A: Sequence[int], B: Sequence[int]) -> float:
    blue = sum(1 for x in A for y in B if coloring.get(x, y) is Color.BLUE)
    return blue / (len(A) * len(B))


def lift_red_greedy(
    red_power_path: Sequence[int],
    coloring: TwoColoring,
    cliques: Mapping[int, MonoClique],
    s: int,
    k: int,
    budget: int = 200_000,
    check_precondition: bool = True,
) -> LiftOutcome:
    """Pick ``y_i`` in the clique of ``x_i`` left to right, smallest id red to the previous k picks.

    Dead ends backtrack chronologically; ``budget`` caps the number of candidates tried.
    """
    cand = [sorted(cliques[x].vertices) for x in red_power_path]
    if check_precondition:
        _check_red_precondition(cand, coloring, s, k)
    n = len(cand)
    chosen: list[int] = []
    ptr = [0] * n
    steps = 0
    i = 0
    while 0 <= i < n:
        placed = False
        while ptr[i] < len(cand[i]):
            v = cand[i][ptr[i]]
            ptr[i] += 1
            steps += 1
            if all(coloring.get(chosen[j], v) is Color.RED for j in range(max(0, i - k), i)):
                chosen.append(v)
                placed = True
                break
            if steps >= budget:
                return LiftOutcome(None, "budget_exhausted", steps)
        if placed:
            i += 1
            if i < n:
                ptr[i] = 0
        else:
            ptr[i] = 0
            i -= 1
            if chosen:
                chosen.pop()
    if i < 0:
        return LiftOutcome(None, "failure", steps)
    return LiftOutcome(Witness(Color.RED, tuple(chosen), k), "ok", steps)


def lift_red_resample(
    red_power_path: Sequence[int],
    coloring: TwoColoring,
    cliques: Mapping[int, MonoClique],
    s: int,
    k: int,
    seed: int | None = 0,
    max_rounds: int = 1_000_000,
    check_precondition: bool = True,
) -> LiftOutcome:
    """Random representatives, repaired by resampling the lowest-indexed violated pair.

    A pair ``(i, j)`` with ``j - i <= k`` is violated when ``{y_i, y_j}`` is
    blue. The trace records ``(pair index, y_i, y_j)`` for every violation
    that was resampled.
    """
    cand = [sorted(cliques[x].vertices) for x in red_power_path]
    if check_precondition:
        _check_red_precondition(cand, coloring, s, k)
    n = len(cand)
    pairs = _window_pairs(n, k)
    touching: list[list[int]] = [[] for _ in range(n)]
    for e, (i, j) in enumerate(pairs):
        touching[i].append(e)
        touching[j].append(e)
    densities = [_blue_density(coloring, cand[i], cand[j]) for i, j in pairs]
    t = min((len(c) for c in cand), default=1)
    bound = 4 * t ** (-1 / s)

    rng = np.random.default_rng(seed)
    y = [c[int(rng.integers(len(c)))] for c in cand]

    def bad(e: int) -> bool:
        i, j = pairs[e]
        return coloring.get(y[i], y[j]) is not Color.RED

    violated = {e for e in range(len(pairs)) if bad(e)}
    trace: list[tuple[int, int, int]] = []
    rounds = 0
    while violated:
        if rounds >= max_rounds:
            return LiftOutcome(None, "budget_exhausted", rounds, trace, max(densities, default=0.0), bound)
        e = min(violated)
        i, j = pairs[e]
        trace.append((e, y[i], y[j]))
        y[i] = cand[i][int(rng.integers(len(cand[i])))]
        y[j] = cand[j][int(rng.integers(len(cand[j])))]
        rounds += 1
        for f in set(touching[i]) | set(touching[j]):
            if bad(f):
                violated.add(f)
            else:
                violated.discard(f)
    return LiftOutcome(Witness(Color.RED, tuple(y), k), "ok", rounds, trace, max(densities, default=0.0), bound)


# -- solve ----------------------------------------------------------------------


@dataclass
class StageLog:
    stage: str
    status: Literal["ok", "failed"]
    info: dict[str, object] = field(default_factory=dict)


@dataclass
class SolveReport:
    config: SolveConfig
    stages: list[StageLog] = field(default_factory=list)
    witness: Witness | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def failed_stage(self) -> str | None:
        for st in self.stages:
            if st.status == "failed":
                return st.stage
        return None

    @property
    def ok(self) -> bool:
        return self.witness is not None


def solve(
    host: Graph,
    blown: Graph,
    bmap: BlowupMap,
    coloring: TwoColoring,
    cfg: SolveConfig,
) -> SolveReport:
    """Run the whole pipeline on ``coloring`` of ``blown = blowup(host^k)``.

    The report holds either a witness that has passed ``verify_witness``
    against the original colouring, or the stage that failed and why.
    """
    report = SolveReport(cfg, warnings=cfg.warnings)
    if bmap.base_order != host.order or bmap.cluster_size != cfg.cluster_size or blown.order != bmap.order:
        raise ValueError("blown graph and blow-up map do not match the host and configuration")
    if coloring.host is not blown and coloring.host != blown:
        raise ValueError("colouring is not a colouring of the blown-up graph")

    def fail(stage: str, **info) -> SolveReport:
        report.stages.append(StageLog(stage, "failed", info))
        log.debug("stage %s failed: %s", stage, info)
        return report

    try:
        side = select_majority_side(bmap, coloring, cfg.t)
    except RamseyStepFailed as exc:
        return fail("ramsey", reason="no_mono_clique", cluster=exc.cluster)
    report.stages.append(
        StageLog(
            "ramsey",
            "ok",
            {
                "blue_clusters": side.blue_clusters,
                "red_clusters": side.red_clusters,
                "swapped": side.swapped,
                "majority": len(side.W),
            },
        )
    )

    f, base_of = host.induced_subgraph(side.W)
    fk = graph_power(f, cfg.k)
    chi = auxiliary_coloring(fk, base_of, side.internal, side.cliques, cfg.s)
    report.stages.append(
        StageLog(
            "auxiliary",
            "ok",
            {"vertices": fk.order, "edges": fk.num_edges, "blue": chi.count(Color.BLUE), "red": chi.count(Color.RED)},
        )
    )

    a = cfg.a if cfg.a is not None else Fraction(host.order, cfg.n)
    dich = claim_dichotomy(f, cfg.k, cfg.n, chi, cfg.eps, a)
    info: dict[str, object] = {"case": dich.kind, "threshold": dich.threshold}
    if dich.cover is not None:
        info["cover_paths"] = len(dich.cover.paths)
        info["longest_path"] = len(dich.cover.longest_path())
        info["class_sizes"] = ",".join(map(str, dich.cover.class_sizes))
    if dich.kind == "infeasible":
        return fail("dichotomy", reason="+".join(dich.reasons), **info)
    if dich.reasons:
        info["notes"] = "+".join(dich.reasons)
    report.stages.append(StageLog("dichotomy", "ok", info))

    base_path = [base_of[i] for i in dich.path]
    if dich.kind == "blue_path":
        try:
            w = lift_blue(base_path, side.internal, side.cliques, cfg.s, cfg.k)
        except LiftError as exc:
            return fail("lift", method="blue", reason=type(exc).__name__, detail=str(exc))
        report.stages.append(StageLog("lift", "ok", {"method": "blue", "length": len(w)}))
    else:
        try:
            if cfg.lifter == "greedy":
                out = lift_red_greedy(base_path, side.internal, side.cliques, cfg.s, cfg.k, cfg.greedy_budget)
            else:
                out = lift_red_resample(
                    base_path, side.internal, side.cliques, cfg.s, cfg.k, cfg.seed, cfg.max_rounds
                )
        except PreconditionViolated as exc:
            return fail("lift", method=cfg.lifter, reason="precondition_violated", pair=f"{exc.pair[0]},{exc.pair[1]}")
        if out.witness is None:
            return fail("lift", method=cfg.lifter, reason=out.status, steps=out.steps)
        w = out.witness
        report.stages.append(StageLog("lift", "ok", {"method": cfg.lifter, "length": len(w), "steps": out.steps}))

    if not verify_witness(blown, side.internal, w):
        return fail("verify", reason="internal_check")
    final = replace(w, color=side.original(w.color))
    if not verify_witness(blown, coloring, final):
        return fail("verify", reason="original_check")
    report.stages.append(StageLog("verify", "ok", {}))
    report.witness = final
    return report


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value).replace(" ", "_")


def format_report(report: SolveReport) -> str:
    cfg = report.config
    lines = [
        "report",
        f"config k={cfg.k} n={cfg.n} s={cfg.s} t={cfg.t} cluster_size={cfg.cluster_size} "
        f"epsilon={cfg.eps} lifter={cfg.lifter} seed={cfg.seed}",
    ]
    lines.extend(f"warning {wmsg}" for wmsg in report.warnings)
    for st in report.stages:
        fields = " ".join(f"{key}={_fmt(val)}" for key, val in st.info.items())
        lines.append(f"stage {st.stage} {st.status} {fields}".rstrip())
    if report.witness is not None:
        w = report.witness
        lines.append(f"outcome witness color={w.color.value} power={w.power} length={len(w.vertices)}")
    else:
        lines.append(f"outcome failure stage={report.failed_stage}")
    return "\n".join(lines) + "\n"
