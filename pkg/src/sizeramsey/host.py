"""Bounded-degree pseudo-random hosts and their expansion certificates."""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt
from typing import Literal

import numpy as np

from .graph import Graph

__all__ = [
    "PaperConstants",
    "paper_constants",
    "HostSample",
    "sample_host",
    "degree_prune",
    "ExpansionCertificate",
    "WorkBoundExceeded",
    "certify_expansion_exact",
    "certify_expansion_sampled",
    "default_work_bound",
    "format_certificate",
]

WORK_BOUND_ENV = "SIZERAMSEY_WORK_BOUND"
_DEFAULT_WORK_BOUND = 2_000_000


def default_work_bound() -> int:
    return int(os.environ.get(WORK_BOUND_ENV, _DEFAULT_WORK_BOUND))


def _iroot(x: int, s: int) -> int:
    """Floor of the s-th root of a non-negative integer."""
    if s == 2:
        return isqrt(x)
    lo, hi = 0, 1 << (x.bit_length() // s + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**s <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class PaperConstants:
    k: int
    epsilon: Fraction
    a0: Fraction
    a: Fraction
    c: Fraction
    b: Fraction
    s: int
    t: int

    @property
    def p_numerator_c(self) -> Fraction:
        # edge probability of the sampled host is c / n
        return self.c

    def local_lemma_product(self) -> Fraction:
        """``64k * t^(-1/s)`` evaluated exactly; equals 1 for the default t and s."""
        root = _iroot(self.t, self.s)
        if root**self.s != self.t:
            raise ValueError(f"t={self.t} is not a perfect {self.s}-th power")
        return Fraction(64 * self.k, root)


def paper_constants(
    k: int,
    epsilon_override: Fraction | int | str | None = None,
    a_override: Fraction | int | str | None = None,
) -> PaperConstants:
    """Exact constants of the construction for a given ``k``.

    ``epsilon`` and ``a`` may be overridden; ``a`` may not drop below ``max(6k, a0)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    eps = Fraction(1, 3 * (k + 1)) if epsilon_override is None else Fraction(epsilon_override)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    a0 = 2 + 4 / (eps * (k + 1))
    floor_a = max(Fraction(6 * k), a0)
    a = floor_a if a_override is None else Fraction(a_override)
    if a < floor_a:
        raise ValueError(f"a must be at least max(6k, a0) = {floor_a}")
    c = 4 * a / eps**2
    b = 4 * a * c
    s = 2 * k
    t = (64 * k) ** (2 * k)
    consts = PaperConstants(k=k, epsilon=eps, a0=a0, a=a, c=c, b=b, s=s, t=t)
    assert consts.local_lemma_product() == 1
    return consts


@dataclass(frozen=True)
class HostSample:
    graph: Graph
    max_degree: int
    sampled: Graph
    kept: tuple[int, ...]


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"{what} = {x} is not an integer")
    return int(x)


def sample_host(
    a: Fraction | int | str,
    n: int,
    c: Fraction | int | float | str,
    b: Fraction | int | None = None,
    seed: int | None = 0,
) -> HostSample:
    """Sample ``G(2an, c/n)`` and prune maximum-degree vertices down to ``an`` vertices.

    Pairs are drawn in lexicographic order, one uniform draw per pair from a
    PCG64 generator, so the result depends only on ``seed``. ``b`` is not used
    by the procedure; checking the degree bound is left to the caller.
    """
    a = Fraction(a)
    c = Fraction(c)
    target = _integral(a * n, "an")
    big = 2 * target
    if target < 1:
        raise ValueError("an must be at least 1")
    p = c / n
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability c/n = {p} is outside [0, 1]")
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(big, k=1)
    hit = rng.random(rows.size) < float(p)
    sampled = Graph(big, zip(rows[hit].tolist(), cols[hit].tolist()))
    pruned, kept = degree_prune(sampled, target, return_kept=True)
    return HostSample(pruned, pruned.max_degree(), sampled, kept)


def degree_prune(g: Graph, target_order: int, return_kept: bool = False):
    """Remove a maximum-degree vertex (largest id on ties) until ``target_order`` vertices remain.

    Returns the induced subgraph relabelled in increasing id order, and with
    ``return_kept`` also the tuple of surviving original ids.
    """
    if not 0 <= target_order <= g.order:
        raise ValueError("target_order must lie in [0, order]")
    degree = [g.degree(v) for v in g.vertices()]
    alive = [True] * g.order
    heap = [(-degree[v], -v) for v in g.vertices()]
    heapq.heapify(heap)
    remaining = g.order
    while remaining > target_order:
        negdeg, negv = heapq.heappop(heap)
        v = -negv
        if not alive[v] or -negdeg != degree[v]:
            continue
        alive[v] = False
        remaining -= 1
        for w in g.neighbors(v):
            if alive[w]:
                degree[w] -= 1
                heapq.heappush(heap, (-degree[w], -w))
    sub, kept = g.induced_subgraph(v for v in g.vertices() if alive[v])
    return (sub, kept) if return_kept else sub


class WorkBoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ExpansionCertificate:
    mode: Literal["exact", "sampled"]
    sigma: int
    verdict: Literal["certified", "falsified", "unfalsified"]
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    trials: int = 0
    failing_trial: int | None = field(default=None)

    def recheck(self, h: Graph) -> bool:
        """Re-verify a falsifying pair directly against ``h``; true for non-falsified verdicts."""
        if self.verdict != "falsified":
            return self.counterexample is None
        if self.counterexample is None:
            return False
        S, T = self.counterexample
        if set(S) & set(T) or len(set(S)) < self.sigma or len(set(T)) < self.sigma:
            return False
        return all(not h.has_edge(x, y) for x in S for y in T)


def _check_sigma(h: Graph, sigma: int) -> None:
    if sigma < 1:
        raise ValueError("sigma must be at least 1")
    if 2 * sigma > h.order:
        raise ValueError("need 2*sigma <= order")


def _missed_by(masks, S, sigma: int, full: int) -> tuple[int, ...] | None:
    """The lowest ``sigma`` vertices outside ``S`` with no neighbour in ``S``, if there are that many."""
    covered = 0
    for x in S:
        covered |= masks[x] | (1 << x)
    free = full & ~covered
    if free.bit_count() < sigma:
        return None
    T = []
    while len(T) < sigma:
        low = free & -free
        T.append(low.bit_length() - 1)
        free ^= low
    return tuple(T)


def certify_expansion_exact(h: Graph, sigma: int, work_bound: int | None = None) -> ExpansionCertificate:
    """Decide whether every two disjoint vertex sets of size ``sigma`` span an edge.

    Larger sets only gain crossing edges, so size ``sigma`` is the only level
    that needs checking. For each ``S`` the vertices outside ``S`` with no
    neighbour in ``S`` are collected; ``S`` fails iff at least ``sigma`` remain.
    """
    _check_sigma(h, sigma)
    bound = default_work_bound() if work_bound is None else work_bound
    work = comb(h.order, sigma)
    if work > bound:
        raise WorkBoundExceeded(f"C({h.order}, {sigma}) = {work} subsets exceeds the work bound {bound}")
    masks = h.masks
    full = (1 << h.order) - 1
    for S in combinations(range(h.order), sigma):
        T = _missed_by(masks, S, sigma, full)
        if T is not None:
            return ExpansionCertificate("exact", sigma, "falsified", (S, T))
    return ExpansionCertificate("exact", sigma, "certified")


def certify_expansion_sampled(h: Graph, sigma: int, trials: int, seed: int | None = 0) -> ExpansionCertificate:
    """Search ``trials`` random ``sigma``-sets ``S`` for one that misses ``sigma`` other vertices.

    For each sampled ``S`` the best partner is taken directly: the lowest
    ``sigma`` vertices outside ``S`` with no neighbour in it. This finds every
    failure a random pair ``(S, T)`` would, and many more. A clean run is
    reported as ``unfalsified``, which is evidence and not a proof.
    """
    _check_sigma(h, sigma)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    masks = h.masks
    full = (1 << h.order) - 1
    for trial in range(trials):
        S = tuple(sorted(rng.choice(h.order, size=sigma, replace=False).tolist()))
        T = _missed_by(masks, S, sigma, full)
        if T is not None:
            return ExpansionCertificate("sampled", sigma, "falsified", (S, T), trials, trial)
    return ExpansionCertificate("sampled", sigma, "unfalsified", None, trials)


def format_certificate(cert: ExpansionCertificate) -> str:
    lines = [
        "certificate",
        f"mode {cert.mode}",
        f"sigma {cert.sigma}",
        f"verdict {cert.verdict}",
    ]
    if cert.mode == "sampled":
        lines.append(f"trials {cert.trials}")
    if cert.counterexample is not None:
        S, T = cert.counterexample
        lines.append("S " + " ".join(map(str, S)))
        lines.append("T " + " ".join(map(str, T)))
    return "\n".join(lines) + "\n"
