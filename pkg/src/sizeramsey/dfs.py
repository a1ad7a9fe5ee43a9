"""Depth-first search for paths that cycle through prescribed vertex classes.

Position ``j`` (1-based) of the path must lie in class ``(j - 1) mod (k + 1)``
(0-based class index). The search keeps, per class, the unused vertices and
the dead ends; a dead end is never revisited, and the outer loop stops once a
class has more than half of its vertices declared dead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph

__all__ = [
    "TransversalInstance",
    "DfsState",
    "DfsOutcome",
    "ReplayError",
    "find_transversal_path",
    "replay_trace",
    "class_of_position",
]

# decision log entries
START, EXTEND, DEAD = "start", "extend", "dead"


def class_of_position(j: int, num_classes: int) -> int:
    """0-based class index required at 1-based path position ``j``."""
    return (j - 1) % num_classes


@dataclass(frozen=True)
class TransversalInstance:
    host: Graph
    classes: tuple[frozenset[int], ...]
    target_length: int

    def __post_init__(self):
        classes = tuple(frozenset(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        seen: set[int] = set()
        for i, cls in enumerate(classes):
            if seen & cls:
                raise ValueError(f"class {i} overlaps an earlier class")
            if any(not 0 <= v < self.host.order for v in cls):
                raise ValueError(f"class {i} has a vertex outside the host")
            seen |= cls

    @property
    def num_classes(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class DfsState:
    unused: tuple[frozenset[int], ...]
    dead: tuple[frozenset[int], ...]
    path: tuple[int, ...]

    def partition_holds(self, classes: Sequence[frozenset[int]]) -> bool:
        on_path = set(self.path)
        for A, U, D in zip(classes, self.unused, self.dead):
            P = A & on_path
            if U & D or U & P or D & P or (U | D | P) != A:
                return False
        return True

    def pattern_holds(self, classes: Sequence[frozenset[int]]) -> bool:
        m = len(classes)
        return all(x in classes[class_of_position(j, m)] for j, x in enumerate(self.path, start=1))

    def progress(self) -> int:
        return sum(len(D) - len(U) for U, D in zip(self.unused, self.dead))


@dataclass
class DfsOutcome:
    path: tuple[int, ...] | None
    state: DfsState
    log: list[tuple[str, int]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.path is not None


def _snapshot(U: list[set[int]], D: list[set[int]], P: list[int]) -> DfsState:
    return DfsState(tuple(frozenset(u) for u in U), tuple(frozenset(d) for d in D), tuple(P))


def find_transversal_path(inst: TransversalInstance, trace: bool = False) -> DfsOutcome:
    """Look for a path ``x_1..x_n`` in the host with ``x_j`` in class ``(j-1) mod (k+1)``.

    Vertex choices are always the smallest eligible id. On failure the
    terminal search state is returned instead of a path.
    """
    n = inst.target_length
    if n < 1:
        raise ValueError("target_length must be at least 1")
    if not inst.classes or any(not A for A in inst.classes):
        raise ValueError("classes must be non-empty")
    host = inst.host
    m = inst.num_classes
    sizes = [len(A) for A in inst.classes]
    U = [set(A) for A in inst.classes]
    D: list[set[int]] = [set() for _ in range(m)]
    P: list[int] = []
    log: list[tuple[str, int]] = []

    while all(2 * len(D[i]) <= sizes[i] for i in range(m)):
        x1 = min(U[0])
        U[0].discard(x1)
        P = [x1]
        if trace:
            log.append((START, x1))
        while 1 <= len(P) < n:
            r = len(P)
            nxt = class_of_position(r + 1, m)
            candidates = U[nxt] & host.neighbors(P[-1])
            if candidates:
                u = min(candidates)
                U[nxt].discard(u)
                P.append(u)
                if trace:
                    log.append((EXTEND, u))
            else:
                x = P.pop()
                D[class_of_position(r, m)].add(x)
                if trace:
                    log.append((DEAD, x))
        if len(P) == n:
            return DfsOutcome(tuple(P), _snapshot(U, D, P), log)
    return DfsOutcome(None, _snapshot(U, D, P), log)


class ReplayError(ValueError):
    pass


def replay_trace(inst: TransversalInstance, decision_log: Sequence[tuple[str, int]]) -> list[DfsState]:
    """Rebuild every intermediate search state from a decision log.

    The returned list starts with the initial state and has one entry per
    logged decision. Each decision is checked for legality against the
    instance; an illegal one raises ``ReplayError``.
    """
    m = inst.num_classes
    U = [set(A) for A in inst.classes]
    D: list[set[int]] = [set() for _ in range(m)]
    P: list[int] = []
    states = [_snapshot(U, D, P)]
    for step, (kind, v) in enumerate(decision_log):
        if kind == START:
            if P:
                raise ReplayError(f"step {step}: start while the path is non-empty")
            if v not in U[0]:
                raise ReplayError(f"step {step}: {v} is not an unused vertex of the first class")
            U[0].discard(v)
            P.append(v)
        elif kind == EXTEND:
            if not P:
                raise ReplayError(f"step {step}: extend on an empty path")
            nxt = class_of_position(len(P) + 1, m)
            if v not in U[nxt]:
                raise ReplayError(f"step {step}: {v} is not an unused vertex of class {nxt}")
            if not inst.host.has_edge(P[-1], v):
                raise ReplayError(f"step {step}: {P[-1]} and {v} are not adjacent")
            U[nxt].discard(v)
            P.append(v)
        elif kind == DEAD:
            if not P or P[-1] != v:
                raise ReplayError(f"step {step}: {v} is not the head of the path")
            D[class_of_position(len(P), m)].add(v)
            P.pop()
        else:
            raise ReplayError(f"step {step}: unknown decision {kind!r}")
        states.append(_snapshot(U, D, P))
    return states
