"""Colourers that play the role of the adversary choosing a 2-colouring."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Literal

import numpy as np

from .graph import BlowupMap, Color, Graph, TwoColoring, edge_key
from .io import read_coloring

__all__ = ["Adversary", "ReplayMismatch", "color_with", "ADVERSARY_NAMES"]

Kind = Literal["uniform", "all", "parity", "anticlique", "file"]

ADVERSARY_NAMES = ("uniform", "all-red", "all-blue", "parity", "anticlique", "file:<path>")


class ReplayMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Adversary:
    kind: Kind
    color: Color | None = None
    path: str | None = None
    p: float = 0.5

    def __post_init__(self):
        if self.kind == "all" and self.color is None:
            raise ValueError("the constant adversary needs a colour")
        if self.kind == "file" and not self.path:
            raise ValueError("the replay adversary needs a file")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("blue probability must lie in [0, 1]")

    @property
    def label(self) -> str:
        if self.kind == "all":
            return "all-red" if self.color is Color.RED else "all-blue"
        if self.kind == "file":
            return f"file:{self.path}"
        if self.kind == "uniform" and self.p != 0.5:
            return f"uniform:{self.p}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "Adversary":
        """Parse ``uniform[:p]``, ``all-red``, ``all-blue``, ``parity``, ``anticlique`` or ``file:<path>``."""
        name, _, arg = text.strip().partition(":")
        name = name.lower()
        if name == "uniform":
            return cls("uniform", p=float(arg) if arg else 0.5)
        if name in ("all-red", "all-blue"):
            return cls("all", Color.RED if name == "all-red" else Color.BLUE)
        if name in ("parity", "anticlique"):
            return cls(name)
        if name == "file":
            return cls("file", path=arg)
        raise ValueError(f"unknown adversary {text!r}; expected one of {', '.join(ADVERSARY_NAMES)}")


def _uniform(g: Graph, rng: np.random.Generator, p: float) -> dict[tuple[int, int], Color]:
    edges = list(g.edges())
    draws = rng.random(len(edges)) < p
    return {e: Color.BLUE if hit else Color.RED for e, hit in zip(edges, draws.tolist())}


def _parity(g: Graph, cluster_of, seed: int) -> dict[tuple[int, int], Color]:
    # clusters of parity 0 are blue inside, parity 1 red; cross edges blue iff parities differ
    par = [(cluster_of(v) + seed) % 2 for v in g.vertices()]
    table = {}
    for u, v in g.edges():
        if cluster_of(u) == cluster_of(v):
            table[(u, v)] = Color.BLUE if par[u] == 0 else Color.RED
        else:
            table[(u, v)] = Color.BLUE if par[u] != par[v] else Color.RED
    return table


def _anticlique(g: Graph, bmap: BlowupMap | None, rng: np.random.Generator, t: int) -> dict[tuple[int, int], Color]:
    """Colour each cluster greedily so as to close as few monochromatic ``K_t`` as possible.

    Inside a cluster the edges are coloured in order; each gets the colour
    that completes fewer monochromatic ``K_t`` with already coloured edges,
    ties broken by a coin flip. Edges between clusters are uniform.
    """
    table: dict[tuple[int, int], Color] = {}
    clusters = [bmap.members_of(v) for v in range(bmap.base_order)] if bmap else [tuple(g.vertices())]
    for members in clusters:
        members = sorted(members)
        inside: dict[tuple[int, int], Color] = {}
        for u, v in combinations(members, 2):
            if not g.has_edge(u, v):
                continue
            others = [w for w in members if w not in (u, v)]
            closed = {Color.RED: 0, Color.BLUE: 0}
            for col in closed:
                # common neighbours already joined to both u and v in this colour
                pool = [w for w in others if inside.get(edge_key(u, w)) is col and inside.get(edge_key(v, w)) is col]
                closed[col] = sum(
                    1
                    for rest in combinations(pool, t - 2)
                    if all(inside.get(edge_key(x, y)) is col for x, y in combinations(rest, 2))
                )
            if closed[Color.RED] != closed[Color.BLUE]:
                inside[(u, v)] = Color.RED if closed[Color.RED] < closed[Color.BLUE] else Color.BLUE
            else:
                inside[(u, v)] = Color.BLUE if rng.random() < 0.5 else Color.RED
        table.update(inside)
    rest = [e for e in g.edges() if e not in table]
    draws = rng.random(len(rest)) < 0.5
    table.update({e: Color.BLUE if hit else Color.RED for e, hit in zip(rest, draws.tolist())})
    return table


def color_with(
    adversary: Adversary,
    g: Graph,
    bmap: BlowupMap | None = None,
    seed: int = 0,
    t: int = 3,
) -> TwoColoring:
    """Colour every edge of ``g`` as the adversary would. Deterministic given ``seed``."""
    rng = np.random.default_rng(seed)
    if adversary.kind == "uniform":
        table = _uniform(g, rng, adversary.p)
    elif adversary.kind == "all":
        return TwoColoring.constant(g, adversary.color)
    elif adversary.kind == "parity":
        cluster_of = bmap.cluster_of if bmap is not None else (lambda v: v)
        table = _parity(g, cluster_of, seed)
    elif adversary.kind == "anticlique":
        if t < 2:
            raise ValueError("t must be at least 2 for the anti-clique adversary")
        table = _anticlique(g, bmap, rng, t)
    elif adversary.kind == "file":
        try:
            return read_coloring(Path(adversary.path), g)
        except ValueError as exc:
            raise ReplayMismatch(f"stored colouring does not match the graph: {exc}") from exc
    else:
        raise ValueError(f"unknown adversary kind {adversary.kind!r}")
    return TwoColoring(g, table)
