"""Structural searches used by the solver.

* monochromatic cliques inside a coloured clique,
* blue complete bipartite subgraphs between two clusters,
* the auxiliary colouring of the power of the majority-side host,
* covers of a coloured complete graph by at most ``k`` blue paths plus a red
  complete ``(k+1)``-partite graph,
* the Kovari-Sos-Turan edge bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .graph import Color, Graph, TwoColoring, complete_graph

__all__ = [
    "RamseyTable",
    "ramsey_number",
    "MonoClique",
    "find_mono_clique",
    "mono_clique_in",
    "KssWitness",
    "has_blue_kss",
    "find_biclique",
    "ClusterLookupError",
    "auxiliary_coloring",
    "complete_with_red",
    "PartitionCover",
    "SearchExhausted",
    "cover_blue_paths_red_multipartite",
    "verify_cover",
    "kst_edge_bound_check",
]


class RamseyTable:
    """Diagonal two-colour Ramsey numbers ``r(K_t)``.

    Only the classical exact values for ``t <= 4`` are built in; anything
    larger must be supplied through ``override``.
    """

    EXACT = {1: 1, 2: 2, 3: 6, 4: 18}

    def __init__(self, override: Mapping[int, int] | None = None):
        self.values = dict(self.EXACT)
        if override:
            self.values.update(override)

    def __getitem__(self, t: int) -> int:
        try:
            return self.values[t]
        except KeyError:
            raise KeyError(f"r(K_{t}) is not known exactly; pass an explicit cluster size") from None

    def __contains__(self, t: int) -> bool:
        return t in self.values


def ramsey_number(t: int, table: RamseyTable | None = None) -> int:
    return (table or RamseyTable())[t]


@dataclass(frozen=True)
class MonoClique:
    vertices: tuple[int, ...]
    color: Color


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _least_clique(nbr: Sequence[int], t: int) -> tuple[int, ...] | None:
    """Lexicographically least t-clique of the graph given by neighbour bitmasks."""
    m = len(nbr)
    alive = sum(1 << v for v in range(m) if nbr[v].bit_count() >= t - 1)

    def extend(chosen: list[int], cand: int) -> tuple[int, ...] | None:
        if len(chosen) == t:
            return tuple(chosen)
        need = t - len(chosen)
        while cand and cand.bit_count() >= need:
            v = _lowest(cand)
            cand &= cand - 1
            chosen.append(v)
            found = extend(chosen, cand & nbr[v])
            if found:
                return found
            chosen.pop()
        return None

    return extend([], alive)


def mono_clique_in(
    vertices: Sequence[int], color_of: Callable[[int, int], Color | None], t: int
) -> MonoClique | None:
    """Monochromatic t-clique among ``vertices``, all of whose pairs must be coloured.

    The colour with more edges is searched first (on a tie, the colour of the
    first pair). Within a colour the lexicographically least clique in the
    order of ``vertices`` is returned.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    m = len(vertices)
    if m < t:
        return None
    blue = [0] * m
    red = [0] * m
    first: Color | None = None
    nblue = 0
    for i in range(m):
        for j in range(i + 1, m):
            c = color_of(vertices[i], vertices[j])
            if c is None:
                raise ValueError(f"pair {vertices[i]} {vertices[j]} is not an edge")
            if first is None:
                first = c
            if c is Color.BLUE:
                blue[i] |= 1 << j
                blue[j] |= 1 << i
                nblue += 1
            else:
                red[i] |= 1 << j
                red[j] |= 1 << i
    total = m * (m - 1) // 2
    if 2 * nblue > total:
        primary = Color.BLUE
    elif 2 * nblue < total:
        primary = Color.RED
    else:
        primary = first or Color.BLUE
    for col in (primary, primary.other):
        found = _least_clique(blue if col is Color.BLUE else red, t)
        if found is not None:
            return MonoClique(tuple(vertices[i] for i in found), col)
    return None


def find_mono_clique(c: TwoColoring, t: int) -> MonoClique | None:
    """Monochromatic ``K_t`` in a colouring of a complete graph, or ``None``."""
    if not c.host.is_complete():
        raise ValueError("find_mono_clique needs a colouring of a complete graph")
    return mono_clique_in(list(c.host.vertices()), c.get, t)


@dataclass(frozen=True)
class KssWitness:
    left: tuple[int, ...]
    right: tuple[int, ...]


def find_biclique(
    left: Sequence[int], right: Sequence[int], adjacent: Callable[[int, int], bool], s: int
) -> KssWitness | None:
    """Exact search for ``K_{s,s}`` with one side in ``left`` and the other in ``right``.

    Enumerates s-subsets of the smaller side and intersects their neighbourhoods.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    L, R = sorted(left), sorted(right)
    if len(L) < s or len(R) < s:
        return None
    flip = len(R) < len(L)
    small, big = (R, L) if flip else (L, R)
    nbr = []
    for x in small:
        nbr.append(sum(1 << j for j, y in enumerate(big) if (adjacent(y, x) if flip else adjacent(x, y))))
    usable = [i for i in range(len(small)) if nbr[i].bit_count() >= s]
    for combo in combinations(usable, s):
        common = -1
        for i in combo:
            common &= nbr[i]
            if common.bit_count() < s:
                break
        else:
            other = tuple(big[j] for j in list(_bits(common))[:s])
            mine = tuple(small[i] for i in combo)
            return KssWitness(other, mine) if flip else KssWitness(mine, other)
    return None


def has_blue_kss(
    c: TwoColoring, left: Sequence[int], right: Sequence[int], s: int, color: Color = Color.BLUE
) -> KssWitness | None:
    """Complete bipartite ``K_{s,s}`` in ``color`` between ``left`` and ``right``.

    Pairs that are not edges of the host count as absent.
    """
    return find_biclique(left, right, lambda x, y: c.get(x, y) is color, s)


class ClusterLookupError(KeyError):
    pass


def auxiliary_coloring(
    f_power: Graph,
    base_of: Sequence[int],
    blowup_coloring: TwoColoring,
    cliques: Mapping[int, MonoClique],
    s: int,
) -> TwoColoring:
    """Colour ``{u, v}`` blue iff the cliques of the two clusters span a blue ``K_{s,s}``.

    ``base_of[i]`` is the base vertex (cluster) that vertex ``i`` of ``f_power`` stands for.
    """
    if len(base_of) != f_power.order:
        raise ClusterLookupError("base_of must list one cluster per vertex")

    def clique(i: int) -> tuple[int, ...]:
        try:
            return cliques[base_of[i]].vertices
        except KeyError:
            raise ClusterLookupError(f"no clique recorded for cluster {base_of[i]}") from None

    colors = {}
    for u, v in f_power.edges():
        hit = has_blue_kss(blowup_coloring, clique(u), clique(v), s)
        colors[(u, v)] = Color.BLUE if hit is not None else Color.RED
    return TwoColoring(f_power, colors)


def complete_with_red(chi: TwoColoring) -> TwoColoring:
    """Extend a colouring to the complete graph on the same vertices, non-edges red."""
    m = chi.host.order
    full = complete_graph(m)
    return TwoColoring(full, {e: chi.get(*e) or Color.RED for e in full.edges()})


@dataclass(frozen=True)
class PartitionCover:
    paths: tuple[tuple[int, ...], ...]
    classes: tuple[frozenset[int], ...]

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def is_balanced(self) -> bool:
        return len(set(self.class_sizes)) <= 1

    @property
    def balance_ratio(self) -> float:
        lo, hi = min(self.class_sizes), max(self.class_sizes)
        if hi == 0:
            return 1.0
        return float("inf") if lo == 0 else hi / lo

    def longest_path(self) -> tuple[int, ...]:
        return max(self.paths, key=len, default=())


class SearchExhausted(RuntimeError):
    pass


def verify_cover(c: TwoColoring, k: int, cover: PartitionCover) -> bool:
    """Check a cover: at most ``k`` blue paths and ``k+1`` classes, disjoint and
    exhaustive, blue consecutive path pairs, no blue pair across two classes."""
    try:
        paths = [tuple(int(x) for x in p) for p in cover.paths]
        classes = [frozenset(int(x) for x in cl) for cl in cover.classes]
    except (TypeError, ValueError):
        return False
    if len(paths) > k or len(classes) != k + 1:
        return False
    seen: list[int] = [x for p in paths for x in p] + [x for cl in classes for x in cl]
    if len(seen) != len(set(seen)) or set(seen) != set(range(c.host.order)):
        return False
    for p in paths:
        for x, y in zip(p, p[1:]):
            if c.get(x, y) is not Color.BLUE:
                return False
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            for x in classes[i]:
                for y in classes[j]:
                    if c.get(x, y) is Color.BLUE:
                        return False
    return True


# -- cover search -----------------------------------------------------------


def _color_masks(c: TwoColoring) -> tuple[list[int], list[int]]:
    m = c.host.order
    blue = [0] * m
    for (u, v), col in c.items():
        if col is Color.BLUE:
            blue[u] |= 1 << v
            blue[v] |= 1 << u
    full = (1 << m) - 1
    red = [full & ~blue[v] & ~(1 << v) for v in range(m)]
    return blue, red


def _dfs_cover(blue: list[int], k: int) -> tuple[list[list[int]], list[int]]:
    """Phased depth-first search in the blue graph.

    Phase ``i`` runs a DFS over the still-unvisited vertices. Vertices popped
    from the stack have no blue neighbour among the unvisited ones, so the
    popped set is red to everything that is left. The phase stops once the
    popped set is large enough for the unvisited rest to be split into the
    remaining classes; its stack becomes a blue path.
    """
    m = len(blue)
    remaining = (1 << m) - 1
    paths: list[list[int]] = []
    classes: list[int] = []
    for phase in range(1, k + 1):
        groups_left = k - phase + 1
        popped = 0
        stack: list[int] = []
        unvisited = remaining
        while groups_left * popped.bit_count() < unvisited.bit_count():
            if not stack:
                v = _lowest(unvisited)
                unvisited ^= 1 << v
                stack.append(v)
                continue
            nb = blue[stack[-1]] & unvisited
            if nb:
                v = _lowest(nb)
                unvisited ^= 1 << v
                stack.append(v)
            else:
                popped |= 1 << stack.pop()
        paths.append(stack)
        classes.append(popped)
        remaining = unvisited
    classes.append(remaining)
    return paths, classes


def _rebalance(blue: list[int], red: list[int], k: int, paths: list[list[int]], classes: list[int]) -> None:
    """Local vertex exchanges that shrink the spread of the class sizes (in place).

    Moves: a class vertex to another class, a class vertex onto a path end (or
    a fresh path while fewer than ``k`` are in use), a path end into a class.
    A move is kept only if it strictly improves (spread, number of classes at
    the extremes).
    """

    def score() -> tuple[int, int]:
        sizes = [cl.bit_count() for cl in classes]
        hi, lo = max(sizes), min(sizes)
        return hi - lo, sizes.count(hi) + sizes.count(lo)

    def fits(v: int, target: int) -> bool:
        others = 0
        for j, cl in enumerate(classes):
            if j != target:
                others |= cl
        others &= ~(1 << v)
        return others & ~red[v] == 0

    def attach(v: int) -> tuple[list[int], int] | None:
        for p in paths:
            if p and blue[p[-1]] >> v & 1:
                p.append(v)
                return p, -1
            if p and blue[p[0]] >> v & 1:
                p.insert(0, v)
                return p, 0
        if sum(1 for p in paths if p) < k:
            p = next((p for p in paths if not p), None)
            if p is None:
                p = []
                paths.append(p)
            p.append(v)
            return p, -1
        return None

    for _ in range(4 * len(blue) + 8):
        current = score()
        if current[0] == 0:
            return
        sizes = [cl.bit_count() for cl in classes]
        big_first = sorted(range(len(classes)), key=lambda j: (-sizes[j], j))
        small_first = big_first[::-1]
        improved = False

        for a in big_first:
            for v in _bits(classes[a]):
                bit = 1 << v
                for b in small_first:
                    if b != a and fits(v, b):
                        classes[a] ^= bit
                        classes[b] |= bit
                        if score() < current:
                            improved = True
                            break
                        classes[b] ^= bit
                        classes[a] |= bit
                if improved:
                    break
                classes[a] ^= bit
                spot = attach(v)
                if spot is not None and score() < current:
                    improved = True
                    break
                if spot is not None:
                    spot[0].pop(spot[1])
                classes[a] |= bit
            if improved:
                break

        if not improved:
            for p in paths:
                for end in (-1, 0):
                    if not p:
                        break
                    v = p[end]
                    for b in small_first:
                        if fits(v, b):
                            classes[b] |= 1 << v
                            if score() < current:
                                p.pop(end)
                                improved = True
                                break
                            classes[b] ^= 1 << v
                    if improved:
                        break
                if improved:
                    break
        if not improved:
            return


def _path_cover(blue: list[int], members: list[int], k: int) -> list[list[int]] | None:
    """Cover ``members`` by at most ``k`` vertex-disjoint blue paths (subset DP), or ``None``."""
    ell = len(members)
    if ell == 0:
        return []
    if k == 0:
        return None
    local = [sum(1 << j for j, w in enumerate(members) if blue[v] >> w & 1) for v in members]
    size = 1 << ell
    full = size - 1
    # ends[j][mask]: bitset of possible last vertices when mask is covered by j+1 paths
    ends = [[0] * size for _ in range(k)]
    for u in range(ell):
        ends[0][1 << u] = 1 << u
    for mask in range(1, size):
        free = full & ~mask
        if not free:
            continue
        for j in range(k):
            E = ends[j][mask]
            if not E:
                continue
            reach = 0
            for e in _bits(E):
                reach |= local[e]
            reach &= free
            row = ends[j]
            for u in _bits(reach):
                row[mask | 1 << u] |= 1 << u
            if j + 1 < k:
                nxt = ends[j + 1]
                for u in _bits(free & ~reach):
                    nxt[mask | 1 << u] |= 1 << u
    for j in range(k):
        if ends[j][full]:
            break
    else:
        return None
    # walk back from the full mask
    paths: list[list[int]] = [[]]
    mask, e = full, _lowest(ends[j][full])
    while True:
        paths[-1].append(members[e])
        prev = mask ^ (1 << e)
        if not prev:
            break
        step = None
        for p in _bits(ends[j][prev]):
            if local[p] >> e & 1:
                step = (j, p)
                break
        if step is None and j > 0:
            p = _lowest(ends[j - 1][prev])
            if ends[j - 1][prev]:
                step = (j - 1, p)
        assert step is not None
        if step[0] != j:
            paths.append([])
        j, e = step
        mask = prev
    return [list(reversed(p)) for p in reversed(paths)]


def _exhaustive_balanced(blue: list[int], red: list[int], k: int, work_bound: int):
    """Balanced cover by exhaustive search, largest class size first."""
    m = len(blue)
    full = (1 << m) - 1
    budget = [work_bound]

    def classes_of_size(q: int):
        def rec(chosen: list[int], allowed: int, prev_min: int):
            if len(chosen) == k + 1:
                yield list(chosen)
                return
            pool = allowed & ~((1 << (prev_min + 1)) - 1) if prev_min >= 0 else allowed
            for first in _bits(pool):
                rest_pool = allowed & ~((1 << (first + 1)) - 1)
                for tail in combinations(list(_bits(rest_pool)), q - 1):
                    budget[0] -= 1
                    if budget[0] < 0:
                        raise SearchExhausted("exhaustive cover search exceeded its work bound")
                    cls = (1 << first) | sum(1 << x for x in tail)
                    common = allowed & ~cls
                    for x in _bits(cls):
                        common &= red[x]
                    if common.bit_count() < q * (k - len(chosen)):
                        continue
                    chosen.append(cls)
                    yield from rec(chosen, common, first)
                    chosen.pop()

        yield from rec([], full, -1)

    for q in range(m // (k + 1), -1, -1):
        if q == 0:
            paths = _path_cover(blue, list(range(m)), k)
            if paths is not None:
                return paths, [0] * (k + 1)
            continue
        for classes in classes_of_size(q):
            used = 0
            for cl in classes:
                used |= cl
            leftover = list(_bits(full & ~used))
            paths = _path_cover(blue, leftover, k)
            if paths is not None:
                return paths, classes
    return None


def cover_blue_paths_red_multipartite(
    c: TwoColoring,
    k: int,
    *,
    exhaustive_limit: int = 15,
    require_balanced: bool = False,
    work_bound: int = 5_000_000,
) -> PartitionCover:
    """Cover a red/blue complete graph by at most ``k`` blue paths and ``k+1`` red-joined classes.

    A phased blue DFS followed by local rebalancing gives a cover for any
    order. If its classes are not all the same size and the order is at most
    ``exhaustive_limit``, an exhaustive search for an equal-size cover takes
    over. When no equal-size cover is found the heuristic cover is returned,
    unless ``require_balanced`` is set. Every returned cover has passed
    ``verify_cover``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not c.host.is_complete():
        raise ValueError("cover search needs a colouring of a complete graph")
    blue, red = _color_masks(c)
    paths, classes = _dfs_cover(blue, k)
    _rebalance(blue, red, k, paths, classes)
    heuristic = _as_cover(paths, classes, k)
    heuristic_ok = verify_cover(c, k, heuristic)
    if heuristic_ok and heuristic.is_balanced:
        return heuristic
    if c.host.order <= exhaustive_limit:
        try:
            found = _exhaustive_balanced(blue, red, k, work_bound)
        except SearchExhausted:
            found = None
        if found is not None:
            cover = _as_cover(*found, k)
            if verify_cover(c, k, cover):
                return cover
    if not heuristic_ok:
        raise SearchExhausted(f"no valid cover found on {c.host.order} vertices with k={k}")
    if require_balanced:
        raise SearchExhausted(f"no balanced cover found (best class sizes {heuristic.class_sizes})")
    return heuristic


def _as_cover(paths: list[list[int]], classes: list[int], k: int) -> PartitionCover:
    kept = tuple(tuple(p) for p in paths if p)
    return PartitionCover(kept, tuple(frozenset(_bits(cl)) for cl in classes))


def kst_edge_bound_check(bip: Graph, s: int) -> bool:
    """Instance check of the Kovari-Sos-Turan bound.

    ``bip`` has ``2t`` vertices, ``0..t-1`` on the left and ``t..2t-1`` on the
    right. True iff it contains ``K_{s,s}`` or has at most ``4 t^(2 - 1/s)`` edges.
    """
    if bip.order % 2:
        raise ValueError("balanced bipartite input needs an even number of vertices")
    t = bip.order // 2
    for u, v in bip.edges():
        if (u < t) == (v < t):
            raise ValueError(f"edge {u} {v} lies inside one side")
    if find_biclique(range(t), range(t, 2 * t), bip.has_edge, s) is not None:
        return True
    # e <= 4 t^(2 - 1/s)  <=>  e^s <= 4^s t^(2s - 1)
    return bip.num_edges**s <= 4**s * t ** (2 * s - 1)
