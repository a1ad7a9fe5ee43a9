"""Random transversal-path instances and checks shared by the DFS tests."""

import math
import random
from fractions import Fraction

from oracles import transversal_exists
from sizeramsey.dfs import TransversalInstance, replay_trace
from sizeramsey.graph import Graph
from sizeramsey.host import certify_expansion_exact


def path_ok(inst: TransversalInstance, path) -> bool:
    m = inst.num_classes
    if len(path) != inst.target_length or len(set(path)) != len(path):
        return False
    if any(path[j - 1] not in inst.classes[(j - 1) % m] for j in range(1, len(path) + 1)):
        return False
    return all(inst.host.has_edge(x, y) for x, y in zip(path, path[1:]))


def random_instance(rng: random.Random, max_order=16):
    order = rng.randint(2, max_order)
    p = rng.choice([0.15, 0.3, 0.5, 0.8])
    g = Graph(order, [(u, v) for u in range(order) for v in range(u + 1, order) if rng.random() < p])
    m = rng.randint(2, min(4, order))
    verts = list(range(order))
    rng.shuffle(verts)
    classes = [set() for _ in range(m)]
    for i, v in enumerate(verts):
        if i < m or rng.random() < 0.85:
            classes[i % m if i < m else rng.randrange(m)].add(v)
    return TransversalInstance(g, tuple(classes), rng.randint(1, order))


def check_trace(inst: TransversalInstance, out) -> None:
    states = replay_trace(inst, out.log)
    assert states[-1] == out.state
    for st_ in states:
        assert st_.partition_holds(inst.classes)
        assert st_.pattern_holds(inst.classes)
    for before, after in zip(states, states[1:]):
        assert all(b <= a for b, a in zip(before.dead, after.dead))
    # progress, sampled at the end of each outer iteration (empty path)
    rounds = [s.progress() for s in states if not s.path]
    assert all(x < y for x, y in zip(rounds, rounds[1:]))


def class_fraction_sigma(inst: TransversalInstance) -> int:
    # sigma = max |A_i| * eps with eps = 1/(3(k+1)), k+1 classes
    eps = Fraction(1, 3 * inst.num_classes)
    return max(1, max(math.ceil(len(A) * eps) for A in inst.classes))


def dead_end_sigma(inst: TransversalInstance) -> int:
    """Largest sigma for which expansion rules out a failure of the search.

    When some dead set first exceeds half its class it has at least
    floor(|A_r|/2) + 1 vertices, while the next class still has at least
    ceil(|A_{r+1}|/2) - ceil((n-1)/(k+1)) unused ones; an edge between the two
    is impossible, so expansion at the smaller of these sizes forbids failure.
    """
    m, n = inst.num_classes, inst.target_length
    on_path = -(-(n - 1) // m)
    return min(
        min(len(inst.classes[r]) // 2 + 1, -(-len(inst.classes[(r + 1) % m]) // 2) - on_path) for r in range(m)
    )


def qualifying_instances(sigma_rule, count, seed):
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        inst = random_instance(rng, max_order=12)
        sigma = sigma_rule(inst)
        if sigma < 1 or 2 * sigma > inst.host.order:
            continue
        if certify_expansion_exact(inst.host, sigma).verdict != "certified":
            continue
        if transversal_exists(inst.host, inst.classes, inst.target_length):
            found.append(inst)
    return found
