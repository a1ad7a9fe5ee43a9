"""Acceptance criteria, one test each; every test records a pass/fail line."""

import random
import time
from fractions import Fraction
from itertools import combinations

from click.testing import CliRunner

from conftest import ACCEPTANCE_LINES
from instances import check_trace, class_fraction_sigma, dead_end_sigma, path_ok, qualifying_instances, random_instance
from oracles import bfs_power_edges, representative_system_exists
from sizeramsey.cli import main
from sizeramsey.cover import (
    SearchExhausted,
    cover_blue_paths_red_multipartite,
    find_mono_clique,
    kst_edge_bound_check,
    verify_cover,
)
from sizeramsey.dfs import find_transversal_path
from sizeramsey.experiment import ExperimentSpec, replay_failure, run_experiment
from sizeramsey.graph import Color, Graph, TwoColoring, complete_blowup, complete_graph, graph_power, verify_witness
from sizeramsey.host import paper_constants
from sizeramsey.lift import lift_red_greedy, lift_red_resample
from synthetic import kss_free_red_instance

B, R = Color.BLUE, Color.RED


def record(number: int, ok: bool, elapsed: float, limit: float, detail: str) -> None:
    ok = ok and elapsed < limit
    verdict = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {number}: {verdict} {detail} ({elapsed:.1f}s, limit {limit:.0f}s)")
    assert ok, ACCEPTANCE_LINES[-1]


def random_graph(rng, max_order):
    order = rng.randint(0, max_order)
    p = rng.choice([0.05, 0.1, 0.2, 0.4, 0.7])
    return Graph(order, [(u, v) for u in range(order) for v in range(u + 1, order) if rng.random() < p])


def test_criterion_1_power_oracle():
    start, rng, bad = time.perf_counter(), random.Random(1), 0
    for _ in range(200):
        g, k = random_graph(rng, 40), rng.randint(1, 5)
        bad += set(graph_power(g, k).edges()) != bfs_power_edges(g, k)
    record(1, bad == 0, time.perf_counter() - start, 10, f"graph_power vs BFS on 200 graphs, mismatches={bad}")


def test_criterion_2_blowup_arithmetic():
    start, rng, bad = time.perf_counter(), random.Random(2), 0
    for _ in range(100):
        g, r = random_graph(rng, 30), rng.randint(1, 6)
        e = complete_blowup(g, r)[0].num_edges
        bad += e != r * r * g.num_edges + g.order * r * (r - 1) // 2
        # the order of g plays the role of an
        bad += e > r * r * g.num_edges + r * r * g.order
    record(2, bad == 0, time.perf_counter() - start, 5, f"blow-up edge count on 100 instances, mismatches={bad}")


def test_criterion_3_constants():
    start, bad = time.perf_counter(), []
    for k in range(1, 7):
        pc = paper_constants(k)
        eps = Fraction(1, 3 * (k + 1))
        a0 = 2 + 4 / (eps * (k + 1))
        a = max(Fraction(6 * k), a0)
        c = 4 * a / eps**2
        expected = (eps, a0, a, c, 4 * a * c, 2 * k, (64 * k) ** (2 * k))
        if (pc.epsilon, pc.a0, pc.a, pc.c, pc.b, pc.s, pc.t) != expected:
            bad.append(k)
        # 64k * t^(-1/s) == 1 exactly: t is the s-th power of 64k
        if pc.local_lemma_product() != 1 or (64 * k) ** pc.s != pc.t:
            bad.append(k)
    pc = paper_constants(2)
    frozen = (pc.a0, pc.a, pc.c, pc.b, pc.t) == (14, 14, 4536, 254016, 268435456)
    record(3, not bad and frozen, time.perf_counter() - start, 1, f"constants for k=1..6, bad k={bad}, k=2 frozen values {'match' if frozen else 'differ'}")


def test_criterion_4_ramsey_k6():
    start = time.perf_counter()
    k6, k5 = complete_graph(6), complete_graph(5)
    edges = list(k6.edges())
    missing = 0
    for mask in range(1 << 15):
        c = TwoColoring(k6, {e: B if mask >> i & 1 else R for i, e in enumerate(edges)})
        clique = find_mono_clique(c, 3)
        if clique is None or not all(c.get(x, y) is clique.color for x, y in combinations(clique.vertices, 2)):
            missing += 1
    ring = {tuple(sorted((i, (i + 1) % 5))) for i in range(5)}
    pentagon = TwoColoring.from_function(k5, lambda u, v: R if (u, v) in ring else B)
    pent_ok = find_mono_clique(pentagon, 3) is None
    record(4, missing == 0 and pent_ok, time.perf_counter() - start, 60,
           f"2^15 colourings of K_6 without triangle={missing}, pentagon not_found={pent_ok}")


def test_criterion_5_transversal_search():
    start, rng = time.perf_counter(), random.Random(5)
    bad_paths = bad_traces = 0
    for _ in range(1000):
        inst = random_instance(rng)
        out = find_transversal_path(inst, trace=True)
        if out.found and not path_ok(inst, out.path):
            bad_paths += 1
        try:
            check_trace(inst, out)
        except AssertionError:
            bad_traces += 1
    missed = {}
    for rule in (class_fraction_sigma, dead_end_sigma):
        missed[rule.__name__] = sum(not find_transversal_path(i).found for i in qualifying_instances(rule, 150, seed=55))
    ok = bad_paths == bad_traces == 0 and not any(missed.values())
    record(5, ok, time.perf_counter() - start, 120,
           f"1000 instances: bad paths={bad_paths}, bad traces={bad_traces}; failures on certified solvable instances {missed}")


def test_criterion_6_cover():
    start, rng = time.perf_counter(), random.Random(6)
    exhausted_small = exhausted_large = bad = 0
    for _ in range(500):
        n, k, p = rng.randint(1, 24), rng.randint(1, 3), rng.random()
        c = TwoColoring.from_function(complete_graph(n), lambda u, v: B if rng.random() < p else R)
        try:
            cover = cover_blue_paths_red_multipartite(c, k)
        except SearchExhausted:
            if n <= 15:
                exhausted_small += 1
            else:
                exhausted_large += 1
            continue
        bad += not verify_cover(c, k, cover)
    record(6, bad == 0 and exhausted_small == 0, time.perf_counter() - start, 300,
           f"500 covers: invalid={bad}, exhausted n<=15: {exhausted_small}, exhausted n>15: {exhausted_large}")


def kss_free_bipartite(rng, t, s):
    """Random balanced bipartite graph kept free of K_{s,s} edge by edge."""
    nbr = {v: set() for v in range(2 * t)}
    pairs = [(i, t + j) for i in range(t) for j in range(t)]
    rng.shuffle(pairs)
    for x, y in pairs:
        # adding xy closes a K_{s,s} iff s-1 more left and right vertices complete it
        closes = any(
            all(b in nbr[a] for a in L for b in Rr)
            for L in combinations(sorted(nbr[y]), s - 1)
            for Rr in combinations(sorted(nbr[x]), s - 1)
            if all(b in nbr[x] for b in Rr) and all(a in nbr[y] for a in L)
        ) if s > 1 else True
        if not closes:
            nbr[x].add(y)
            nbr[y].add(x)
    return Graph(2 * t, [(x, y) for x in range(t) for y in nbr[x]])


def test_criterion_7_kst():
    start, rng = time.perf_counter(), random.Random(7)
    violated = free = 0
    for i in range(1000):
        t, s = rng.randint(1, 16), rng.randint(1, 3)
        if i % 2:
            g = kss_free_bipartite(rng, t, s)
            free += 1
        else:
            p = rng.random()
            g = Graph(2 * t, [(x, t + y) for x in range(t) for y in range(t) if rng.random() < p])
        violated += not kst_edge_bound_check(g, s)
    record(7, violated == 0, time.perf_counter() - start, 60,
           f"1000 bipartite instances ({free} maximal K_s,s-free), counterexamples={violated}")


def test_criterion_8_end_to_end(tmp_path):
    start = time.perf_counter()
    spec = ExperimentSpec(k=2, n=5, cluster_size=6, s=2, t=3, trials=40, master_seed=8)
    result = run_experiment(spec, tmp_path)
    summary = result.summary()
    hosts_ok = all(tr.host_order <= 600 for tr in result.trials)
    # run_trial re-checks every witness against the colouring with verify_witness
    verified_all = all(tr.verified is True for tr in result.trials if tr.report.witness is not None)
    replays = [tr for tr in result.trials if tr.report.witness is None]
    identical = sum(replay_failure(tr.dump) == tr.report_text for tr in replays)
    ok = (summary["trials"] >= 200 and hosts_ok and verified_all and result.verify_failures == 0
          and summary["blue"] > 0 and summary["red"] > 0 and identical == len(replays))
    record(8, ok, time.perf_counter() - start, 900,
           f"{summary['trials']} trials: witnesses={summary['witnesses']} (B={summary['blue']}, R={summary['red']}), "
           f"verified={'all' if verified_all else 'NOT all'}, failures replayed identically {identical}/{len(replays)}")


def test_criterion_9_lifters():
    start, rng = time.perf_counter(), random.Random(9)
    bad_witness = greedy_wrong = resample_missed = feasible = 0
    for i in range(100):
        n, k, t = rng.randint(2, 6), rng.randint(1, 2), rng.randint(2, 4)
        blown, coloring, cliques, path = kss_free_red_instance(n, k, t, 2, rng.uniform(0, 0.6), seed=i)
        cands = [sorted(cliques[x].vertices) for x in path]
        exists = representative_system_exists(cands, coloring, k)
        feasible += exists
        greedy = lift_red_greedy(path, coloring, cliques, 2, k)
        res = lift_red_resample(path, coloring, cliques, 2, k, seed=i, max_rounds=100_000)
        for out in (greedy, res):
            if out.witness is not None and not verify_witness(blown, coloring, out.witness):
                bad_witness += 1
        greedy_wrong += (greedy.witness is not None) != exists
        resample_missed += exists and res.witness is None
    ok = bad_witness == greedy_wrong == resample_missed == 0
    record(9, ok, time.perf_counter() - start, 300,
           f"100 instances ({feasible} with a representative system): invalid witnesses={bad_witness}, "
           f"greedy disagrees with oracle={greedy_wrong}, resample missed={resample_missed}")


def test_criterion_10_determinism(tmp_path, monkeypatch):
    start = time.perf_counter()
    monkeypatch.chdir(tmp_path)
    runner = CliRunner()

    def call(*args):
        result = runner.invoke(main, [str(a) for a in args])
        assert result.exit_code in (0, 1), result.output

    call("gen-host", "--k", 2, "--n", 5, "--c", "1/2", "--seed", 10, "--out", "h.txt")
    call("power", "--graph", "h.txt", "--k", 2, "--out", "h2.txt")
    call("blowup", "--graph", "h2.txt", "--cluster-size", 6, "--out", "g.txt")
    commands = {
        "gen-host": lambda o: ["gen-host", "--k", 2, "--n", 5, "--c", "1/2", "--seed", 10, "--out", o],
        "color": lambda o: ["color", "--graph", "g.txt", "--adversary", "anticlique", "--cluster-size", 6, "--seed", 10, "--out", o],
        "solve": lambda o: ["solve", "--host", "h.txt", "--k", 2, "--n", 5, "--cluster-size", 6, "--s", 2, "--t", 3,
                            "--coloring", "color.1", "--lifter", "resample", "--seed", 10, "--report", o],
        "experiment": lambda o: ["experiment", "--trials", 4, "--seed", 10, "--out", o],
    }
    differing = []
    for name, args in commands.items():
        call(*args(f"{name}.1"))
        call(*args(f"{name}.2"))
        a, b = tmp_path / f"{name}.1", tmp_path / f"{name}.2"
        if a.is_dir():
            files_a = sorted(p.relative_to(a) for p in a.rglob("*") if p.is_file())
            files_b = sorted(p.relative_to(b) for p in b.rglob("*") if p.is_file())
            same = files_a == files_b and all((a / f).read_bytes() == (b / f).read_bytes() for f in files_a)
        else:
            same = a.read_bytes() == b.read_bytes()
        if not same:
            differing.append(name)
    record(10, not differing, time.perf_counter() - start, 60,
           f"seeded gen-host, color, solve, experiment re-run byte-identical; differing={differing}")
