"""Command line front door: ``sizeramsey <subcommand> ...``.

All files use the plain-text formats of ``sizeramsey.io``. Seeded commands
write byte-identical files when re-run with the same arguments.
"""

from __future__ import annotations

import logging
import sys
from fractions import Fraction
from pathlib import Path

import click

from .adversary import ADVERSARY_NAMES, Adversary, color_with
from .cover import SearchExhausted, cover_blue_paths_red_multipartite, find_mono_clique, kst_edge_bound_check
from .dfs import TransversalInstance, find_transversal_path
from .experiment import (
    ExperimentSpec,
    SpecError,
    edge_budget_report,
    format_edge_budget,
    replay_failure,
    run_experiment,
)
from .graph import BlowupMap, Color, Witness, complete_blowup, graph_power, verify_witness
from .host import (
    WORK_BOUND_ENV,
    WorkBoundExceeded,
    certify_expansion_exact,
    certify_expansion_sampled,
    format_certificate,
    paper_constants,
    sample_host,
)
from .io import (
    FormatError,
    read_classes,
    read_coloring,
    read_graph,
    read_witness,
    write_coloring,
    write_cover,
    write_graph,
    write_witness,
)
from .lift import SolveConfig, format_report, solve

existing = click.Path(exists=True, dir_okay=False)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _fraction(ctx, param, value):
    if value is None:
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{value!r} is not a rational number") from None


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except FormatError as exc:
            raise click.ClickException(str(exc)) from None


@click.group(cls=_Group)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool):
    """Size-Ramsey toolkit for powers of paths: hosts, blow-ups, colourings and witnesses."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")


@main.command("constants")
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--epsilon", callback=_fraction, help="Override epsilon (rational, e.g. 1/9).")
@click.option("--a", "a_value", callback=_fraction, help="Override a; must be at least max(6k, a0).")
def constants_cmd(k, epsilon, a_value):
    """Print the exact constants of the construction for a given k."""
    try:
        pc = paper_constants(k, epsilon, a_value)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    for name in ("k", "epsilon", "a0", "a", "c", "b", "s", "t"):
        click.echo(f"{name} {getattr(pc, name)}")
    click.echo(f"local_lemma_product {pc.local_lemma_product()}")


@main.command("gen-host")
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--a", "a_value", callback=_fraction, help="Defaults to the constant a for k.")
@click.option("--c", "c_value", callback=_fraction, help="Edge probability is c/n; defaults to the constant c for k.")
@click.option("--b", "b_value", callback=_fraction, help="Degree bound to check; defaults to the constant b for k.")
@click.option("--epsilon", callback=_fraction)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def gen_host(k, n, a_value, c_value, b_value, epsilon, seed, out):
    """Sample G(2an, c/n), prune to an vertices, and write the host graph."""
    pc = paper_constants(k, epsilon)
    a = a_value if a_value is not None else pc.a
    c = c_value if c_value is not None else pc.c
    b = b_value if b_value is not None else pc.b
    try:
        sample = sample_host(a, n, c, seed=seed)
    except ValueError as exc:
        raise click.ClickException(f"{exc} (pass a smaller --c for desk-scale n)") from None
    write_graph(sample.graph, out)
    ok = "yes" if sample.max_degree <= b else "no"
    click.echo(f"host order={sample.graph.order} edges={sample.graph.num_edges} max_degree={sample.max_degree} b={b} degree_ok={ok}")


@main.command("certify")
@click.option("--graph", "graph_path", type=existing, required=True)
@click.option("--sigma", type=click.IntRange(min=1), required=True)
@click.option("--exact", is_flag=True, help=f"Exhaustive check; bounded by ${WORK_BOUND_ENV}.")
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def certify(graph_path, sigma, exact, trials, seed, out):
    """Check that every two disjoint sigma-sets of the graph span an edge."""
    h = read_graph(graph_path)
    try:
        cert = certify_expansion_exact(h, sigma) if exact else certify_expansion_sampled(h, sigma, trials, seed)
    except (ValueError, WorkBoundExceeded) as exc:
        raise click.ClickException(str(exc)) from None
    _emit(format_certificate(cert), out)


@main.command("power")
@click.option("--graph", "graph_path", type=existing, required=True)
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def power(graph_path, k, out):
    """Write the k-th power of a graph."""
    g = graph_power(read_graph(graph_path), k)
    write_graph(g, out)
    click.echo(f"power order={g.order} edges={g.num_edges}")


@main.command("blowup")
@click.option("--graph", "graph_path", type=existing, required=True)
@click.option("--cluster-size", type=click.IntRange(min=1), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def blowup(graph_path, cluster_size, out):
    """Replace every vertex by a clique and every edge by a complete bipartite graph.

    Vertex x of the output lies in the cluster of base vertex x // cluster-size.
    """
    g, bmap = complete_blowup(read_graph(graph_path), cluster_size)
    write_graph(g, out)
    click.echo(f"blowup order={g.order} edges={g.num_edges} clusters={bmap.base_order}")


@main.command("find-clique")
@click.option("--coloring", "coloring_path", type=existing, required=True)
@click.option("--t", type=click.IntRange(min=1), required=True)
def find_clique(coloring_path, t):
    """Find a monochromatic K_t in a colouring of a complete graph."""
    c = read_coloring(coloring_path)
    try:
        clique = find_mono_clique(c, t)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    if clique is None:
        click.echo("not_found")
    else:
        click.echo(f"clique {clique.color.value} " + " ".join(map(str, clique.vertices)))


@main.command("cover")
@click.option("--coloring", "coloring_path", type=existing, required=True)
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--balanced", is_flag=True, help="Fail unless all classes have the same size.")
def cover(coloring_path, k, out, balanced):
    """Cover a coloured complete graph by k blue paths and k+1 classes joined in red."""
    c = read_coloring(coloring_path)
    try:
        result = cover_blue_paths_red_multipartite(c, k, require_balanced=balanced)
    except SearchExhausted as exc:
        raise click.ClickException(f"search exhausted: {exc}") from None
    write_cover(result, k, out)
    sizes = ",".join(map(str, result.class_sizes))
    click.echo(f"cover paths={len(result.paths)} longest={len(result.longest_path())} class_sizes={sizes}")


@main.command("kst-check")
@click.option("--bipartite", "graph_path", type=existing, required=True, help="2t vertices; 0..t-1 form one side.")
@click.option("--s", type=click.IntRange(min=1), required=True)
def kst_check(graph_path, s):
    """Check that a K_{s,s}-free balanced bipartite graph has at most 4 t^(2-1/s) edges."""
    try:
        ok = kst_edge_bound_check(read_graph(graph_path), s)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    click.echo("holds" if ok else "violated")
    if not ok:
        sys.exit(1)


@main.command("embed-path")
@click.option("--graph", "graph_path", type=existing, required=True)
@click.option("--classes", "classes_path", type=existing, required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--trace", type=click.Path(dir_okay=False), help="Write the decision log here.")
def embed_path(graph_path, classes_path, n, trace):
    """Search for an n-vertex path that cycles through the classes in order."""
    inst = TransversalInstance(read_graph(graph_path), tuple(read_classes(classes_path)), n)
    try:
        outcome = find_transversal_path(inst, trace=trace is not None)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    if trace is not None:
        _emit("".join(f"{kind} {v}\n" for kind, v in outcome.log), trace)
    if outcome.found:
        click.echo("path " + " ".join(map(str, outcome.path)))
    else:
        dead = ",".join(str(len(d)) for d in outcome.state.dead)
        click.echo(f"failure dead_sizes={dead}")


@main.command("color")
@click.option("--graph", "graph_path", type=existing, required=True)
@click.option("--adversary", required=True, help=f"One of {', '.join(ADVERSARY_NAMES)}.")
@click.option("--cluster-size", type=click.IntRange(min=1), help="Treat the graph as a blow-up with this cluster size.")
@click.option("--t", type=click.IntRange(min=2), default=3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def color(graph_path, adversary, cluster_size, t, seed, out):
    """Colour the edges of a graph as the chosen adversary."""
    g = read_graph(graph_path)
    bmap = None
    if cluster_size is not None:
        if g.order % cluster_size:
            raise click.ClickException("graph order is not a multiple of the cluster size")
        bmap = BlowupMap(g.order // cluster_size, cluster_size)
    try:
        c = color_with(Adversary.parse(adversary), g, bmap, seed, t)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    write_coloring(c, out)
    click.echo(f"coloring edges={g.num_edges} blue={c.count(Color.BLUE)} red={c.count(Color.RED)}")


@main.command("solve")
@click.option("--host", "host_path", type=existing, required=True)
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--cluster-size", type=click.IntRange(min=1), required=True)
@click.option("--s", type=click.IntRange(min=1), required=True)
@click.option("--t", type=click.IntRange(min=1), required=True)
@click.option("--coloring", "coloring_path", type=existing, required=True, help="Colouring of the blow-up of the host's k-th power.")
@click.option("--lifter", type=click.Choice(["greedy", "resample"]), default="greedy", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--epsilon", callback=_fraction)
@click.option("--a", "a_value", callback=_fraction, help="Defaults to host order / n.")
@click.option("--report", type=click.Path(dir_okay=False), help="Write the report here instead of stdout.")
@click.option("--witness", "witness_out", type=click.Path(dir_okay=False), help="Write the witness here on success.")
def solve_cmd(host_path, k, n, cluster_size, s, t, coloring_path, lifter, seed, epsilon, a_value, report, witness_out):
    """Find a monochromatic power of a path in a coloured blow-up."""
    h = read_graph(host_path)
    try:
        cfg = SolveConfig(k=k, n=n, s=s, t=t, cluster_size=cluster_size, epsilon=epsilon, a=a_value, lifter=lifter, seed=seed)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    blown, bmap = complete_blowup(graph_power(h, k), cluster_size)
    try:
        c = read_coloring(coloring_path, blown)
    except FormatError as exc:
        raise click.ClickException(f"colouring does not fit the blow-up: {exc}") from None
    result = solve(h, blown, bmap, c, cfg)
    _emit(format_report(result), report)
    if result.witness is not None and witness_out is not None:
        write_witness(result.witness, witness_out)


@main.command("verify")
@click.option("--graph", "graph_path", type=existing, required=True)
@click.option("--coloring", "coloring_path", type=existing, required=True)
@click.option("--witness", "witness_path", type=existing, required=True)
def verify(graph_path, coloring_path, witness_path):
    """Independently check a witness; exits 1 if it is not valid."""
    g = read_graph(graph_path)
    c = read_coloring(coloring_path, g)
    w: Witness = read_witness(witness_path)
    ok = verify_witness(g, c, w)
    click.echo("valid" if ok else "invalid")
    if not ok:
        sys.exit(1)


@main.command("edge-budget")
@click.option("--host", "host_path", type=existing, required=True)
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--cluster-size", type=click.IntRange(min=1), required=True)
def edge_budget(host_path, k, n, cluster_size):
    """Compare the blow-up's edge count with the degree-sum bound that is linear in n."""
    click.echo(format_edge_budget(edge_budget_report(k, n, cluster_size, read_graph(host_path))), nl=False)


@main.command("experiment")
@click.option("--spec", "spec_path", type=existing, help="JSON experiment spec; flags below override it.")
@click.option("--trials", type=click.IntRange(min=0), help="Trials per adversary.")
@click.option("--seed", "master_seed", type=int, help="Master seed.")
@click.option("--adversary", "adversaries", multiple=True, help="Repeatable.")
@click.option("--lifter", type=click.Choice(["greedy", "resample"]))
@click.option("--out", type=click.Path(file_okay=False), required=True, help="Directory for the report and failure dumps.")
@click.option("--replay", type=click.Path(exists=True, file_okay=False), help="Replay one dumped failure instead.")
def experiment(spec_path, trials, master_seed, adversaries, lifter, out, replay):
    """Run a seeded campaign; exits 1 iff some witness failed re-verification."""
    if replay is not None:
        text = replay_failure(replay)
        Path(out).mkdir(parents=True, exist_ok=True)
        _emit(text, str(Path(out) / "replay_report.txt"))
        same = text == (Path(replay) / "report.txt").read_text(encoding="utf-8")
        click.echo("replay identical" if same else "replay differs")
        sys.exit(0 if same else 1)
    try:
        spec = ExperimentSpec.load(spec_path) if spec_path else ExperimentSpec()
        if trials is not None:
            spec.trials = trials
        if master_seed is not None:
            spec.master_seed = master_seed
        if adversaries:
            spec.adversaries = list(adversaries)
        if lifter is not None:
            spec.lifter = lifter
        result = run_experiment(spec, out)
    except SpecError as exc:
        raise click.ClickException(f"invalid spec: {exc}") from None
    summary = result.summary()
    click.echo(" ".join(f"{k}={v}" for k, v in summary.items()))
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
