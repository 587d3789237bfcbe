"""Command-line interface.

Exit codes: 0 for a completed run (including diagnostics that report a
violated property), 2 for negative separation answers (inseparable
inputs), 1 for malformed input or other errors.
"""

from __future__ import annotations

import sys

import click

from . import io as mio
from .core import Inseparable, mcs_separate, verify_closure_laws
from .euclid import AlphaClosure
from .graphs import GammaClosure, pasch_check
from .lattices import (
    LambdaClosure,
    LatticeNo,
    concept_lattice,
    is_distributive,
    lattice_separate,
    object_concept,
)
from .oracles import brute_force_kakutani

EXIT_NEGATIVE = 2


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _parse_ids(text: str) -> list[str]:
    items = [part.strip() for part in text.split(",") if part.strip()]
    if not items:
        _fail(f"empty element list {text!r}")
    return items


@click.group()
def main():
    """Half-space and maximal closed-set separation toolkit."""


@main.command("separate-graph")
@click.option("--graph", "graph_file", required=True, type=click.Path(exists=True))
@click.option("--a", "a_spec", required=True, help="comma-separated vertex ids")
@click.option("--b", "b_spec", required=True, help="comma-separated vertex ids")
@click.option("--order", type=click.Choice(["asc", "random"]), default="asc")
@click.option("--seed", type=int, default=0)
@click.option("--format", "fmt", type=click.Choice(["table", "csv", "json"]), default="table")
def separate_graph(graph_file, a_spec, b_spec, order, seed, fmt):
    """Maximal geodesically-closed separation of two vertex sets."""
    try:
        graph = mio.read_graph(graph_file)
        op = GammaClosure(graph)
        a = op.ground.set_of(int(x) for x in _parse_ids(a_spec))
        b = op.ground.set_of(int(x) for x in _parse_ids(b_spec))
        outcome = mcs_separate(op, a, b, order=order, seed=seed)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    rec = mio.separation_record(outcome)
    if fmt == "json":
        click.echo(mio.record_to_json(rec))
    elif fmt == "csv":
        click.echo(mio.record_to_csv(rec), nl=False)
    elif isinstance(outcome, Inseparable):
        click.echo("inseparable: closures intersect")
    else:
        click.echo(f"H1: {','.join(map(str, outcome.h1.members()))}")
        click.echo(f"H2: {','.join(map(str, outcome.h2.members()))}")
        click.echo(f"closure calls: {outcome.closure_calls}")
        click.echo(f"partition: {str(outcome.is_partition()).lower()}")
    if isinstance(outcome, Inseparable):
        sys.exit(EXIT_NEGATIVE)


@main.command("separate-lattice")
@click.option("--lattice", "lattice_file", type=click.Path(exists=True))
@click.option("--context", "context_file", type=click.Path(exists=True))
@click.option("--a", "a_spec", required=True,
              help="element ids (lattice) or object names (context)")
@click.option("--b", "b_spec", required=True)
@click.option("--order", type=click.Choice(["asc", "random"]), default="asc")
@click.option("--seed", type=int, default=0)
@click.option("--full", is_flag=True, help="include full ideal/filter element lists")
@click.option("--format", "fmt", type=click.Choice(["table", "csv", "json"]), default="table")
def separate_lattice(lattice_file, context_file, a_spec, b_spec, order, seed, full, fmt):
    """Maximal ideal/filter separation in a lattice or concept lattice."""
    if bool(lattice_file) == bool(context_file):
        _fail("provide exactly one of --lattice or --context")
    try:
        if context_file:
            ctx = mio.read_context(context_file)
            lattice, concepts = concept_lattice(ctx)
            a = [object_concept(lattice, concepts, _parse_ids(a_spec))]
            b = [object_concept(lattice, concepts, _parse_ids(b_spec))]
        else:
            lattice = mio.read_lattice(lattice_file)
            a = [int(x) for x in _parse_ids(a_spec)]
            b = [int(x) for x in _parse_ids(b_spec)]
        result = lattice_separate(lattice, a, b, choice=order, seed=seed)
    except (ValueError, KeyError, OSError) as exc:
        _fail(str(exc))
    rec = mio.lattice_separation_record(result, lattice, full_sets=full)
    if fmt == "json":
        click.echo(mio.record_to_json(rec))
    elif fmt == "csv":
        click.echo(mio.record_to_csv(rec), nl=False)
    elif isinstance(result, LatticeNo):
        click.echo("no: interval closures intersect")
    else:
        click.echo(f"ideal top: {lattice.label(result.top_ideal)}")
        click.echo(f"filter bottom: {lattice.label(result.bottom_filter)}")
        click.echo(f"ideal holds input: {result.ideal_from}")
        click.echo(f"order comparisons: {result.le_evaluations}")
        click.echo(f"partition: {str(rec['partition']).lower()}")
        if full:
            click.echo("ideal: " + ",".join(rec["ideal"]))
            click.echo("filter: " + ",".join(rec["filter"]))
    if isinstance(result, LatticeNo):
        sys.exit(EXIT_NEGATIVE)


@main.command("pasch")
@click.option("--graph", "graph_file", required=True, type=click.Path(exists=True))
@click.option("--max-n", type=int, default=60)
def pasch(graph_file, max_n):
    """Check the Pasch axiom for the geodesic closure of a graph."""
    try:
        graph = mio.read_graph(graph_file)
        result = pasch_check(graph, max_n=max_n)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    if result.holds:
        click.echo("Pasch: holds")
    else:
        u, v, w, x, y = result.witness
        click.echo(f"Pasch: violated (u={u} v={v} w={w} x={x} y={y})")


@main.command("kakutani")
@click.option("--graph", "graph_file", type=click.Path(exists=True))
@click.option("--lattice", "lattice_file", type=click.Path(exists=True))
@click.option("--context", "context_file", type=click.Path(exists=True))
@click.option("--brute", is_flag=True,
              help="confirm with the exhaustive oracle (tiny inputs only)")
@click.option("--max-n", type=int, default=60)
def kakutani(graph_file, lattice_file, context_file, brute, max_n):
    """Kakutani diagnosis: Pasch scan for graphs, distributivity for
    lattices, optional exhaustive confirmation."""
    given = [f for f in (graph_file, lattice_file, context_file) if f]
    if len(given) != 1:
        _fail("provide exactly one of --graph, --lattice, --context")
    try:
        if graph_file:
            graph = mio.read_graph(graph_file)
            verdict = pasch_check(graph, max_n=max_n).holds
            via = "pasch"
            op = GammaClosure(graph) if brute else None
        else:
            if lattice_file:
                lattice = mio.read_lattice(lattice_file)
            else:
                lattice, _ = concept_lattice(mio.read_context(context_file))
            verdict = is_distributive(lattice)
            via = "distributivity"
            op = LambdaClosure(lattice) if brute else None
        click.echo(f"kakutani: {str(verdict).lower()} (via {via})")
        if brute:
            oracle = brute_force_kakutani(op)
            click.echo(f"oracle: {str(oracle.kakutani).lower()}")
            if oracle.kakutani != verdict:
                _fail("oracle disagrees with the structural criterion")
    except (ValueError, OSError) as exc:
        _fail(str(exc))


@main.command("fca")
@click.option("--context", "context_file", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def fca(context_file, fmt):
    """Enumerate the concepts of a formal context."""
    try:
        ctx = mio.read_context(context_file)
        lattice, concepts = concept_lattice(ctx)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    if fmt == "json":
        rec = {
            "elements": lattice.n,
            "concepts": [
                {"extent": list(e), "intent": list(i)} for e, i in concepts
            ],
        }
        click.echo(mio.record_to_json(rec))
    else:
        click.echo(f"concept lattice with {lattice.n} elements")
        for e, i in concepts:
            click.echo("({}, {})".format("".join(e) or "{}", "".join(i) or "{}"))


@main.command("laws")
@click.option("--graph", "graph_file", type=click.Path(exists=True))
@click.option("--points", "points_file", type=click.Path(exists=True))
@click.option("--lattice", "lattice_file", type=click.Path(exists=True))
@click.option("--context", "context_file", type=click.Path(exists=True))
@click.option("--trials", type=int, default=200)
@click.option("--seed", type=int, default=0)
def laws(graph_file, points_file, lattice_file, context_file, trials, seed):
    """Spot-check the closure laws of the operator behind an input."""
    given = [f for f in (graph_file, points_file, lattice_file, context_file) if f]
    if len(given) != 1:
        _fail("provide exactly one input file option")
    try:
        if graph_file:
            op = GammaClosure(mio.read_graph(graph_file))
        elif points_file:
            pts, _ = mio.read_points(points_file)
            op = AlphaClosure(pts)
        elif lattice_file:
            op = LambdaClosure(mio.read_lattice(lattice_file))
        else:
            lattice, _ = concept_lattice(mio.read_context(context_file))
            op = LambdaClosure(lattice)
        report = verify_closure_laws(op, trials=trials, seed=seed)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    if report.ok():
        click.echo(f"laws: pass ({trials} trials)")
    else:
        click.echo("laws: FAIL")
        for line in report.failures():
            click.echo("  " + line)


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


@main.command("experiment-d1")
@click.option("--sizes", default="100,200,500,1000")
@click.option("--train-sizes", default="10,20,40,80")
@click.option("--trees", type=int, default=10)
@click.option("--trainsets", type=int, default=10)
@click.option("--seed", type=int, default=0)
@click.option("--jobs", type=int, default=1)
@click.option("--out", type=click.Path(), default=None)
def experiment_d1(sizes, train_sizes, trees, trainsets, seed, jobs, out):
    """Tree vertex classification study; emits the aggregated CSV."""
    from .experiments import run_d1

    try:
        rows = run_d1(
            _parse_int_list(sizes),
            _parse_int_list(train_sizes),
            trees_per_size=trees,
            trainsets_per_tree=trainsets,
            seed=seed,
            jobs=jobs,
        )
    except ValueError as exc:
        _fail(str(exc))
    _emit_csv(rows, out)


@main.command("experiment-d2")
@click.option("--dims", default="2,3,4")
@click.option("--train-sizes", default="10,20,50,100")
@click.option("--instances", type=int, default=50)
@click.option("--n-per-class", type=int, default=200)
@click.option("--margin", type=float, default=0.05)
@click.option("--seed", type=int, default=0)
@click.option("--jobs", type=int, default=1)
@click.option("--out", type=click.Path(), default=None)
def experiment_d2(dims, train_sizes, instances, n_per_class, margin, seed, jobs, out):
    """Point classification study; emits the aggregated CSV."""
    from .experiments import run_d2

    try:
        rows = run_d2(
            _parse_int_list(dims),
            _parse_int_list(train_sizes),
            instances_per_dim=instances,
            n_per_class=n_per_class,
            margin=margin,
            seed=seed,
            jobs=jobs,
        )
    except ValueError as exc:
        _fail(str(exc))
    _emit_csv(rows, out)


def _emit_csv(rows, out):
    text = mio.cells_to_csv(rows)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(f"wrote {len(rows)} rows to {out}")
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
