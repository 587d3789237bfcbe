"""File formats for the CLI: graphs, lattices, formal contexts, point
sets, and the experiment CSV schema.

All readers raise :class:`FormatError` with file and line information;
the CLI maps that to exit code 1.
"""

from __future__ import annotations

import csv
import io as _io
import json
from typing import Optional, Sequence, TextIO, Union

import numpy as np

from .euclid import PointSet
from .experiments import CSV_COLUMNS, CellResult
from .graphs import Graph
from .lattices import FiniteLattice, FormalContext, build_lattice

__all__ = [
    "FormatError",
    "read_graph",
    "write_graph",
    "read_lattice",
    "read_context",
    "read_points",
    "write_points",
    "cells_to_csv",
    "cells_from_csv",
    "separation_record",
    "lattice_separation_record",
]

PathOrFile = Union[str, TextIO]


class FormatError(ValueError):
    def __init__(self, source: str, line: Optional[int], message: str):
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


def _open_lines(src: PathOrFile):
    if isinstance(src, str):
        with open(src, "r", encoding="utf-8") as fh:
            return src, fh.read().splitlines()
    return getattr(src, "name", "<stream>"), src.read().splitlines()


def read_graph(src: PathOrFile) -> Graph:
    """Whitespace edge list: first line "n m", then m lines "u v"
    with 0-indexed vertices."""
    name, lines = _open_lines(src)
    rows = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise FormatError(name, None, "empty graph file")
    lineno, head = rows[0]
    if len(head) != 2:
        raise FormatError(name, lineno, f"expected 'n m' header, got {' '.join(head)!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError(name, lineno, "header values must be integers")
    edges = []
    for lineno, parts in rows[1:]:
        if len(parts) != 2:
            raise FormatError(name, lineno, f"expected 'u v' edge, got {' '.join(parts)!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(name, lineno, "edge endpoints must be integers")
    if len(edges) != m:
        raise FormatError(name, None, f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(name, None, str(exc))


def write_graph(graph: Graph, dst: TextIO) -> None:
    dst.write(f"{graph.n} {graph.m}\n")
    for u, v in graph.edges():
        dst.write(f"{u} {v}\n")


def read_lattice(src: PathOrFile) -> FiniteLattice:
    """Cover-edge list: first line "n", then lines "child parent"."""
    name, lines = _open_lines(src)
    rows = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise FormatError(name, None, "empty lattice file")
    lineno, head = rows[0]
    if len(head) != 1:
        raise FormatError(name, lineno, "expected element count on the first line")
    try:
        n = int(head[0])
    except ValueError:
        raise FormatError(name, lineno, "element count must be an integer")
    edges = []
    for lineno, parts in rows[1:]:
        if len(parts) != 2:
            raise FormatError(name, lineno, "expected 'child parent' cover edge")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(name, lineno, "cover endpoints must be integers")
    try:
        return build_lattice(n, edges)
    except ValueError as exc:
        raise FormatError(name, None, str(exc))


def read_context(src: PathOrFile) -> FormalContext:
    """CSV with a header row of attribute names (first cell ignored)
    and one row per object: name, then 0/1 incidence cells."""
    name, lines = _open_lines(src)
    reader = list(csv.reader(lines))
    reader = [row for row in reader if any(cell.strip() for cell in row)]
    if len(reader) < 2:
        raise FormatError(name, None, "context needs a header and at least one object")
    attributes = [c.strip() for c in reader[0][1:]]
    if not attributes:
        raise FormatError(name, 1, "no attribute columns")
    objects = []
    matrix = []
    for i, row in enumerate(reader[1:], start=2):
        if len(row) != len(attributes) + 1:
            raise FormatError(name, i, f"expected {len(attributes) + 1} cells, got {len(row)}")
        objects.append(row[0].strip())
        try:
            values = [int(c) for c in row[1:]]
        except ValueError:
            raise FormatError(name, i, "incidence cells must be 0 or 1")
        if any(v not in (0, 1) for v in values):
            raise FormatError(name, i, "incidence cells must be 0 or 1")
        matrix.append(values)
    return FormalContext(np.array(matrix), objects=objects, attributes=attributes)


def read_points(src: PathOrFile) -> tuple[PointSet, Optional[np.ndarray]]:
    """Point CSV: header "d", then one point per line with comma
    separated coordinates; an optional trailing label column marks
    experiment instances."""
    name, lines = _open_lines(src)
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise FormatError(name, None, "empty point file")
    lineno, head = rows[0]
    try:
        d = int(head)
    except ValueError:
        raise FormatError(name, lineno, f"expected dimension header, got {head!r}")
    coords = []
    labels = []
    for lineno, line in rows[1:]:
        cells = [c.strip() for c in line.split(",")]
        if len(cells) not in (d, d + 1):
            raise FormatError(name, lineno, f"expected {d} or {d + 1} cells, got {len(cells)}")
        try:
            coords.append([float(c) for c in cells[:d]])
            if len(cells) == d + 1:
                labels.append(int(cells[d]))
        except ValueError:
            raise FormatError(name, lineno, "cells must be numeric")
    if labels and len(labels) != len(coords):
        raise FormatError(name, None, "label column must be present on every row or none")
    pts = PointSet(np.array(coords))
    return pts, (np.array(labels, dtype=np.uint8) if labels else None)


def write_points(points: PointSet, dst: TextIO, labels=None) -> None:
    dst.write(f"{points.dim}\n")
    for i, row in enumerate(points.coords):
        cells = [repr(float(x)) for x in row]
        if labels is not None:
            cells.append(str(int(labels[i])))
        dst.write(",".join(cells) + "\n")


def _cell_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def cells_to_csv(rows: Sequence[CellResult], dst: Optional[TextIO] = None) -> str:
    buf = dst or _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([_cell_value(getattr(r, col)) for col in CSV_COLUMNS])
    return "" if dst else buf.getvalue()


def cells_from_csv(text: str) -> list[CellResult]:
    reader = csv.DictReader(text.splitlines())
    out = []
    for row in reader:
        out.append(
            CellResult(
                experiment=row["experiment"],
                dim_or_size=int(row["dim_or_size"]),
                train_size=int(row["train_size"]),
                trials=int(row["trials"]),
                mean_accuracy=float(row["mean_accuracy"]) if row["mean_accuracy"] else None,
                mean_coverage=float(row["mean_coverage"]) if row["mean_coverage"] else None,
                undefined_count=int(row["undefined_count"]),
                mean_closure_calls=float(row["mean_closure_calls"]),
                seed=int(row["seed"]),
            )
        )
    return out


def separation_record(outcome, ground_labels=None) -> dict:
    """JSON-ready record of a separation outcome."""
    from .core import Separated

    if isinstance(outcome, Separated):
        lab = ground_labels or (lambda e: str(e))
        return {
            "separated": True,
            "h1": [lab(e) for e in outcome.h1.members()],
            "h2": [lab(e) for e in outcome.h2.members()],
            "closure_calls": outcome.closure_calls,
            "partition": outcome.is_partition(),
        }
    return {"separated": False}


def lattice_separation_record(result, lattice: FiniteLattice, full_sets: bool = False) -> dict:
    from .lattices import LatticeSeparated

    if isinstance(result, LatticeSeparated):
        rec = {
            "separated": True,
            "top_ideal": lattice.label(result.top_ideal),
            "bottom_filter": lattice.label(result.bottom_filter),
            "ideal_from": result.ideal_from,
            "le_evaluations": result.le_evaluations,
        }
        ideal = lattice.ideal_of(result.top_ideal)
        filt = lattice.filter_of(result.bottom_filter)
        rec["partition"] = (ideal | filt) == lattice.ground.full()
        if full_sets:
            rec["ideal"] = [lattice.label(e) for e in ideal.members()]
            rec["filter"] = [lattice.label(e) for e in filt.members()]
        return rec
    return {"separated": False, "le_evaluations": result.le_evaluations}


def record_to_json(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True)


def record_to_csv(rec: dict) -> str:
    """One-row CSV of a separation record; list fields are
    space-joined. Round-trips through :func:`record_from_csv`."""
    cols = sorted(rec)
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    writer.writerow(
        [" ".join(v) if isinstance(v, list) else v for v in (rec[c] for c in cols)]
    )
    return buf.getvalue()


def record_from_csv(text: str) -> dict:
    reader = csv.DictReader(text.splitlines())
    row = next(iter(reader))
    out: dict = {}
    for key, val in row.items():
        if key in ("h1", "h2", "ideal", "filter"):
            out[key] = val.split() if val else []
        elif val in ("True", "False"):
            out[key] = val == "True"
        elif val.isdigit():
            out[key] = int(val)
        else:
            out[key] = val
    return out
