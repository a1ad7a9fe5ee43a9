"""Plain-text file formats.

Graph::

    graph <order> <edge_count>
    u v            # one edge per line, 0-indexed, u < v

Colouring::

    coloring <edge_count>
    u v R|B

Witness::

    witness <R|B> <k> <length>
    x_1
    ...

Classes: one line per class, space-separated vertex ids (a blank line is an empty class).

Cover::

    cover <k>
    path x_1 x_2 ...     # at most k lines
    class v ...          # exactly k+1 lines, possibly with no ids

``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterator, Sequence

from .cover import PartitionCover
from .graph import Color, Graph, TwoColoring, Witness, edge_key

__all__ = [
    "FormatError",
    "read_graph",
    "write_graph",
    "read_coloring",
    "write_coloring",
    "read_witness",
    "write_witness",
    "read_classes",
    "write_classes",
    "format_graph",
    "format_coloring",
    "format_witness",
    "read_cover",
    "write_cover",
    "format_cover",
]

PathLike = str | os.PathLike


class FormatError(ValueError):
    def __init__(self, path: PathLike, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line


def _records(path: PathLike) -> Iterator[tuple[int, list[str]]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            fields = raw.split("#", 1)[0].split()
            if fields:
                yield lineno, fields


def _int(path: PathLike, lineno: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(path, lineno, f"expected an integer, got {token!r}") from None


def _write(path: PathLike, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def format_graph(g: Graph) -> str:
    lines = [f"graph {g.order} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path: PathLike) -> None:
    _write(path, format_graph(g))


def read_graph(path: PathLike) -> Graph:
    records = _records(path)
    header = next(records, None)
    if header is None:
        raise FormatError(path, 1, "empty graph file")
    lineno, fields = header
    if len(fields) != 3 or fields[0] != "graph":
        raise FormatError(path, lineno, "header must be 'graph <order> <edge_count>'")
    order, count = _int(path, lineno, fields[1]), _int(path, lineno, fields[2])
    edges: set[tuple[int, int]] = set()
    for lineno, fields in records:
        if len(fields) != 2:
            raise FormatError(path, lineno, "expected 'u v'")
        u, v = _int(path, lineno, fields[0]), _int(path, lineno, fields[1])
        if not (0 <= u < order and 0 <= v < order):
            raise FormatError(path, lineno, f"edge {u} {v} references an unknown vertex")
        if u == v:
            raise FormatError(path, lineno, f"self-loop at {u}")
        edges.add(edge_key(u, v))
    if len(edges) != count:
        raise FormatError(path, 1, f"header announces {count} edges, found {len(edges)}")
    return Graph(order, edges)


def format_coloring(c: TwoColoring) -> str:
    lines = [f"coloring {c.host.num_edges}"]
    lines.extend(f"{u} {v} {col.value}" for (u, v), col in c.items())
    return "\n".join(lines) + "\n"


def write_coloring(c: TwoColoring, path: PathLike) -> None:
    _write(path, format_coloring(c))


def read_coloring(path: PathLike, g: Graph | None = None) -> TwoColoring:
    """Read a colouring of ``g``.

    Without ``g`` the host is taken to be the graph spanned by the listed
    edges on ``max id + 1`` vertices.
    """
    records = _records(path)
    header = next(records, None)
    if header is None:
        raise FormatError(path, 1, "empty coloring file")
    lineno, fields = header
    if len(fields) != 2 or fields[0] != "coloring":
        raise FormatError(path, lineno, "header must be 'coloring <edge_count>'")
    count = _int(path, lineno, fields[1])
    table: dict[tuple[int, int], Color] = {}
    for lineno, fields in records:
        if len(fields) != 3:
            raise FormatError(path, lineno, "expected 'u v R|B'")
        u, v = _int(path, lineno, fields[0]), _int(path, lineno, fields[1])
        try:
            col = Color.parse(fields[2])
        except ValueError as exc:
            raise FormatError(path, lineno, str(exc)) from None
        if g is not None and not g.has_edge(u, v):
            raise FormatError(path, lineno, f"{u} {v} is not an edge of the host")
        if u == v or u < 0 or v < 0:
            raise FormatError(path, lineno, f"invalid edge {u} {v}")
        table[edge_key(u, v)] = col
    if len(table) != count:
        raise FormatError(path, 1, f"header announces {count} edges, found {len(table)}")
    if g is None:
        order = 1 + max((v for _, v in table), default=-1)
        g = Graph(order, table)
    if len(table) != g.num_edges:
        missing = next(e for e in g.edges() if e not in table)
        raise FormatError(path, 1, f"coloring is not total: edge {missing[0]} {missing[1]} missing")
    return TwoColoring(g, table)


def format_witness(w: Witness) -> str:
    lines = [f"witness {w.color.value} {w.power} {len(w.vertices)}"]
    lines.extend(str(x) for x in w.vertices)
    return "\n".join(lines) + "\n"


def write_witness(w: Witness, path: PathLike) -> None:
    _write(path, format_witness(w))


def read_witness(path: PathLike) -> Witness:
    records = _records(path)
    header = next(records, None)
    if header is None:
        raise FormatError(path, 1, "empty witness file")
    lineno, fields = header
    if len(fields) != 4 or fields[0] != "witness":
        raise FormatError(path, lineno, "header must be 'witness <color> <k> <length>'")
    try:
        color = Color.parse(fields[1])
    except ValueError as exc:
        raise FormatError(path, lineno, str(exc)) from None
    k, length = _int(path, lineno, fields[2]), _int(path, lineno, fields[3])
    seq = []
    for lineno, fields in records:
        if len(fields) != 1:
            raise FormatError(path, lineno, "expected one vertex id per line")
        seq.append(_int(path, lineno, fields[0]))
    if len(seq) != length:
        raise FormatError(path, 1, f"header announces {length} vertices, found {len(seq)}")
    return Witness(color, tuple(seq), k)


def read_classes(path: PathLike) -> list[frozenset[int]]:
    classes = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            body = raw.split("#", 1)[0]
            if not body.strip() and "#" in raw:
                continue
            classes.append(frozenset(_int(path, lineno, tok) for tok in body.split()))
    while classes and not classes[-1]:
        classes.pop()
    return classes


def write_classes(classes: Sequence[frozenset[int] | set[int]], path: PathLike) -> None:
    _write(path, "".join(" ".join(map(str, sorted(c))) + "\n" for c in classes))


def format_cover(cover: PartitionCover, k: int) -> str:
    lines = [f"cover {k}"]
    lines.extend(("path " + " ".join(map(str, p))).rstrip() for p in cover.paths)
    lines.extend(("class " + " ".join(map(str, sorted(c)))).rstrip() for c in cover.classes)
    return "\n".join(lines) + "\n"


def write_cover(cover: PartitionCover, k: int, path: PathLike) -> None:
    _write(path, format_cover(cover, k))


def read_cover(path: PathLike) -> tuple[PartitionCover, int]:
    records = _records(path)
    header = next(records, None)
    if header is None or len(header[1]) != 2 or header[1][0] != "cover":
        raise FormatError(path, header[0] if header else 1, "header must be 'cover <k>'")
    k = _int(path, header[0], header[1][1])
    paths, classes = [], []
    for lineno, fields in records:
        ids = tuple(_int(path, lineno, tok) for tok in fields[1:])
        if fields[0] == "path":
            paths.append(ids)
        elif fields[0] == "class":
            classes.append(frozenset(ids))
        else:
            raise FormatError(path, lineno, "expected a 'path' or 'class' line")
    return PartitionCover(tuple(paths), tuple(classes)), k
