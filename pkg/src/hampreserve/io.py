"""Reading and writing graphs.

Two formats are understood on input:

* edge list: first data line ``n m``, then ``m`` lines ``u v`` (0-indexed);
* DIMACS: ``p edge n m`` followed by ``e u v`` lines (1-indexed).

Lines starting with ``#`` (edge list) or ``c`` (DIMACS) are comments.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, TextIO

from .errors import ParseError
from .graph import Graph


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def _parse_dimacs(lines: list[tuple[int, str]]) -> Graph:
    n = None
    expected = 0
    edges: list[tuple[int, int]] = []
    for lineno, line in lines:
        tok = line.split()
        if tok[0] == "c":
            continue
        if tok[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise ParseError("problem line must be 'p edge n m'", lineno)
            n, expected = _int(tok[2], lineno), _int(tok[3], lineno)
        elif tok[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(tok) != 3:
                raise ParseError("edge line must be 'e u v'", lineno)
            u, v = _int(tok[1], lineno) - 1, _int(tok[2], lineno) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if u == v:
                raise ParseError("self-loop", lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown DIMACS line type {tok[0]!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    # DIMACS files in the wild often list each edge twice
    distinct = {(min(u, v), max(u, v)) for u, v in edges}
    if len(edges) != expected and len(distinct) != expected:
        raise ParseError(f"header declares {expected} edges, found {len(edges)}")
    return Graph.from_edges(n, sorted(distinct))


def _parse_edge_list(lines: list[tuple[int, str]]) -> Graph:
    head_no, head = lines[0]
    tok = head.split()
    if len(tok) != 2:
        raise ParseError("header must be 'n m'", head_no)
    n, m = _int(tok[0], head_no), _int(tok[1], head_no)
    if n < 0 or m < 0:
        raise ParseError("negative size in header", head_no)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges, found {len(body)}",
                         body[-1][0] if body else head_no)
    seen = set()
    for lineno, line in body:
        tok = line.split()
        if len(tok) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        u, v = _int(tok[0], lineno), _int(tok[1], lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError("self-loop", lineno)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
    return Graph.from_edges(n, sorted(seen))


def parse_graph(text: str) -> Graph:
    """Parse either format; DIMACS is detected by a ``p`` line."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((lineno, line))
    if not lines:
        raise ParseError("empty input")
    if any(line.split()[0] in ("p", "e", "c") for _, line in lines):
        return _parse_dimacs(lines)
    return _parse_edge_list(lines)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def format_edge_list(G: Graph, header: Iterable[str] = ()) -> str:
    out = [f"# {h}" for h in header]
    out.append(f"{G.n} {G.m}")
    out.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def write_edge_list(G: Graph, dest: str | Path | TextIO, header: Iterable[str] = ()) -> None:
    text = format_edge_list(G, header)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)
