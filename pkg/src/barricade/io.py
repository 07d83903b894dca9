"""Plain-text edge-list and barricade files."""
from __future__ import annotations

import re
from typing import IO, Iterable

import numpy as np

from .graph import Graph, GraphValidationError


class ParseError(ValueError):
    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line.rstrip()!r}")
        self.lineno = lineno


_NODES_HEADER = re.compile(r"#\s*nodes\s+(\d+)")


def _records(stream: Iterable[str], header: dict | None = None):
    for lineno, line in enumerate(stream, start=1):
        body = line.strip()
        if not body or body.startswith("#") or body.startswith("%"):
            m = _NODES_HEADER.match(body)
            if m and header is not None:
                header["nodes"] = int(m.group(1))
            continue
        yield lineno, line, body.split()


def _node_id(tok: str, lineno: int, line: str) -> int:
    try:
        u = int(tok)
    except ValueError:
        raise ParseError(lineno, line, f"bad node id {tok!r}") from None
    if u < 0:
        raise ParseError(lineno, line, "negative node id")
    return u


def load_edge_list(stream: IO[str] | Iterable[str], default_barricade: float = 1.0) -> Graph:
    """Read ``u v [w]`` lines. Node count is ``1 + max id``; duplicates are an error.

    A ``# nodes N`` comment raises the node count to at least ``N`` so isolated
    trailing nodes survive a write/read round trip.
    """
    if default_barricade < 0:
        raise GraphValidationError("default_barricade must be non-negative")
    src, dst, w = [], [], []
    seen = set()
    header: dict = {}
    for lineno, line, tok in _records(stream, header):
        if len(tok) not in (2, 3):
            raise ParseError(lineno, line, "expected 'u v [w]'")
        u = _node_id(tok[0], lineno, line)
        v = _node_id(tok[1], lineno, line)
        try:
            wt = float(tok[2]) if len(tok) == 3 else 1.0
        except ValueError:
            raise ParseError(lineno, line, f"bad weight {tok[2]!r}") from None
        if not wt > 0 or not np.isfinite(wt):
            raise GraphValidationError(f"line {lineno}: weight must be positive, got {wt}")
        if u == v:
            raise GraphValidationError(f"line {lineno}: self-loop {u}->{v}")
        if (u, v) in seen:
            raise GraphValidationError(f"line {lineno}: duplicate edge {u}->{v}")
        seen.add((u, v))
        src.append(u)
        dst.append(v)
        w.append(wt)
    n = 1 + max(max(src), max(dst)) if src else 0
    n = max(n, header.get("nodes", 0))
    return Graph(n, src, dst, w, np.full(n, float(default_barricade)))


def load_barricades(graph: Graph, stream: IO[str] | Iterable[str]) -> Graph:
    """Overwrite barricades from ``u b`` lines; unlisted nodes keep their values."""
    b = graph.barricades.copy()
    for lineno, line, tok in _records(stream):
        if len(tok) != 2:
            raise ParseError(lineno, line, "expected 'u b'")
        u = _node_id(tok[0], lineno, line)
        try:
            val = float(tok[1])
        except ValueError:
            raise ParseError(lineno, line, f"bad barricade {tok[1]!r}") from None
        if u >= graph.node_count:
            raise GraphValidationError(f"line {lineno}: unknown node {u}")
        if not val >= 0 or not np.isfinite(val):
            raise GraphValidationError(f"line {lineno}: barricade must be non-negative, got {val}")
        b[u] = val
    return graph.with_barricades(b)


def write_edge_list(graph: Graph, stream: IO[str]) -> None:
    # repr keeps floats round-trippable
    stream.write(f"# nodes {graph.node_count} edges {graph.edge_count}\n")
    for u, v, w in graph.edges():
        stream.write(f"{u} {v} {w!r}\n")


def write_barricades(graph: Graph, stream: IO[str]) -> None:
    for u in graph.nodes().tolist():
        stream.write(f"{u} {float(graph.barricades[u])!r}\n")


def read_graph(edges_path: str, barricades_path: str | None = None, default_barricade: float = 1.0) -> Graph:
    with open(edges_path, encoding="utf-8") as fh:
        g = load_edge_list(fh, default_barricade)
    if barricades_path:
        with open(barricades_path, encoding="utf-8") as fh:
            g = load_barricades(g, fh)
    return g


def write_graph(graph: Graph, prefix: str) -> tuple[str, str]:
    """Write ``PREFIX.edges`` and ``PREFIX.barricades``; returns both paths."""
    ep, bp = f"{prefix}.edges", f"{prefix}.barricades"
    with open(ep, "w", encoding="utf-8") as fh:
        write_edge_list(graph, fh)
    with open(bp, "w", encoding="utf-8") as fh:
        write_barricades(graph, fh)
    return ep, bp
