"""SNAP edge lists and subgraph sampling for the real-network experiments."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from . import kernels
from .graph import Graph
from .io import ParseError

log = logging.getLogger(__name__)

SAMPLE_METHODS = ("uniform_node_induced", "bfs_ball")


@dataclass(frozen=True)
class SampleSpec:
    target_nodes: int
    method: str = "bfs_ball"
    rng_seed: int = 0

    def __post_init__(self):
        if self.target_nodes < 1:
            raise ValueError("target_nodes must be >= 1")
        if self.method not in SAMPLE_METHODS:
            raise ValueError(f"unknown sampling method {self.method!r}")


def ingest_snap(stream: IO[str] | Iterable[str], directedness: str = "directed",
                default_barricade: float = 0.0) -> Graph:
    """Parse a SNAP edge list, remapping ids densely in sorted order.

    ``bidirected`` adds both directions for every record. Repeated records and
    self-loops are dropped (counted in the debug log). ``graph.labels`` holds
    the original ids; weights start at 1.
    """
    if directedness not in ("directed", "bidirected"):
        raise ValueError("directedness must be 'directed' or 'bidirected'")
    us, vs = [], []
    for lineno, line in enumerate(stream, start=1):
        body = line.strip()
        if not body or body[0] in "#%":
            continue
        tok = body.split()
        if len(tok) < 2:
            raise ParseError(lineno, line, "expected 'u v'")
        try:
            us.append(int(tok[0]))
            vs.append(int(tok[1]))
        except ValueError:
            raise ParseError(lineno, line, "non-integer node id") from None
    raw_u = np.asarray(us, dtype=np.int64)
    raw_v = np.asarray(vs, dtype=np.int64)
    labels, inverse = np.unique(np.concatenate([raw_u, raw_v]), return_inverse=True)
    n = labels.size
    u, v = inverse[: raw_u.size], inverse[raw_u.size:]
    if directedness == "bidirected":
        u, v = np.concatenate([u, v]), np.concatenate([v, u])
    loops = u == v
    keys = np.unique(u[~loops] * max(n, 1) + v[~loops])
    log.debug("ingest: %d records, %d self-loops, %d distinct directed edges", raw_u.size, int(loops.sum()), keys.size)
    src, dst = keys // max(n, 1), keys % max(n, 1)
    return Graph(n, src, dst, np.ones(keys.size), np.full(n, float(default_barricade)), labels=labels)


def sample_subgraph(graph: Graph, spec: SampleSpec) -> Graph:
    """Node-induced sample of ``spec.target_nodes`` alive nodes."""
    nodes = graph.nodes()
    if spec.target_nodes > nodes.size:
        raise ValueError(f"target {spec.target_nodes} exceeds graph size {nodes.size}")
    rng = np.random.default_rng(spec.rng_seed)
    if spec.method == "uniform_node_induced":
        picked = rng.choice(nodes, size=spec.target_nodes, replace=False)
    else:
        # roots: a random permutation; the BFS jumps to the next one only if a component runs out
        roots = rng.permutation(nodes)
        picked = kernels.bfs_order(graph.out_ptr, graph.out_idx, graph.in_ptr, graph.in_idx, graph.alive, roots, spec.target_nodes)
    return graph.induced_subgraph(picked)
