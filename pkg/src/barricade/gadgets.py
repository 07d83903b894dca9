"""Small hand-built fixtures: the supermodular path gadget and the vertex-cover reduction."""
from __future__ import annotations

from typing import Iterable

from .graph import Graph

# node ids in the path gadget
A, B, C = 0, 1, 2


def p3_gadget() -> Graph:
    """a <-> b <-> c, unit weights, barricades (1, 2, 1).

    sigma({c}) - sigma({}) = 1 while sigma({a, c}) - sigma({a}) = 2.
    """
    edges = [(A, B, 1.0), (B, A, 1.0), (B, C, 1.0), (C, B, 1.0)]
    return Graph.from_edges(3, edges, [1.0, 2.0, 1.0], labels=["a", "b", "c"])


def triangle(barricade: float = 2.0) -> Graph:
    edges = [(u, v, 1.0) for u in range(3) for v in range(3) if u != v]
    return Graph.from_edges(3, edges, [barricade] * 3)


def vertex_cover_gadget(n: int, undirected_edges: Iterable[tuple[int, int]]) -> Graph:
    """Each undirected edge becomes a unit-weight pair; b_v is v's in-degree.

    A seed set fully influences the result iff it is a vertex cover of the
    input graph (isolated vertices have b = 0 and activate on their own).
    """
    pairs = {(min(u, v), max(u, v)) for u, v in undirected_edges}
    if any(u == v for u, v in pairs):
        raise ValueError("self-loops have no vertex-cover meaning")
    edges = [e for u, v in sorted(pairs) for e in ((u, v, 1.0), (v, u, 1.0))]
    deg = [0.0] * n
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, edges, deg)
