"""Directed weighted graphs with per-node barricade factors."""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np


class GraphValidationError(ValueError):
    """Raised when graph data breaks a structural invariant."""


class Graph:
    """Immutable directed graph on dense ids ``0..node_count-1``.

    Edges are kept twice, sorted by source (``out_*``) and by target (``in_*``),
    so both neighbour directions are O(degree). Removing a node only clears its
    ``alive`` flag; dead nodes and every edge touching them are invisible to all
    queries and kernels.

    ``labels`` optionally records the original id of each node (set by dataset
    ingestion and subgraph extraction).
    """

    def __init__(self, node_count, src, dst, weights, barricades, alive=None, labels=None, _checked=False):
        n = int(node_count)
        src = np.asarray(src, dtype=np.int64).reshape(-1)
        dst = np.asarray(dst, dtype=np.int64).reshape(-1)
        w = np.asarray(weights, dtype=np.float64).reshape(-1)
        b = np.asarray(barricades, dtype=np.float64).reshape(-1)
        alive = np.ones(n, dtype=bool) if alive is None else np.asarray(alive, dtype=bool).copy()
        if not _checked:
            _validate(n, src, dst, w, b, alive)
        order = np.lexsort((dst, src))
        self._n = n
        self.src = src[order]
        self.dst = dst[order]
        self.w = w[order]
        self.out_ptr = _ptr(self.src, n)
        self.out_idx = self.dst
        self.out_w = self.w
        rorder = np.lexsort((self.src, self.dst))
        self.in_ptr = _ptr(self.dst[rorder], n)
        self.in_idx = self.src[rorder]
        self.in_w = self.w[rorder]
        self.b = b.copy()
        self.alive = alive
        self.labels = None if labels is None else np.asarray(labels).copy()
        for arr in (self.src, self.dst, self.w, self.out_ptr, self.in_ptr, self.in_idx, self.in_w, self.b, self.alive):
            arr.setflags(write=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable, barricades, labels=None) -> "Graph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples; missing weights default to 1."""
        src, dst, w = [], [], []
        for e in edges:
            src.append(e[0])
            dst.append(e[1])
            w.append(e[2] if len(e) > 2 else 1.0)
        if np.isscalar(barricades):
            barricades = np.full(node_count, float(barricades))
        return cls(node_count, src, dst, w, barricades, labels=labels)

    @classmethod
    def empty(cls, node_count: int = 0, barricade: float = 1.0) -> "Graph":
        return cls(node_count, [], [], [], np.full(node_count, float(barricade)))

    def _replace(self, **kw) -> "Graph":
        args = dict(node_count=self._n, src=self.src, dst=self.dst, weights=self.w,
                    barricades=self.b, alive=self.alive, labels=self.labels)
        args.update(kw)
        return Graph(**args)

    # -- basic queries ------------------------------------------------------

    @property
    def node_count(self) -> int:
        """Size of the id space, including removed nodes."""
        return self._n

    @property
    def barricades(self) -> np.ndarray:
        return self.b

    @property
    def num_alive(self) -> int:
        return int(self.alive.sum())

    def nodes(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    def _live_mask(self) -> np.ndarray:
        return self.alive[self.src] & self.alive[self.dst]

    @property
    def edge_count(self) -> int:
        return int(self._live_mask().sum())

    def edges(self) -> list[tuple[int, int, float]]:
        m = self._live_mask()
        return list(zip(self.src[m].tolist(), self.dst[m].tolist(), self.w[m].tolist()))

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        m = self._live_mask()
        return self.src[m], self.dst[m], self.w[m]

    def _check(self, u: int) -> int:
        u = int(u)
        if not 0 <= u < self._n:
            raise IndexError(f"node {u} out of range for graph with {self._n} nodes")
        return u

    def is_alive(self, u: int) -> bool:
        return bool(self.alive[self._check(u)])

    def out_edges(self, u: int) -> list[tuple[int, float]]:
        u = self._check(u)
        if not self.alive[u]:
            return []
        lo, hi = self.out_ptr[u], self.out_ptr[u + 1]
        return [(int(v), float(w)) for v, w in zip(self.out_idx[lo:hi], self.out_w[lo:hi]) if self.alive[v]]

    def in_edges(self, u: int) -> list[tuple[int, float]]:
        u = self._check(u)
        if not self.alive[u]:
            return []
        lo, hi = self.in_ptr[u], self.in_ptr[u + 1]
        return [(int(z), float(w)) for z, w in zip(self.in_idx[lo:hi], self.in_w[lo:hi]) if self.alive[z]]

    def neighbors(self, u: int) -> set[int]:
        """In- and out-neighbours of ``u``."""
        return {v for v, _ in self.out_edges(u)} | {z for z, _ in self.in_edges(u)}

    def weight(self, u: int, v: int) -> float:
        """Weight of edge ``u -> v``; 0.0 when absent."""
        for x, w in self.out_edges(u):
            if x == v:
                return w
        return 0.0

    def has_edge(self, u: int, v: int) -> bool:
        return self.weight(u, v) > 0.0

    def in_weight_sum(self, u: int, restrict_to: Iterable[int] | None = None) -> float:
        """Sum of weights on edges ``z -> u``, optionally only for ``z`` in ``restrict_to``."""
        edges = self.in_edges(u)
        if restrict_to is None:
            return float(sum(w for _, w in edges))
        keep = set(restrict_to)
        return float(sum(w for z, w in edges if z in keep))

    def total_in_weights(self) -> np.ndarray:
        """Alive in-weight of every node (0 for dead nodes)."""
        m = self._live_mask()
        return np.bincount(self.dst[m], weights=self.w[m], minlength=self._n)

    def check_seeds(self, seeds: Iterable[int]) -> frozenset[int]:
        """Validate seed ids against this graph and return them as a frozenset."""
        out = frozenset(int(s) for s in seeds)
        for s in out:
            if not 0 <= s < self._n or not self.alive[s]:
                raise ValueError(f"seed {s} is not a node of the graph")
        return out

    # -- derived graphs -----------------------------------------------------

    def with_barricades(self, barricades) -> "Graph":
        b = np.asarray(barricades, dtype=np.float64)
        if b.shape != (self._n,):
            raise GraphValidationError(f"expected {self._n} barricades, got shape {b.shape}")
        if np.any(~np.isfinite(b)) or np.any(b < 0):
            raise GraphValidationError("barricades must be finite and non-negative")
        return self._replace(barricades=b)

    def with_weights(self, weights) -> "Graph":
        """Replace weights, aligned with the stored (source, target) edge order."""
        return self._replace(weights=np.asarray(weights, dtype=np.float64))

    def remove_node(self, u: int) -> "Graph":
        u = self._check(u)
        alive = self.alive.copy()
        alive[u] = False
        return self._replace(alive=alive)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        drop = {(int(e[0]), int(e[1])) for e in edges}
        for u, v in drop:
            if not self.has_edge(u, v):
                raise GraphValidationError(f"edge {u}->{v} not present")
        keep = np.array([(u, v) not in drop for u, v in zip(self.src.tolist(), self.dst.tolist())], dtype=bool)
        return self._replace(src=self.src[keep], dst=self.dst[keep], weights=self.w[keep])

    def add_edges(self, edges: Iterable[tuple[int, int, float]]) -> "Graph":
        new = list(edges)
        for u, v, _ in new:
            self._check(u)
            self._check(v)
            if not (self.alive[u] and self.alive[v]):
                raise GraphValidationError(f"edge {u}->{v} touches a removed node")
        return self._replace(
            src=np.concatenate([self.src, [e[0] for e in new]]).astype(np.int64),
            dst=np.concatenate([self.dst, [e[1] for e in new]]).astype(np.int64),
            weights=np.concatenate([self.w, [e[2] for e in new]]),
        )

    def add_node(self, barricade: float, in_edges: Mapping[int, float] = None,
                 out_edges: Mapping[int, float] = None) -> tuple["Graph", int]:
        """Append a node with edges ``z -> new`` (``in_edges``) and ``new -> z`` (``out_edges``)."""
        v = self._n
        in_edges = dict(in_edges or {})
        out_edges = dict(out_edges or {})
        src = [z for z in in_edges] + [v] * len(out_edges)
        dst = [v] * len(in_edges) + [z for z in out_edges]
        w = list(in_edges.values()) + list(out_edges.values())
        for z in list(in_edges) + list(out_edges):
            if not (0 <= z < v and self.alive[z]):
                raise GraphValidationError(f"attachment target {z} is not a node")
        labels = None if self.labels is None else np.append(self.labels, -1)
        g = Graph(v + 1, np.concatenate([self.src, src]).astype(np.int64),
                  np.concatenate([self.dst, dst]).astype(np.int64), np.concatenate([self.w, w]),
                  np.append(self.b, float(barricade)), np.append(self.alive, True), labels)
        return g, v

    def induced_subgraph(self, nodes: Iterable[int]) -> "Graph":
        """Compact subgraph on ``nodes``; node ``i`` of the result is the i-th smallest id given."""
        keep = np.unique(np.asarray(list(nodes), dtype=np.int64))
        if keep.size and (keep[0] < 0 or keep[-1] >= self._n or not self.alive[keep].all()):
            raise GraphValidationError("induced subgraph nodes must be alive ids of the graph")
        remap = np.full(self._n, -1, dtype=np.int64)
        remap[keep] = np.arange(keep.size)
        m = (remap[self.src] >= 0) & (remap[self.dst] >= 0)
        labels = keep if self.labels is None else self.labels[keep]
        return Graph(keep.size, remap[self.src[m]], remap[self.dst[m]], self.w[m], self.b[keep],
                     labels=labels, _checked=True)

    def compact(self) -> "Graph":
        """Drop removed nodes and renumber survivors densely."""
        return self.induced_subgraph(self.nodes())

    # -- misc ---------------------------------------------------------------

    def structurally_equal(self, other: "Graph") -> bool:
        return (
            self._n == other._n
            and np.array_equal(self.alive, other.alive)
            and np.array_equal(self.b, other.b)
            and self.edges() == other.edges()
        )

    def __repr__(self) -> str:
        return f"Graph(nodes={self.num_alive}/{self._n}, edges={self.edge_count})"


def _ptr(sorted_keys: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate([[0], np.cumsum(np.bincount(sorted_keys, minlength=n))]).astype(np.int64)


def _validate(n, src, dst, w, b, alive):
    if n < 0:
        raise GraphValidationError("node_count must be non-negative")
    if not (src.shape == dst.shape == w.shape):
        raise GraphValidationError("edge arrays must have equal length")
    if b.shape != (n,) or alive.shape != (n,):
        raise GraphValidationError(f"barricades/alive must have length {n}")
    if np.any(~np.isfinite(b)) or np.any(b < 0):
        raise GraphValidationError("barricades must be finite and non-negative")
    if src.size == 0:
        return
    if src.min() < 0 or dst.min() < 0 or max(src.max(), dst.max()) >= n:
        raise GraphValidationError("edge endpoint out of range")
    if np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise GraphValidationError("edge weights must be finite and strictly positive")
    if np.any(src == dst):
        raise GraphValidationError("self-loops are not allowed")
    keys = src * n + dst
    if np.unique(keys).size != keys.size:
        raise GraphValidationError("duplicate edge")
