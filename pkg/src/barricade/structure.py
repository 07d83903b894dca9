"""Structural analysis and exhaustive validators for small graphs.

The exhaustive routines enumerate seed sets by increasing size, so they are
only usable on a handful of nodes; every one of them takes a ``max_nodes``
guard and raises :class:`SizeGuardError` beyond it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import kernels
from .cascade import sigma_many
from .graph import Graph

_CHUNK = 4096


class SizeGuardError(ValueError):
    """Graph too large for exhaustive enumeration."""


class BoundViolation(AssertionError):
    """A checked bound did not hold on the given instance."""


@dataclass(frozen=True)
class DeficiencyReport:
    deficient: frozenset[int]

    def __len__(self) -> int:
        return len(self.deficient)

    def __contains__(self, u) -> bool:
        return u in self.deficient


@dataclass(frozen=True)
class PerturbationBound:
    lower: int
    upper: int
    observed: int
    before: int = -1

    @property
    def holds(self) -> bool:
        return self.lower <= self.observed <= self.upper


@dataclass(frozen=True)
class NodeAddition:
    """A new node with barricade ``barricade`` plus edges ``z -> v`` and ``v -> z``."""
    barricade: float
    in_edges: Mapping[int, float] = field(default_factory=dict)
    out_edges: Mapping[int, float] = field(default_factory=dict)

    @property
    def attached(self) -> frozenset[int]:
        return frozenset(self.in_edges) | frozenset(self.out_edges)

    def apply(self, graph: Graph) -> tuple[Graph, int]:
        return graph.add_node(self.barricade, self.in_edges, self.out_edges)


@dataclass(frozen=True)
class QSetInstance:
    q: frozenset[int]
    z: frozenset[int]
    witness_seed_set: frozenset[int]


def influence_deficient(graph: Graph) -> DeficiencyReport:
    """Nodes whose barricade exceeds their total in-weight."""
    inw = graph.total_in_weights()
    mask = graph.alive & (graph.barricades > inw)
    return DeficiencyReport(frozenset(np.flatnonzero(mask).tolist()))


def nontrivial_components(graph: Graph) -> int:
    """Weakly connected components with at least two nodes."""
    return int(kernels.count_nontrivial(graph.out_ptr, graph.out_idx, graph.in_ptr, graph.in_idx, graph.alive, -1))


# --------------------------------------------------------------------------
# exhaustive minimum full-influence seed sets


def _guard(graph: Graph, max_nodes: int) -> None:
    if graph.num_alive > max_nodes:
        raise SizeGuardError(f"graph has {graph.num_alive} nodes; exhaustive guard is {max_nodes}")


def _full_sets_of_size(graph: Graph, forced: tuple[int, ...], rest: list[int], size: int) -> Iterator[frozenset[int]]:
    """Yield, in lexicographic order, every forced+combo set of this size that activates all nodes."""
    target = graph.num_alive
    combos = itertools.combinations(rest, size)
    while True:
        chunk = [forced + c for c in itertools.islice(combos, _CHUNK)]
        if not chunk:
            return
        sig = sigma_many(graph, chunk)
        for i in np.flatnonzero(sig == target):
            yield frozenset(chunk[i])


def _split_forced(graph: Graph) -> tuple[tuple[int, ...], list[int]]:
    forced = influence_deficient(graph).deficient
    rest = [u for u in graph.nodes().tolist() if u not in forced]
    return tuple(sorted(forced)), rest


def min_full_seed_exhaustive(graph: Graph, max_nodes: int = 16) -> frozenset[int]:
    """Lexicographically smallest minimum-size seed set that activates every node."""
    _guard(graph, max_nodes)
    forced, rest = _split_forced(graph)
    for size in range(len(rest) + 1):
        for s in _full_sets_of_size(graph, forced, rest, size):
            return s
    raise AssertionError("unreachable: the full node set always activates everything")


def all_min_full_seed_sets(graph: Graph, max_nodes: int = 12) -> list[frozenset[int]]:
    """Every minimum-size full-influence seed set, in lexicographic order."""
    _guard(graph, max_nodes)
    forced, rest = _split_forced(graph)
    for size in range(len(rest) + 1):
        found = list(_full_sets_of_size(graph, forced, rest, size))
        if found:
            return found
    raise AssertionError("unreachable")


def min_full_seed_size(graph: Graph, max_nodes: int = 16) -> int:
    return len(min_full_seed_exhaustive(graph, max_nodes))


def edges_redundant(graph: Graph, edges: Iterable[tuple[int, int]], max_nodes: int = 16) -> bool:
    """True iff deleting ``edges`` leaves the minimum full-influence seed size unchanged."""
    edges = {(int(u), int(v)) for u, v, *_ in edges}
    _guard(graph, max_nodes)
    if not edges:
        return True
    reduced = graph.remove_edges(edges)
    return min_full_seed_size(graph, max_nodes) == min_full_seed_size(reduced, max_nodes)


# --------------------------------------------------------------------------
# perturbation bounds


def check_edge_addition_bound(graph: Graph, v1: int, v2: int, w12: float, w21: float | None = None,
                              max_nodes: int = 16) -> PerturbationBound:
    """Add ``v1->v2`` (and ``v2->v1`` if ``w21`` is given) and check the seed size drops by 0 or 1."""
    _guard(graph, max_nodes)
    new = [(v1, v2, w12)]
    if w21 is not None:
        new.append((v2, v1, w21))
    for u, v, _ in new:
        if graph.has_edge(u, v):
            raise ValueError(f"edge {u}->{v} already present")
    before = min_full_seed_size(graph, max_nodes)
    after = min_full_seed_size(graph.add_edges(new), max_nodes)
    bound = PerturbationBound(lower=before - 1, upper=before, observed=after, before=before)
    if not bound.holds:
        raise BoundViolation(f"edge addition changed min seed size {before} -> {after}")
    return bound


def check_node_addition_bound(graph: Graph, new_node: NodeAddition, max_nodes: int = 16) -> PerturbationBound:
    """Attach a node and check ``max(|M|, s+1-|N|) <= s' <= s+1``."""
    _guard(graph, max_nodes - 1)
    before = min_full_seed_size(graph, max_nodes)
    grown, _ = new_node.apply(graph)
    after = min_full_seed_size(grown, max_nodes)
    lower = max(len(influence_deficient(grown)), before + 1 - len(new_node.attached))
    bound = PerturbationBound(lower=lower, upper=before + 1, observed=after, before=before)
    if not bound.holds:
        raise BoundViolation(f"node addition: {bound}")
    return bound


# --------------------------------------------------------------------------
# Q-set search for the node-replacement conditions


def _q_condition_c(graph: Graph, q: Iterable[int], z: frozenset[int], v_out: Mapping[int, float]) -> bool:
    for u in q:
        zin = sum(w for x, w in graph.in_edges(u) if x in z)
        if not (zin < graph.barricades[u] <= v_out.get(u, 0.0) + zin):
            return False
    return True


def _boundary(graph: Graph, q: frozenset[int]) -> tuple[frozenset[int], set[tuple[int, int]]]:
    z: set[int] = set()
    cut: set[tuple[int, int]] = set()
    for u in q:
        for v, _ in graph.out_edges(u):
            if v not in q:
                z.add(v)
                cut.add((u, v))
        for v, _ in graph.in_edges(u):
            if v not in q:
                z.add(v)
                cut.add((v, u))
    return frozenset(z), cut


def find_q_set(graph: Graph, v_spec: NodeAddition, max_nodes: int = 10) -> QSetInstance | None:
    """Largest ``Q`` among the attachment points meeting the three replacement conditions.

    Ties among equally large candidates go to the lexicographically smallest.
    Returns ``None`` when no non-empty ``Q`` qualifies.
    """
    _guard(graph, max_nodes)
    minimum_sets = all_min_full_seed_sets(graph, max_nodes)
    attached = sorted(v_spec.attached)
    redundant_cache: dict[frozenset, bool] = {}
    for size in range(len(attached), 0, -1):
        for combo in itertools.combinations(attached, size):
            q = frozenset(combo)
            witness = next((s for s in minimum_sets if q <= s), None)
            if witness is None:
                continue
            z, cut = _boundary(graph, q)
            if not _q_condition_c(graph, q, z, v_spec.out_edges):
                continue
            key = frozenset(cut)
            if key not in redundant_cache:
                redundant_cache[key] = edges_redundant(graph, cut, max_nodes)
            if redundant_cache[key]:
                return QSetInstance(q=q, z=z, witness_seed_set=witness)
    return None


def replacement_case(graph: Graph, v_spec: NodeAddition) -> int | None:
    """Which premise set (1 or 2) the attachment satisfies, or ``None``.

    Case 1: the in-neighbours are exactly sufficient to activate the new node
    (all of them needed), its out-neighbours are among its in-neighbours, and
    no single out-edge alone meets the target's barricade. Case 2: the new
    node is deficient, with the same out-edge restriction.
    """
    b_v = v_spec.barricade
    weak_out = all(w < graph.barricades[u] for u, w in v_spec.out_edges.items())
    if not weak_out:
        return None
    win = list(v_spec.in_edges.values())
    total = sum(win)
    if total < b_v:
        return 2
    if win and total - min(win) < b_v and set(v_spec.out_edges) <= set(v_spec.in_edges):
        return 1
    return None


@dataclass(frozen=True)
class ReplacementCheck:
    case: int
    q: QSetInstance | None
    before: int
    observed: int
    predicted: int
    witness_full: bool

    @property
    def holds(self) -> bool:
        return self.observed == self.predicted and self.witness_full


def check_replacement(graph: Graph, v_spec: NodeAddition, max_nodes: int = 10) -> ReplacementCheck | None:
    """Compare the predicted seed size after attaching ``v_spec`` with the exhaustive optimum.

    Returns ``None`` when neither premise set holds. ``witness_full`` reports
    whether the predicted set itself, built from the Q witness, activates the
    grown graph.
    """
    case = replacement_case(graph, v_spec)
    if case is None:
        return None
    inst = find_q_set(graph, v_spec, max_nodes)
    before = min_full_seed_size(graph, max_nodes)
    grown, v = v_spec.apply(graph)
    observed = min_full_seed_size(grown, max_nodes + 1)
    qn = 0 if inst is None else len(inst.q)
    if case == 1 and qn <= 1:
        predicted = before
        base = inst.witness_seed_set if inst else min_full_seed_exhaustive(graph, max_nodes)
        candidate = base
    else:
        predicted = before - qn + 1
        base = inst.witness_seed_set if inst else min_full_seed_exhaustive(graph, max_nodes)
        candidate = (base - (inst.q if inst else frozenset())) | {v}
    witness_full = int(sigma_many(grown, [candidate])[0]) == grown.num_alive
    return ReplacementCheck(case, inst, before, observed, predicted, witness_full)
