"""Seed selection: MSS, SIM, hill-climbing greedy and exhaustive optimum."""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .cascade import sigma, sigma_many
from .graph import Graph
from .structure import SizeGuardError, min_full_seed_exhaustive

DEFAULT_ENUM_BUDGET = 5_000_000


@dataclass(frozen=True)
class SolverReport:
    algorithm: str
    seeds: frozenset[int]
    sigma: int
    wall_time: float
    rng_seed: int | None = None
    k: int | None = None
    removal_sequence: tuple[int, ...] | None = field(default=None, repr=False)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "algorithm": self.algorithm,
            "seeds": sorted(self.seeds),
            "sigma": self.sigma,
            "wall_time_s": self.wall_time if timing else 0.0,
            "rng_seed": self.rng_seed,
            "k": self.k,
        }
        if self.removal_sequence is not None:
            out["removal_sequence"] = list(self.removal_sequence)
        return out


def _mss_select(graph: Graph, rng_seed: int) -> tuple[frozenset[int], tuple[int, ...]]:
    rand = np.random.default_rng(rng_seed).random(max(graph.node_count, 1))
    alive, removed, n_removed = kernels.mss_core(
        graph.out_ptr, graph.out_idx, graph.out_w, graph.in_ptr, graph.in_idx, graph.in_w,
        graph.b, graph.alive, rand,
    )
    return frozenset(np.flatnonzero(alive).tolist()), tuple(removed[:n_removed].tolist())


def mss(graph: Graph, rng_seed: int = 0) -> SolverReport:
    """Minimum seed selection for full influence.

    Repeatedly deletes a node that the rest of the graph could still activate,
    preferring (in order) the smallest incident weight, the fewest non-trivial
    components left behind, the fewest deficient nodes left behind, and finally
    a seeded uniform pick. The survivors are the seeds.
    """
    t0 = time.perf_counter()
    seeds, order = _mss_select(graph, rng_seed)
    wall = time.perf_counter() - t0
    return SolverReport("mss", seeds, sigma(graph, seeds), wall, rng_seed, None, order)


def _sim_trim(graph: Graph, seeds: frozenset[int], k: int) -> frozenset[int]:
    current = sorted(seeds)
    while len(current) > k:
        trials = [current[:i] + current[i + 1:] for i in range(len(current))]
        sig = sigma_many(graph, trials)
        # argmax keeps the first maximum, i.e. the smallest id
        current.pop(int(np.argmax(sig)))
    return frozenset(current)


def sim(graph: Graph, k: int, rng_seed: int = 0) -> SolverReport:
    """Budgeted selection: start from the MSS set and drop the seed whose loss hurts least."""
    if k < 1:
        raise ValueError("k must be >= 1")
    t0 = time.perf_counter()
    full, _ = _mss_select(graph, rng_seed)
    seeds = _sim_trim(graph, full, k)
    wall = time.perf_counter() - t0
    return SolverReport("sim", seeds, sigma(graph, seeds), wall, rng_seed, k)


def sim_path(graph: Graph, rng_seed: int = 0) -> dict[int, frozenset[int]]:
    """SIM answers for every budget at once: ``{k: seeds}`` for ``1 <= k <= |MSS|``.

    Trimming is prefix-consistent, so a single pass gives every budget.
    """
    full, _ = _mss_select(graph, rng_seed)
    current = sorted(full)
    out = {len(current): frozenset(current)}
    while len(current) > 1:
        trials = [current[:i] + current[i + 1:] for i in range(len(current))]
        current.pop(int(np.argmax(sigma_many(graph, trials))))
        out[len(current)] = frozenset(current)
    return out


def _greedy_select(graph: Graph, k: int | None) -> list[int]:
    n_alive = graph.num_alive
    nodes = graph.nodes().tolist()
    chosen: list[int] = []
    in_set = set()
    current = sigma(graph, [])
    limit = n_alive if k is None else min(k, n_alive)
    while len(chosen) < limit:
        if k is None and current == n_alive:
            break
        cands = [u for u in nodes if u not in in_set]
        sig = sigma_many(graph, [chosen + [u] for u in cands])
        best = int(np.argmax(sig))
        chosen.append(cands[best])
        in_set.add(cands[best])
        current = int(sig[best])
    return chosen


def greedy(graph: Graph, k: int | None) -> SolverReport:
    """Hill climbing on sigma. ``k=None`` runs until every node is active.

    With a budget the loop always spends all ``k`` picks (zero-gain picks fall
    back to the smallest id), capped at the node count.
    """
    if k is not None and k < 1:
        raise ValueError("k must be >= 1")
    t0 = time.perf_counter()
    seeds = frozenset(_greedy_select(graph, k))
    wall = time.perf_counter() - t0
    return SolverReport("greedy" if k is not None else "greedy_full", seeds, sigma(graph, seeds), wall, None, k)


def optimal_exhaustive(graph: Graph, k: int, max_nodes: int = 16, budget: int = DEFAULT_ENUM_BUDGET) -> SolverReport:
    """Best seed set of size <= k by enumeration; ties go to the lexicographically smallest."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = graph.num_alive
    if n > max_nodes:
        raise SizeGuardError(f"graph has {n} nodes; exhaustive guard is {max_nodes}")
    size = min(k, n)
    if math.comb(n, size) > budget:
        raise SizeGuardError(f"C({n},{size}) exceeds enumeration budget {budget}")
    t0 = time.perf_counter()
    best, best_sig = frozenset(), -1
    combos = itertools.combinations(graph.nodes().tolist(), size)
    while True:
        chunk = list(itertools.islice(combos, 4096))
        if not chunk:
            break
        sig = sigma_many(graph, chunk)
        i = int(np.argmax(sig))
        if sig[i] > best_sig:
            best, best_sig = frozenset(chunk[i]), int(sig[i])
        if best_sig == n:
            break
    wall = time.perf_counter() - t0
    return SolverReport("opt", best, best_sig, wall, None, k)


def optimal_full(graph: Graph, max_nodes: int = 16) -> SolverReport:
    """Exact minimum full-influence seed set (exhaustive, deficient nodes forced)."""
    t0 = time.perf_counter()
    seeds = min_full_seed_exhaustive(graph, max_nodes)
    wall = time.perf_counter() - t0
    return SolverReport("opt_full", seeds, sigma(graph, seeds), wall)
