"""Deterministic diffusion under the barricade threshold rule.

An inactive node ``u`` becomes active in round ``t+1`` iff the summed weight of
its active in-neighbours at round ``t`` is at least ``b_u``. All eligible nodes
switch simultaneously and nothing ever deactivates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .graph import Graph


@dataclass(frozen=True)
class CascadeTrace:
    steps: tuple[frozenset[int], ...]

    @property
    def final(self) -> frozenset[int]:
        return self.steps[-1]

    @property
    def sigma(self) -> int:
        return len(self.final)

    def to_json(self) -> str:
        return json.dumps({"steps": [sorted(s) for s in self.steps], "sigma": self.sigma})

    @classmethod
    def from_json(cls, text: str) -> "CascadeTrace":
        data = json.loads(text)
        trace = cls(tuple(frozenset(s) for s in data["steps"]))
        if trace.sigma != data["sigma"]:
            raise ValueError("sigma does not match final step")
        return trace


def activation_rounds(graph: Graph, seeds: Iterable[int], use_numba: bool | None = None) -> np.ndarray:
    """Round in which each node activates (0 for seeds), -1 if it never does."""
    seeds = graph.check_seeds(seeds)
    return kernels.cascade_levels(graph, seeds, use_numba)


def run_cascade(graph: Graph, seeds: Iterable[int], use_numba: bool | None = None) -> CascadeTrace:
    levels = activation_rounds(graph, seeds, use_numba)
    last = int(levels.max()) if levels.size else 0
    reached = levels >= 0
    steps = tuple(frozenset(np.flatnonzero(reached & (levels <= t)).tolist()) for t in range(max(last, 0) + 1))
    return CascadeTrace(steps)


def sigma(graph: Graph, seeds: Iterable[int]) -> int:
    seeds = graph.check_seeds(seeds)
    return int(kernels.batch_sigma(graph, [sorted(seeds)])[0])


def sigma_many(graph: Graph, seed_sets: list[Iterable[int]]) -> np.ndarray:
    """sigma for a batch of seed sets; ids are not re-validated."""
    return kernels.batch_sigma(graph, [sorted(s) for s in seed_sets])


def is_fully_influenced(graph: Graph, seeds: Iterable[int]) -> bool:
    return sigma(graph, seeds) == graph.num_alive
