"""Randomized small-instance trials for the structural bounds.

Instances use small integer weights and barricades so that threshold ties are
exact and actually exercised.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .cascade import sigma_many
from .graph import Graph
from .structure import (
    BoundViolation,
    NodeAddition,
    check_edge_addition_bound,
    check_node_addition_bound,
    check_replacement,
    influence_deficient,
)


@dataclass
class TrialSummary:
    name: str
    trials: int = 0
    violations: int = 0
    examples: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.trials > 0 and self.violations == 0

    def record_violation(self, detail: dict, keep: int = 3) -> None:
        self.violations += 1
        if len(self.examples) < keep:
            self.examples.append(detail)

    def to_dict(self) -> dict:
        return {"name": self.name, "trials": self.trials, "violations": self.violations,
                "passed": self.passed, "examples": self.examples}


def random_instance(rng: np.random.Generator, n_min: int = 2, n_max: int = 8,
                    max_weight: int = 3, max_barricade: int = 6, min_barricade: int = 0) -> Graph:
    """Small random graph: directed or bidirectional ER topology, integer parameters."""
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.uniform(0.15, 0.6))
    bidirectional = bool(rng.random() < 0.5)
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if bidirectional:
            if rng.random() < p:
                edges += [(u, v, float(rng.integers(1, max_weight + 1))),
                          (v, u, float(rng.integers(1, max_weight + 1)))]
        else:
            if rng.random() < p:
                edges.append((u, v, float(rng.integers(1, max_weight + 1))))
            if rng.random() < p:
                edges.append((v, u, float(rng.integers(1, max_weight + 1))))
    b = rng.integers(min_barricade, max_barricade + 1, size=n).astype(float)
    return Graph.from_edges(n, edges, b)


def _edge_list(g: Graph) -> list:
    return [list(e) for e in g.edges()]


def edge_addition_trials(trials: int, rng_seed: int, both_directions: bool, n_max: int = 9) -> TrialSummary:
    name = "edge_pair_addition" if both_directions else "single_edge_addition"
    out = TrialSummary(name)
    rng = np.random.default_rng(rng_seed)
    while out.trials < trials:
        g = random_instance(rng, 2, n_max)
        free = [(u, v) for u, v in itertools.permutations(range(g.node_count), 2)
                if not g.has_edge(u, v) and not (both_directions and g.has_edge(v, u))]
        if not free:
            continue
        u, v = free[int(rng.integers(len(free)))]
        w12 = float(rng.integers(1, 4))
        w21 = float(rng.integers(1, 4)) if both_directions else None
        out.trials += 1
        try:
            check_edge_addition_bound(g, u, v, w12, w21, max_nodes=n_max)
        except BoundViolation as exc:
            out.record_violation({"edges": _edge_list(g), "b": g.barricades.tolist(), "add": [u, v, w12, w21],
                                  "error": str(exc)})
    return out


def _random_attachment(rng: np.random.Generator, g: Graph, min_barricade: int = 1) -> NodeAddition:
    n = g.node_count
    k = int(rng.integers(0, min(n, 4) + 1))
    att = rng.choice(n, size=k, replace=False).tolist() if k else []
    ins = {u: float(rng.integers(1, 4)) for u in att if rng.random() < 0.7}
    outs = {u: float(rng.integers(1, 4)) for u in att if u not in ins or rng.random() < 0.5}
    return NodeAddition(float(rng.integers(min_barricade, 7)), ins, outs)


def node_addition_trials(trials: int, rng_seed: int, n_max: int = 9, min_barricade: int = 1) -> TrialSummary:
    """Attachment bounds on random instances.

    Barricades default to >= 1: a zero-barricade node activates for free, which
    voids the lower bound's premise that an isolated newcomer must be a seed.
    """
    out = TrialSummary("node_addition_bounds")
    rng = np.random.default_rng(rng_seed)
    while out.trials < trials:
        g = random_instance(rng, 1, n_max, min_barricade=min_barricade)
        spec = _random_attachment(rng, g, min_barricade)
        out.trials += 1
        try:
            check_node_addition_bound(g, spec, max_nodes=n_max + 1)
        except BoundViolation as exc:
            out.record_violation({"edges": _edge_list(g), "b": g.barricades.tolist(),
                                  "node": [spec.barricade, spec.in_edges, spec.out_edges], "error": str(exc)})
    return out


def premise_attachment(rng: np.random.Generator, g: Graph, case: int) -> NodeAddition | None:
    """Random attachment built to satisfy the premises of the given replacement case."""
    n = g.node_count
    k = int(rng.integers(1, min(n, 4) + 1))
    att = sorted(rng.choice(n, size=k, replace=False).tolist())
    ins = {u: float(rng.integers(1, 4)) for u in att}
    total = sum(ins.values())
    if case == 1:
        lo = total - min(ins.values())
        # integer barricade in (lo, total]
        b_v = float(rng.integers(int(lo) + 1, int(total) + 1))
        pool = att
    else:
        b_v = float(total + rng.integers(1, 3))
        pool = [u for u in range(n) if rng.random() < 0.5] or att
    outs = {}
    for u in pool:
        cap = g.barricades[u]
        if cap > 1 and rng.random() < 0.6:
            outs[u] = float(rng.integers(1, int(np.ceil(cap))))
    spec = NodeAddition(b_v, ins, outs)
    return spec


def replacement_trials(trials: int, rng_seed: int, n_max: int = 8, min_barricade: int = 1) -> TrialSummary:
    """Attach nodes meeting case-1 or case-2 premises and compare the predicted optimum size."""
    out = TrialSummary("node_replacement")
    rng = np.random.default_rng(rng_seed)
    while out.trials < trials:
        g = random_instance(rng, 2, n_max, min_barricade=min_barricade)
        spec = premise_attachment(rng, g, int(rng.integers(1, 3)))
        res = check_replacement(g, spec, max_nodes=n_max)
        if res is None:
            continue
        out.trials += 1
        if not res.holds:
            out.record_violation({
                "edges": _edge_list(g), "b": g.barricades.tolist(),
                "node": [spec.barricade, spec.in_edges, spec.out_edges], "case": res.case,
                "q": sorted(res.q.q) if res.q else [], "before": res.before,
                "observed": res.observed, "predicted": res.predicted,
            })
    return out


def deficient_membership_trials(trials: int, rng_seed: int, n_max: int = 8) -> TrialSummary:
    """Every full-influence seed set (found by enumeration) contains all deficient nodes."""
    out = TrialSummary("deficient_in_every_full_set")
    rng = np.random.default_rng(rng_seed)
    while out.trials < trials:
        g = random_instance(rng, 1, n_max)
        out.trials += 1
        deficient = influence_deficient(g).deficient
        subsets = [c for r in range(g.node_count + 1) for c in itertools.combinations(range(g.node_count), r)]
        sig = sigma_many(g, subsets)
        bad = [s for s, v in zip(subsets, sig) if v == g.num_alive and not deficient <= set(s)]
        if bad:
            out.record_violation({"edges": _edge_list(g), "b": g.barricades.tolist(), "set": list(bad[0])})
    return out


def run_all(trials: int = 200, rng_seed: int = 0, replacement: int = 50) -> list[TrialSummary]:
    return [
        edge_addition_trials(trials, rng_seed, both_directions=True),
        edge_addition_trials(trials, rng_seed + 1, both_directions=False),
        node_addition_trials(trials, rng_seed + 2),
        replacement_trials(replacement, rng_seed + 3),
        deficient_membership_trials(trials, rng_seed + 4),
    ]
