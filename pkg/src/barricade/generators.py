"""Synthetic topologies with randomized weights and barricades."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph

MODELS = ("rg", "er", "power_law")


@dataclass(frozen=True)
class GenSpec:
    """Generator recipe.

    ``density_target`` means the expected directed edge count for ``rg``, the
    edge probability for ``er`` and the degree exponent for ``power_law``.
    ``mean_degree`` only applies to ``power_law`` (expected undirected degree).
    """
    model: str
    n: int
    density_target: float
    weight_range: tuple[float, float] = (1.0, 1.0)
    barricade_range: tuple[float, float] = (1.0, 1.0)
    rng_seed: int = 0
    mean_degree: float = 6.0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "weight_range", tuple(float(x) for x in self.weight_range))
        object.__setattr__(self, "barricade_range", tuple(float(x) for x in self.barricade_range))
        _check_range(self.weight_range, "weight_range", positive=True)
        _check_range(self.barricade_range, "barricade_range", positive=False)

    @classmethod
    def from_dict(cls, data: dict) -> "GenSpec":
        return cls(**data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["weight_range"] = list(d["weight_range"])
        d["barricade_range"] = list(d["barricade_range"])
        return d

    def replace(self, **kw) -> "GenSpec":
        d = asdict(self)
        d.update(kw)
        return GenSpec(**d)


def _check_range(r, name, positive):
    if len(r) != 2 or not r[0] <= r[1]:
        raise ValueError(f"{name} must be [lo, hi] with lo <= hi, got {r}")
    if positive and r[0] <= 0:
        raise ValueError(f"{name} must be strictly positive")
    if not positive and r[0] < 0:
        raise ValueError(f"{name} must be non-negative")


def derive_seed(rng_seed: int, *keys: int) -> int:
    """Stable child seed for replication/sweep index ``keys``."""
    return int(np.random.SeedSequence([int(rng_seed), *map(int, keys)]).generate_state(1, np.uint64)[0] >> 1)


# --------------------------------------------------------------------------
# parameters


def assign_params(graph: Graph, weight_range, barricade_range, rng_seed: int) -> Graph:
    """I.i.d. uniform weights (per directed edge) and barricades."""
    weight_range = tuple(map(float, weight_range))
    barricade_range = tuple(map(float, barricade_range))
    _check_range(weight_range, "weight_range", positive=True)
    _check_range(barricade_range, "barricade_range", positive=False)
    rng = np.random.default_rng(rng_seed)
    w = rng.uniform(*weight_range, size=graph.src.size) if weight_range[0] < weight_range[1] \
        else np.full(graph.src.size, weight_range[0])
    b = rng.uniform(*barricade_range, size=graph.node_count) if barricade_range[0] < barricade_range[1] \
        else np.full(graph.node_count, barricade_range[0])
    return graph.with_weights(w).with_barricades(b)


def _finish(spec: GenSpec, n: int, src, dst, param_seed: int) -> Graph:
    topo = Graph(n, src, dst, np.ones(len(src)), np.zeros(n))
    return assign_params(topo, spec.weight_range, spec.barricade_range, param_seed)


def _seeds(spec: GenSpec) -> tuple[np.random.Generator, int]:
    topo_ss, param_ss = np.random.SeedSequence(spec.rng_seed).spawn(2)
    return np.random.default_rng(topo_ss), int(param_ss.generate_state(1)[0])


# --------------------------------------------------------------------------
# random geometric


def square_distance_cdf(d: float) -> float:
    """P(|X - Y| <= d) for X, Y independent uniform on the unit square."""
    if d <= 0:
        return 0.0
    if d <= 1:
        return math.pi * d * d - 8.0 * d ** 3 / 3.0 + d ** 4 / 2.0
    if d >= math.sqrt(2):
        return 1.0
    s = math.sqrt(d * d - 1.0)
    return (1.0 / 3.0 - 2.0 * d * d - d ** 4 / 2.0 + 8.0 * d * d * s / 3.0 + 4.0 * s / 3.0
            + 2.0 * d * d * (math.asin(1.0 / d) - math.asin(s / d)))


def calibrate_theta(n: int, target_directed_edges: float, rtol: float = 1e-6) -> float:
    """Connection radius whose expected directed edge count on ``n`` points equals the target."""
    pairs = n * (n - 1)
    if target_directed_edges < 0 or target_directed_edges > pairs:
        raise ValueError(f"target {target_directed_edges} outside [0, {pairs}]")
    if target_directed_edges == 0:
        return 0.0
    if target_directed_edges == pairs:
        return math.sqrt(2.0)
    p = target_directed_edges / pairs
    lo, hi = 0.0, math.sqrt(2.0)
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if square_distance_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def rg_topology(n: int, theta: float, rng: np.random.Generator):
    pts = rng.random((n, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    close = np.einsum("ijk,ijk->ij", diff, diff) <= theta * theta
    np.fill_diagonal(close, False)
    src, dst = np.nonzero(close)
    return pts, src, dst


def gen_rg(spec: GenSpec) -> Graph:
    """Unit-square geometric graph with bidirectional edges inside the calibrated radius."""
    if spec.model != "rg":
        raise ValueError("spec.model must be 'rg'")
    theta = calibrate_theta(spec.n, spec.density_target)
    rng, pseed = _seeds(spec)
    _, src, dst = rg_topology(spec.n, theta, rng)
    return _finish(spec, spec.n, src, dst, pseed)


# --------------------------------------------------------------------------
# Erdos-Renyi


def gen_er(spec: GenSpec) -> Graph:
    """Every ordered pair independently with probability ``density_target``."""
    if spec.model != "er":
        raise ValueError("spec.model must be 'er'")
    p = spec.density_target
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng, pseed = _seeds(spec)
    hit = rng.random((spec.n, spec.n)) < p
    np.fill_diagonal(hit, False)
    src, dst = np.nonzero(hit)
    return _finish(spec, spec.n, src, dst, pseed)


# --------------------------------------------------------------------------
# power law (Chung-Lu)


def chung_lu_weights(n: int, gamma: float, mean_degree: float) -> np.ndarray:
    """Expected degrees proportional to rank^(-1/(gamma-1)), scaled to ``mean_degree``."""
    if gamma <= 1:
        raise ValueError(f"degree exponent must exceed 1, got {gamma}")
    raw = np.arange(1, n + 1, dtype=float) ** (-1.0 / (gamma - 1.0))
    return raw * (mean_degree * n / raw.sum())


def chung_lu_probabilities(weights: np.ndarray) -> np.ndarray:
    total = weights.sum()
    if total == 0:
        return np.zeros((weights.size, weights.size))
    p = np.minimum(1.0, np.outer(weights, weights) / total)
    np.fill_diagonal(p, 0.0)
    return p


def chung_lu_expected_edges(weights: np.ndarray) -> float:
    """Expected directed edge count (each undirected pair counted twice)."""
    return float(chung_lu_probabilities(weights).sum())


def gen_power_law(spec: GenSpec) -> Graph:
    """Chung-Lu expected-degree graph made bidirectional."""
    if spec.model != "power_law":
        raise ValueError("spec.model must be 'power_law'")
    weights = chung_lu_weights(spec.n, spec.density_target, min(spec.mean_degree, spec.n - 1))
    rng, pseed = _seeds(spec)
    p = chung_lu_probabilities(weights)
    iu, ju = np.triu_indices(spec.n, k=1)
    hit = rng.random(iu.size) < p[iu, ju]
    src = np.concatenate([iu[hit], ju[hit]])
    dst = np.concatenate([ju[hit], iu[hit]])
    return _finish(spec, spec.n, src, dst, pseed)


def generate(spec: GenSpec) -> Graph:
    return {"rg": gen_rg, "er": gen_er, "power_law": gen_power_law}[spec.model](spec)
