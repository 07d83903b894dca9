"""Experiment sweeps over budget, density and barricade range.

Each sweep produces one raw row per (sweep value, algorithm, replication).
Rows are sorted canonically before they are returned, so worker count never
changes the output.
"""
from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Any

import numpy as np

from . import solvers
from .cascade import sigma
from .generators import GenSpec, assign_params, derive_seed, generate
from .graph import Graph
from .ingest import SampleSpec, ingest_snap, sample_subgraph
from .io import read_graph

SWEEPS = ("budget", "density", "barricade")
ALGORITHMS = ("mss", "sim", "greedy", "opt")
CSV_COLUMNS = ("sweep_value", "algorithm", "replication", "metric", "sigma", "seed_count", "wall_time_s", "rng_seed")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    sweep: str
    sweep_values: list
    algorithms: list[str]
    graph_source: dict
    replications: int = 10
    rng_seed: int = 0
    opt_max_nodes: int = 16
    opt_budget: int = solvers.DEFAULT_ENUM_BUDGET
    name: str = "experiment"

    def __post_init__(self):
        self.validate()

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def load(cls, path: str) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def validate(self) -> None:
        if self.sweep not in SWEEPS:
            raise ConfigError(f"sweep must be one of {SWEEPS}")
        if not self.sweep_values:
            raise ConfigError("sweep_values must be non-empty")
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        if not self.algorithms or any(a not in ALGORITHMS for a in self.algorithms):
            raise ConfigError(f"algorithms must be a non-empty subset of {ALGORITHMS}")
        src = self.graph_source
        if "generator" in src:
            try:
                spec = GenSpec.from_dict(src["generator"])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad generator spec: {exc}") from None
            if "opt" in self.algorithms and spec.n > self.opt_max_nodes:
                raise ConfigError(f"opt requested on n={spec.n} > opt_max_nodes={self.opt_max_nodes}")
        elif "edges" not in src:
            raise ConfigError("graph_source needs 'generator' or 'edges'")
        elif self.sweep == "density":
            raise ConfigError("density sweeps need a generator source")
        if self.sweep == "budget" and any(int(k) < 1 for k in self.sweep_values):
            raise ConfigError("budgets must be >= 1")
        if self.sweep == "barricade":
            for r in self.sweep_values:
                if len(r) != 2 or not 0 <= r[0] <= r[1]:
                    raise ConfigError(f"barricade range {r} must be [lo, hi] with 0 <= lo <= hi")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Row:
    sweep_value: Any
    algorithm: str
    replication: int
    metric: str
    sigma: int
    seed_count: int
    wall_time_s: float
    rng_seed: int
    seeds: list[int] = field(default_factory=list, compare=False)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list[Row]


# --------------------------------------------------------------------------
# graph construction


def _file_graph(src: dict, rep_seed: int, value_seed: int, barricade_range=None) -> Graph:
    if src.get("format", "edgelist") == "snap":
        with open(src["edges"], encoding="utf-8") as fh:
            g = ingest_snap(fh, "bidirected" if src.get("bidirected") else "directed")
    else:
        g = read_graph(src["edges"], src.get("barricades"))
    if "sample" in src:
        s = dict(src["sample"])
        g = sample_subgraph(g, SampleSpec(int(s["target_nodes"]), s.get("method", "bfs_ball"), rep_seed))
    wr = src.get("weight_range")
    br = barricade_range if barricade_range is not None else src.get("barricade_range")
    if wr is not None or br is not None:
        # only the ranges actually given replace what the file provided
        drawn = assign_params(g, wr or (1.0, 1.0), br or (0.0, 0.0), value_seed)
        g = g.with_weights(drawn.w if wr is not None else g.w)
        g = g.with_barricades(drawn.b if br is not None else g.b)
    return g


def build_graph(config: ExperimentConfig, replication: int, value=None) -> tuple[Graph, int]:
    """Graph for one replication (and sweep value for density/barricade sweeps)."""
    rep_seed = derive_seed(config.rng_seed, replication)
    src = config.graph_source
    if "generator" in src:
        spec = GenSpec.from_dict(src["generator"]).replace(rng_seed=rep_seed)
        if config.sweep == "density":
            spec = spec.replace(density_target=float(value))
        if config.sweep == "barricade":
            topo = generate(spec)
            return assign_params(topo, spec.weight_range, value, derive_seed(rep_seed, 1)), rep_seed
        return generate(spec), rep_seed
    br = value if config.sweep == "barricade" else None
    return _file_graph(src, rep_seed, derive_seed(rep_seed, 1), br), rep_seed


# --------------------------------------------------------------------------
# one unit of work


def _value_label(v):
    if isinstance(v, (list, tuple)):
        return f"{float(v[0])!r}:{float(v[1])!r}"
    return v


def _budget_rows(config: ExperimentConfig, replication: int, timing: bool) -> list[Row]:
    g, seed = build_graph(config, replication)
    rows = []
    for k in config.sweep_values:
        k = int(k)
        for algo in config.algorithms:
            if algo == "mss":
                rep = solvers.mss(g, seed)
            elif algo == "sim":
                rep = solvers.sim(g, k, seed)
            elif algo == "greedy":
                rep = solvers.greedy(g, k)
            else:
                rep = solvers.optimal_exhaustive(g, k, config.opt_max_nodes, config.opt_budget)
            rows.append(Row(k, algo, replication, "sigma", rep.sigma, len(rep.seeds),
                            rep.wall_time if timing else 0.0, seed, sorted(rep.seeds)))
    return rows


def _full_rows(config: ExperimentConfig, replication: int, value_index: int, timing: bool) -> list[Row]:
    value = config.sweep_values[value_index]
    g, seed = build_graph(config, replication, value)
    rows = []
    for algo in config.algorithms:
        if algo in ("mss", "sim"):
            rep = solvers.mss(g, seed)
        elif algo == "greedy":
            rep = solvers.greedy(g, None)
        else:
            rep = solvers.optimal_full(g, config.opt_max_nodes)
        rows.append(Row(_value_label(value), algo, replication, "seed_count", rep.sigma, len(rep.seeds),
                        rep.wall_time if timing else 0.0, seed, sorted(rep.seeds)))
    return rows


def _task(config_dict: dict, timing: bool, job: tuple[int, int]) -> list[Row]:
    config = ExperimentConfig.from_dict(config_dict)
    replication, value_index = job
    if config.sweep == "budget":
        return _budget_rows(config, replication, timing)
    return _full_rows(config, replication, value_index, timing)


def _sort_key(config: ExperimentConfig):
    labels = [_value_label(v) if config.sweep != "budget" else int(v) for v in config.sweep_values]
    algo_pos = {a: i for i, a in enumerate(config.algorithms)}
    return lambda r: (labels.index(r.sweep_value), algo_pos[r.algorithm], r.replication)


def run(config: ExperimentConfig, workers: int = 1, timing: bool = True) -> ExperimentResult:
    if config.sweep == "budget":
        jobs = [(r, 0) for r in range(config.replications)]
    else:
        jobs = [(r, i) for r in range(config.replications) for i in range(len(config.sweep_values))]
    work = partial(_task, config.to_dict(), timing)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(work, jobs))
    else:
        chunks = [work(j) for j in jobs]
    rows = sorted((r for c in chunks for r in c), key=_sort_key(config))
    return ExperimentResult(config, rows)


def _require(config: ExperimentConfig, sweep: str) -> None:
    if config.sweep != sweep:
        raise ConfigError(f"expected a {sweep} sweep, got {config.sweep}")


def run_budget_sweep(config: ExperimentConfig, workers: int = 1, timing: bool = True) -> ExperimentResult:
    _require(config, "budget")
    return run(config, workers, timing)


def run_density_sweep(config: ExperimentConfig, workers: int = 1, timing: bool = True) -> ExperimentResult:
    _require(config, "density")
    return run(config, workers, timing)


def run_barricade_sweep(config: ExperimentConfig, workers: int = 1, timing: bool = True) -> ExperimentResult:
    _require(config, "barricade")
    return run(config, workers, timing)


# --------------------------------------------------------------------------
# output


def emit(result: ExperimentResult | list[Row], fmt: str, path: str) -> None:
    rows = result.rows if isinstance(result, ExperimentResult) else result
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for r in rows:
                writer.writerow([getattr(r, c) for c in CSV_COLUMNS])
    elif fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump([r.to_dict() for r in rows], fh, indent=1)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def load_rows_json(path: str) -> list[Row]:
    with open(path, encoding="utf-8") as fh:
        return [Row(**d) for d in json.load(fh)]


def aggregate(rows: list[Row]) -> list[dict]:
    """Mean metric and wall time per (sweep value, algorithm), first-seen order."""
    groups: dict[tuple, list[Row]] = {}
    for r in rows:
        groups.setdefault((r.sweep_value, r.algorithm), []).append(r)
    out = []
    for (value, algo), rs in groups.items():
        metric = rs[0].metric
        vals = [r.sigma if metric == "sigma" else r.seed_count for r in rs]
        out.append({
            "sweep_value": value, "algorithm": algo, "metric": metric, "n": len(rs),
            "mean": float(np.mean(vals)), "mean_wall_time_s": float(np.mean([r.wall_time_s for r in rs])),
        })
    return out


def write_outputs(result: ExperimentResult, out_dir: str, aggregate_means: bool = False) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    base = os.path.join(out_dir, result.config.name)
    paths = [f"{base}.csv", f"{base}.json"]
    emit(result, "csv", paths[0])
    emit(result, "json", paths[1])
    if aggregate_means:
        summary = f"{base}.summary.csv"
        agg = aggregate(result.rows)
        with open(summary, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(agg[0]) if agg else ["sweep_value"], lineterminator="\n")
            writer.writeheader()
            writer.writerows(agg)
        paths.append(summary)
    return paths


def verify_rows(result: ExperimentResult) -> bool:
    """Recompute every recorded sigma from its stored seed set."""
    for r in result.rows:
        g, _ = build_graph(result.config, r.replication, _unlabel(result.config, r.sweep_value))
        if sigma(g, r.seeds) != r.sigma:
            return False
    return True


def _unlabel(config: ExperimentConfig, label):
    for v in config.sweep_values:
        if _value_label(v) == label or v == label:
            return v
    return label
