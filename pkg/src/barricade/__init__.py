"""Influence maximization under the barricade threshold model.

A node activates once the weight of its active in-neighbours reaches its
barricade factor. The package provides the cascade engine, seed selection
(MSS, SIM, greedy, exhaustive), structural checks, generators, SNAP ingestion
and an experiment harness.
"""
from ._jit import NUMBA_ENABLED
from .cascade import CascadeTrace, is_fully_influenced, run_cascade, sigma, sigma_many
from .generators import GenSpec, assign_params, calibrate_theta, gen_er, gen_power_law, gen_rg, generate
from .graph import Graph, GraphValidationError
from .harness import ConfigError, ExperimentConfig, emit, run_barricade_sweep, run_budget_sweep, run_density_sweep
from .ingest import SampleSpec, ingest_snap, sample_subgraph
from .io import ParseError, load_barricades, load_edge_list, read_graph, write_graph
from .solvers import SolverReport, greedy, mss, optimal_exhaustive, optimal_full, sim
from .structure import (
    check_edge_addition_bound,
    check_node_addition_bound,
    edges_redundant,
    find_q_set,
    influence_deficient,
    min_full_seed_exhaustive,
    nontrivial_components,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED", "CascadeTrace", "ConfigError", "ExperimentConfig", "GenSpec", "Graph",
    "GraphValidationError", "ParseError", "SampleSpec", "SolverReport", "assign_params", "calibrate_theta",
    "check_edge_addition_bound", "check_node_addition_bound", "edges_redundant", "emit", "find_q_set",
    "gen_er", "gen_power_law", "gen_rg", "generate", "greedy", "influence_deficient", "ingest_snap",
    "is_fully_influenced", "load_barricades", "load_edge_list", "min_full_seed_exhaustive", "mss",
    "nontrivial_components", "optimal_exhaustive", "optimal_full", "read_graph", "run_barricade_sweep",
    "run_budget_sweep", "run_cascade", "run_density_sweep", "sample_subgraph", "sigma", "sigma_many", "sim",
    "write_graph",
]
