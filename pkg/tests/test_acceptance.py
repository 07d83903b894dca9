"""Acceptance gate: one test (and one PASS/FAIL line) per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``. Criterion 7 uses the SNAP Facebook edge
list when ``BARRICADE_FACEBOOK_EDGES`` points at it, otherwise a clustered
power-law surrogate of the same size.
"""
from __future__ import annotations

import io
import itertools
import json
import os
import subprocess
import sys
import time

import networkx as nx
import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from barricade import (  # noqa: E402
    GenSpec,
    Graph,
    SampleSpec,
    assign_params,
    generate,
    greedy,
    ingest_snap,
    mss,
    run_cascade,
    sample_subgraph,
    sigma,
    sim,
)
from barricade.cascade import sigma_many  # noqa: E402
from barricade.gadgets import p3_gadget  # noqa: E402
from barricade.harness import ExperimentConfig, aggregate, run  # noqa: E402
from barricade.structure import NodeAddition, check_replacement  # noqa: E402
from barricade.validation import (  # noqa: E402
    edge_addition_trials,
    node_addition_trials,
    random_instance,
    replacement_trials,
)

import oracles  # noqa: E402

# criterion number -> status line; conftest prints these after the run
LINES: dict[int, str] = {}


def report(n: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    LINES[n] = line
    print(line)
    assert ok, line


# --------------------------------------------------------------------------


def test_criterion_1_non_submodularity():
    g = p3_gadget()
    sigma(g, [0])  # warm the compiled kernels
    t0 = time.perf_counter()
    s_empty, s_c, s_a, s_ac = (sigma(g, s) for s in ([], [2], [0], [0, 2]))
    elapsed = time.perf_counter() - t0
    gain_alone, gain_with_a = s_c - s_empty, s_ac - s_a
    ok = gain_alone == 1 and gain_with_a == 2 and elapsed < 1e-3
    report(1, ok, f"gain of c: {gain_alone} alone vs {gain_with_a} after a; {elapsed * 1e3:.3f} ms")


def _mss_instances(rng):
    """Mixed generator settings, including zero and all-deficient barricade extremes."""
    weight_ranges = [(1, 1), (1, 2), (0.5, 3)]
    for i in range(540):
        model = ("rg", "er", "power_law")[i % 3]
        n = int(rng.integers(5, 101))
        if model == "rg":
            density = float(rng.uniform(0, 0.3)) * n * (n - 1)
        elif model == "er":
            density = float(rng.uniform(0, 0.3))
        else:
            density = float(rng.uniform(2.1, 3.5))
        extreme = i % 9
        if extreme == 0:
            br = (0.0, 0.0)
        elif extreme == 1:
            br = (1e6, 1e6)  # every node deficient
        elif extreme == 2:
            br = (0.0, 3.0)
        else:
            lo = float(rng.uniform(0, 10))
            br = (lo, lo + float(rng.uniform(0, 10)))
        wr = weight_ranges[i % 3]
        yield GenSpec(model, n, density, wr, br, int(rng.integers(1 << 31)), float(rng.uniform(2, 8)))


def test_criterion_2_mss_full_influence():
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    count = fails = 0
    for spec in _mss_instances(rng):
        g = generate(spec)
        rep = mss(g, spec.rng_seed)
        count += 1
        if sigma(g, rep.seeds) != g.node_count:
            fails += 1
    elapsed = time.perf_counter() - t0
    ok = count >= 500 and fails == 0 and elapsed <= 60
    report(2, ok, f"{count} graphs, {fails} failures, {elapsed:.1f} s")


def test_criterion_3_oracle_dominance():
    rng = np.random.default_rng(3)
    t0 = time.perf_counter()
    graphs = bad = equal = 0
    while graphs < 200:
        g = random_instance(rng, 2, 12)
        n = g.node_count
        subsets = [c for r in range(n + 1) for c in itertools.combinations(range(n), r)]
        sig = sigma_many(g, subsets)
        best = np.zeros(n + 1, dtype=int)
        for c, s in zip(subsets, sig):
            best[len(c)] = max(best[len(c)], s)
        best = np.maximum.accumulate(best)
        min_full = next(len(c) for c, s in zip(subsets, sig) if s == n)
        for k in range(1, n + 1):
            if sim(g, k).sigma > best[k] or greedy(g, k).sigma > best[k]:
                bad += 1
        m = len(mss(g).seeds)
        bad += m < min_full
        equal += m == min_full
        graphs += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed <= 300
    report(3, ok, f"{graphs} graphs, {bad} violations, |MSS| optimal on {equal}/{graphs} "
                  f"({100 * equal / graphs:.0f}%), {elapsed:.1f} s")


def _constructed_q_instances():
    # v replaces node 0 in a pair of mutually deficient nodes (case 1, |Q| = 1)
    yield Graph.from_edges(2, [(0, 1, 1.0), (1, 0, 3.0)], [5.0, 5.0]), \
        NodeAddition(4.0, {0: 2.0, 1: 3.0}, {0: 3.0, 1: 3.0})
    # chain of two deficient nodes fed by a hub; v deficient (case 2)
    yield Graph.from_edges(3, [(2, 0, 2.0), (2, 1, 2.0)], [3.0, 3.0, 1.0]), \
        NodeAddition(9.0, {2: 1.0}, {0: 2.0, 1: 2.0})


def test_criterion_4_structural_theorems():
    t0 = time.perf_counter()
    pair = edge_addition_trials(200, 40, both_directions=True, n_max=10)
    single = edge_addition_trials(200, 41, both_directions=False, n_max=10)
    node = node_addition_trials(200, 42, n_max=9)
    constructed = [check_replacement(g, s) for g, s in _constructed_q_instances()]
    constructed_ok = all(c is not None and c.holds for c in constructed)
    repl = replacement_trials(50, 43, n_max=8)
    elapsed = time.perf_counter() - t0
    parts = [
        f"edge pair {pair.violations}/{pair.trials}",
        f"single edge {single.violations}/{single.trials}",
        f"node bounds {node.violations}/{node.trials}",
        f"Q-instances {'ok' if constructed_ok else 'violated'} ({len(constructed)})",
        f"replacement {repl.violations}/{repl.trials}",
    ]
    if repl.examples:
        parts.append("first counterexample " + json.dumps(repl.examples[0], default=str))
    ok = pair.passed and single.passed and node.passed and constructed_ok and repl.passed and elapsed <= 300
    report(4, ok, "violations: " + ", ".join(parts) + f"; {elapsed:.1f} s")


RG30 = {"model": "rg", "n": 30, "density_target": 320, "weight_range": [1, 1], "barricade_range": [5.33, 10.66]}


def _means(config: dict) -> dict:
    res = run(ExperimentConfig.from_dict(config), timing=False)
    return {(a["sweep_value"], a["algorithm"]): a["mean"] for a in aggregate(res.rows)}


def test_criterion_5_small_k_exactness():
    m = _means(dict(sweep="budget", sweep_values=list(range(1, 16)), algorithms=["sim", "greedy"],
                    graph_source={"generator": RG30}, replications=10, rng_seed=0, name="budget"))
    exact = all(abs(m[(k, "sim")] - k) <= 0.5 for k in range(1, 6))
    trail = [k for k in range(1, 16) if m[(k, "sim")] < m[(k, "greedy")] - 0.5]
    ratio = m[(11, "sim")] / m[(11, "greedy")]
    ok = exact and not trail
    report(5, ok, "mean sigma(SIM) k=1..5: " + ", ".join(f"{m[(k, 'sim')]:.1f}" for k in range(1, 6))
           + f"; k where SIM trails greedy by >0.5: {trail or 'none'}; k=11 SIM/greedy {ratio:.2f} (soft)")


def test_criterion_6_density_trend():
    dens = list(range(320, 721, 80))
    m = _means(dict(sweep="density", sweep_values=dens, algorithms=["mss", "greedy"],
                    graph_source={"generator": RG30}, replications=10, rng_seed=0, name="density"))
    seq = [m[(d, "mss")] for d in dens]
    rises = [b - a for a, b in zip(seq, seq[1:]) if b > a]
    monotone = len(rises) == 0 or (len(rises) == 1 and rises[0] <= 0.5)
    below = all(m[(d, "mss")] <= m[(d, "greedy")] for d in dens)
    ok = monotone and below
    report(6, ok, "mean |MSS| " + ", ".join(f"{s:.1f}" for s in seq)
           + " | greedy " + ", ".join(f"{m[(d, 'greedy')]:.1f}" for d in dens))


def _facebook() -> tuple[Graph, str]:
    path = os.environ.get("BARRICADE_FACEBOOK_EDGES")
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            g = ingest_snap(fh, "bidirected")
        assert (g.node_count, g.edge_count) == (4039, 176_468)
        return g, "SNAP Facebook"
    und = nx.powerlaw_cluster_graph(4039, 22, 0.9, seed=0)
    text = "".join(f"{u} {v}\n" for u, v in und.edges())
    return ingest_snap(io.StringIO(text), "bidirected"), "clustered power-law surrogate"


def test_criterion_7_real_network_speed():
    parent, source = _facebook()
    sample = sample_subgraph(parent, SampleSpec(500, "bfs_ball", 0))
    mss(sample)
    greedy(sample, 1)  # compile before timing
    t_mss, t_greedy, n_mss, n_greedy = [], [], [], []
    for draw in range(5):
        g = assign_params(sample, (1, 2), (5, 10), draw)
        a, b = mss(g, draw), greedy(g, None)
        assert a.sigma == b.sigma == 500
        t_mss.append(a.wall_time)
        t_greedy.append(b.wall_time)
        n_mss.append(len(a.seeds))
        n_greedy.append(len(b.seeds))
    speed = np.mean(t_greedy) / np.mean(t_mss)
    ok = np.mean(t_mss) <= np.mean(t_greedy) / 50 and np.mean(n_mss) <= np.mean(n_greedy) + 0.02 * 500
    report(7, ok, f"{source}, 500-node ball with {sample.edge_count} edges: MSS {np.mean(t_mss) * 1e3:.1f} ms "
                  f"vs greedy {np.mean(t_greedy):.2f} s ({speed:.0f}x); seeds {np.mean(n_mss):.1f} vs "
                  f"{np.mean(n_greedy):.1f}")


def _cli(*args, cwd):
    res = subprocess.run([sys.executable, "-m", "barricade", *args], cwd=cwd, capture_output=True, text=True)
    return res.returncode


def test_criterion_8_cli_determinism(tmp_path):
    und = nx.powerlaw_cluster_graph(300, 4, 0.5, seed=1)
    (tmp_path / "snap.txt").write_text("".join(f"{u} {v}\n" for u, v in und.edges()))
    (tmp_path / "cfg.json").write_text(json.dumps(dict(
        sweep="barricade", sweep_values=[[5.33, 10.66], [5.33, 13.33]], algorithms=["mss", "greedy"],
        graph_source={"generator": RG30}, replications=3, rng_seed=1, name="exp")))
    runs = {
        "generate": (["generate", "--model", "power_law", "--n", "60", "--density", "2.5",
                      "--weight-range", "1,2", "--barricade-range", "2,6", "--rng-seed", "9",
                      "--out-prefix", "{d}/g"], ["g.edges", "g.barricades", "g.spec.json"]),
        "ingest": (["ingest", "--input", "snap.txt", "--bidirected", "--sample-n", "80", "--method",
                    "bfs_ball", "--rng-seed", "4", "--weight-range", "1,2", "--barricade-range", "5,10",
                    "--out-prefix", "{d}/s"], ["s.edges", "s.barricades", "s.labels"]),
        "solve": (["solve", "--graph", "base.edges", "--barricades", "base.barricades", "--algo", "sim",
                   "--k", "4", "--rng-seed", "7", "--no-timing", "--out", "{d}/r.json"], ["r.json"]),
        "cascade": (["cascade", "--graph", "base.edges", "--barricades", "base.barricades",
                     "--seeds", "0,1,2,3", "--out", "{d}/t.json"], ["t.json"]),
        "experiment": (["experiment", "--config", "cfg.json", "--out", "{d}", "--workers", "2",
                        "--no-timing", "--aggregate"], ["exp.csv", "exp.json", "exp.summary.csv"]),
        "validate": (["validate", "--trials", "15", "--replacement-trials", "5", "--rng-seed", "3",
                      "--out", "{d}/v.json"], ["v.json"]),
    }
    assert _cli("generate", "--model", "rg", "--n", "30", "--density", "320", "--barricade-range",
                "5.33,10.66", "--rng-seed", "2", "--out-prefix", "base", cwd=tmp_path) == 0
    same, broken = [], []
    for name, (argv, files) in runs.items():
        codes = []
        for d in ("one", "two"):
            (tmp_path / d).mkdir(exist_ok=True)
            codes.append(_cli(*[a.replace("{d}", d) for a in argv], cwd=tmp_path))
        identical = codes[0] == codes[1] and all(
            (tmp_path / "one" / f).read_bytes() == (tmp_path / "two" / f).read_bytes() for f in files)
        (same if identical else broken).append(name)
    report(8, not broken and len(same) == 6, f"byte-identical reruns: {', '.join(same)}"
           + (f"; differing: {', '.join(broken)}" if broken else ""))


def test_criterion_9_cascade_oracle():
    rng = np.random.default_rng(9)
    mismatches = 0
    for _ in range(1000):
        n = int(rng.integers(1, 13))
        p = float(rng.uniform(0.05, 0.6))
        edges = [(u, v, float(rng.choice([0.5, 1.0, 1.5, 2.0, 3.0]))) for u in range(n) for v in range(n)
                 if u != v and rng.random() < p]
        b = rng.choice([0.0, 0.5, 1.0, 2.0, 3.0, 4.5, 6.0], size=n).tolist()
        g = Graph.from_edges(n, edges, b)
        seeds = set(rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False).tolist())
        if set(run_cascade(g, seeds).final) != oracles.fixed_point(n, edges, b, seeds):
            mismatches += 1
    report(9, mismatches == 0, f"1000 graphs, {mismatches} fixed-point mismatches")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
