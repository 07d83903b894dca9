import csv
import json

import pytest

from barricade import ConfigError, ExperimentConfig, emit, run_barricade_sweep, run_budget_sweep, run_density_sweep
from barricade.harness import aggregate, load_rows_json, run, verify_rows, write_outputs
from barricade.io import write_graph
from barricade.graph import Graph

RG = {"model": "rg", "n": 12, "density_target": 40, "barricade_range": [1.0, 3.0]}


def cfg(**kw):
    base = dict(sweep="budget", sweep_values=[1, 2], algorithms=["mss", "sim", "greedy", "opt"],
                graph_source={"generator": RG}, replications=2, rng_seed=5, name="t")
    base.update(kw)
    return ExperimentConfig.from_dict(base)


def test_config_validation():
    with pytest.raises(ConfigError):
        cfg(sweep="width")
    with pytest.raises(ConfigError):
        cfg(sweep_values=[])
    with pytest.raises(ConfigError):
        cfg(replications=0)
    with pytest.raises(ConfigError):
        cfg(algorithms=["celf"])
    with pytest.raises(ConfigError):
        cfg(graph_source={"generator": dict(RG, n=40)})
    with pytest.raises(ConfigError):
        cfg(sweep="barricade", sweep_values=[[3, 1]])
    with pytest.raises(ConfigError):
        cfg(bogus=1)


def test_budget_rows_and_counts():
    res = run_budget_sweep(cfg())
    assert len(res.rows) == 2 * 4 * 2
    for r in res.rows:
        if r.algorithm != "mss":
            assert r.seed_count <= r.sweep_value
    opt = {(r.sweep_value, r.replication): r.sigma for r in res.rows if r.algorithm == "opt"}
    for r in res.rows:
        if r.algorithm in ("sim", "greedy"):
            assert r.sigma <= opt[(r.sweep_value, r.replication)]
    assert verify_rows(res)


def test_budget_k_equals_n():
    res = run_budget_sweep(cfg(sweep_values=[12], algorithms=["sim", "greedy", "opt"]))
    assert all(r.sigma == 12 for r in res.rows)


def test_replications_are_prefix_stable():
    a = run_budget_sweep(cfg(replications=2), timing=False).rows
    b = run_budget_sweep(cfg(replications=3), timing=False).rows
    assert [r for r in b if r.replication < 2] == a


def test_workers_do_not_change_rows():
    c = cfg(sweep="density", sweep_values=[30, 60], algorithms=["mss", "greedy"])
    assert run(c, workers=1, timing=False).rows == run(c, workers=2, timing=False).rows


def test_density_sweep_extremes():
    c = cfg(sweep="density", sweep_values=[0], algorithms=["mss", "greedy", "opt"])
    res = run_density_sweep(c)
    assert all(r.seed_count == 12 and r.metric == "seed_count" for r in res.rows)


def test_barricade_sweep_extremes():
    res = run_barricade_sweep(cfg(sweep="barricade", sweep_values=[[0, 0], [1000, 1000]],
                                  algorithms=["mss", "greedy", "opt"]))
    for r in res.rows:
        assert r.seed_count == (0 if r.sweep_value == "0.0:0.0" else 12)


def test_file_source(tmp_path):
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], 1.0)
    ep, bp = write_graph(g, str(tmp_path / "ring"))
    c = cfg(graph_source={"edges": ep, "barricades": bp}, algorithms=["mss"], sweep_values=[1])
    rows = run_budget_sweep(c).rows
    assert all(r.seed_count == 1 and r.sigma == 4 for r in rows)
    c = cfg(sweep="barricade", sweep_values=[[2, 2]], graph_source={"edges": ep}, algorithms=["mss"])
    assert all(r.seed_count == 4 for r in run_barricade_sweep(c).rows)


def test_emit_csv_and_json(tmp_path):
    res = run_budget_sweep(cfg())
    emit(res, "csv", tmp_path / "r.csv")
    with open(tmp_path / "r.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["sweep_value", "algorithm", "replication", "metric", "sigma", "seed_count",
                       "wall_time_s", "rng_seed"]
    assert len(rows) - 1 == 2 * 4 * 2
    emit(res, "json", tmp_path / "r.json")
    assert load_rows_json(tmp_path / "r.json") == res.rows
    emit([], "csv", tmp_path / "e.csv")
    assert open(tmp_path / "e.csv").read().count("\n") == 1
    with pytest.raises(ValueError):
        emit(res, "xml", tmp_path / "r.xml")


def test_outputs_deterministic(tmp_path):
    c = cfg()
    write_outputs(run(c, timing=False), str(tmp_path / "a"), True)
    write_outputs(run(c, timing=False), str(tmp_path / "b"), True)
    for name in ("t.csv", "t.json", "t.summary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_aggregate_means():
    res = run_budget_sweep(cfg(algorithms=["sim"], sweep_values=[1]))
    agg = aggregate(res.rows)
    assert agg[0]["n"] == 2 and agg[0]["mean"] == 1.0
    assert json.loads(json.dumps(agg)) == agg
