import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barricade import Graph, is_fully_influenced, run_cascade, sigma, sigma_many
from barricade import kernels
from barricade.cascade import CascadeTrace
from barricade.gadgets import p3_gadget, triangle

import oracles
from conftest import random_graph

A, B, C = 0, 1, 2


def test_p3_traces():
    g = p3_gadget()
    assert [sorted(s) for s in run_cascade(g, {A, C}).steps] == [[A, C], [A, B, C]]
    t = run_cascade(g, {A})
    assert [sorted(s) for s in t.steps] == [[A]] and t.sigma == 1


def test_triangle_two_seeds():
    t = run_cascade(triangle(2.0), {0, 1})
    assert t.sigma == 3 and len(t.steps) == 2


def test_sigma_examples():
    g = p3_gadget()
    assert sigma(g, []) == 0
    assert (sigma(g, {A}), sigma(g, {C}), sigma(g, {A, C}), sigma(g, {B})) == (1, 1, 3, 3)
    # marginal gain of c grows once a is in: not submodular
    assert sigma(g, {C}) - sigma(g, []) < sigma(g, {A, C}) - sigma(g, {A})


def test_full_influence_examples():
    g = p3_gadget()
    assert is_fully_influenced(g, {B})
    assert not is_fully_influenced(g, {A})
    assert is_fully_influenced(Graph.empty(0), [])


def test_zero_barricade_auto_activates():
    g = Graph.from_edges(2, [(0, 1, 1.0)], [0.0, 5.0])
    t = run_cascade(g, [])
    assert [sorted(s) for s in t.steps] == [[], [0]]


def test_invalid_seed():
    with pytest.raises((IndexError, ValueError)):
        sigma(p3_gadget(), [7])


def test_trace_json_round_trip():
    t = run_cascade(p3_gadget(), {A, C})
    assert t.to_json() == '{"steps": [[0, 2], [0, 1, 2]], "sigma": 3}'
    assert CascadeTrace.from_json(t.to_json()) == t


def test_dead_nodes_ignored():
    g = p3_gadget().remove_node(A)
    assert sigma(g, {C}) == 1
    assert sigma(g.with_barricades([1, 1, 1]), {C}) == 2


def test_matches_oracle_on_random_graphs(rng):
    for _ in range(300):
        g, edges, b = random_graph(rng, 1, 10)
        n = g.node_count
        seeds = set(rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False).tolist())
        t = run_cascade(g, seeds)
        assert [set(s) for s in t.steps] == oracles.sync_trace(n, edges, b, seeds)


@pytest.mark.parametrize("use_numba", [True, False])
def test_numba_and_numpy_paths_agree(rng, use_numba):
    for _ in range(100):
        g, edges, b = random_graph(rng, 1, 12, integer=False)
        n = g.node_count
        sets = [sorted(rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False).tolist()) for _ in range(8)]
        got = kernels.batch_sigma(g, sets, use_numba=use_numba)
        assert got.tolist() == [oracles.sigma(n, edges, b, s) for s in sets]
        lv = kernels.cascade_levels(g, sets[0], use_numba=use_numba)
        assert lv.tolist() == kernels.cascade_levels(g, sets[0], use_numba=not use_numba).tolist()


def test_sigma_many_matches_single():
    g = p3_gadget()
    sets = [[], [A], [B], [A, C]]
    assert sigma_many(g, sets).tolist() == [sigma(g, s) for s in sets]


@st.composite
def graph_and_seeds(draw):
    n = draw(st.integers(1, 8))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    w = draw(st.lists(st.integers(1, 3), min_size=len(chosen), max_size=len(chosen)))
    b = draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    s1 = draw(st.sets(st.integers(0, n - 1)))
    s2 = draw(st.sets(st.integers(0, n - 1)))
    edges = [(u, v, float(x)) for (u, v), x in zip(chosen, w)]
    return Graph.from_edges(n, edges, np.array(b, float)), s1, s2


@settings(max_examples=150, deadline=None)
@given(graph_and_seeds())
def test_cascade_invariants(data):
    g, s1, s2 = data
    t = run_cascade(g, s1)
    assert t.steps[0] == frozenset(s1)
    for a, b in zip(t.steps, t.steps[1:]):
        assert a < b
    assert len(t.steps) - 1 <= g.node_count
    # with positive barricades each newcomer has an active in-neighbour
    for prev, cur in zip(t.steps, t.steps[1:]):
        for u in cur - prev:
            assert any(z in prev for z, _ in g.in_edges(u))
    # seed monotonicity
    assert sigma(g, s1) <= sigma(g, s1 | s2)
    assert run_cascade(g, s1) == t
