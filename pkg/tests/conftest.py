import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from barricade import Graph  # noqa: E402


def random_graph(rng, n_min=1, n_max=12, p=None, max_w=3, b_lo=0, b_hi=6, integer=True):
    """Random directed graph with integer (or real) weights and barricades."""
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.uniform(0.1, 0.7)) if p is None else p
    edges = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                w = float(rng.integers(1, max_w + 1)) if integer else float(rng.uniform(0.2, max_w))
                edges.append((u, v, w))
    if integer:
        b = rng.integers(b_lo, b_hi + 1, size=n).astype(float)
    else:
        b = rng.uniform(b_lo, b_hi, size=n)
    return Graph.from_edges(n, edges, b), edges, b.tolist()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
