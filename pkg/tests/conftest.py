import random

import numpy as np
import pytest
from hypothesis import strategies as st

from bisfptas import build, gen_random

ACCEPTANCE_LINES = []


def naive_count(g):
    """Count independent sets by testing all 2^(n+m) vertex subsets.

    Bits 0..n-1 are left vertices, n..n+m-1 right vertices.  Shares nothing
    with the library's enumeration beyond the edge list.
    """
    total = g.n + g.m
    subsets = np.arange(1 << total, dtype=np.int64)
    ok = np.ones(subsets.shape, dtype=bool)
    for u, v in g.edges():
        both = ((subsets >> u) & 1) & ((subsets >> (g.n + v)) & 1)
        ok &= both == 0
    return int(ok.sum())


def naive_count_removed(g, removed_left=(), removed_right=()):
    keep_l = [u for u in range(g.n) if u not in set(removed_left)]
    keep_r = [v for v in range(g.m) if v not in set(removed_right)]
    idx_l = {u: i for i, u in enumerate(keep_l)}
    idx_r = {v: i for i, v in enumerate(keep_r)}
    sub = build(len(keep_l), len(keep_r),
                [(idx_l[u], idx_r[v]) for u, v in g.edges() if u in idx_l and v in idx_r])
    return naive_count(sub)


def random_graph(rng, n, m, max_left_degree=5):
    edges = []
    for u in range(n):
        d = rng.randint(0, min(max_left_degree, m))
        edges += [(u, v) for v in rng.sample(range(m), d)]
    return build(n, m, edges)


def decay_suite():
    """The fixed 100-graph suite: n, m <= 10, left degree <= 5, every third heavy."""
    graphs = []
    for seed in range(100):
        rng = random.Random(seed)
        n, m = rng.randint(1, 10), rng.randint(1, 10)
        style = "heavy" if seed % 3 == 0 else "bounded"
        graphs.append((seed, style, gen_random(n, m, 5, style, seed=seed)))
    return graphs


@st.composite
def graphs(draw, max_n=6, max_m=6, max_left_degree=5):
    n = draw(st.integers(0, max_n))
    m = draw(st.integers(0, max_m))
    edges = []
    for u in range(n):
        nbrs = draw(st.sets(st.integers(0, m - 1), max_size=min(max_left_degree, m))) if m else set()
        edges += [(u, v) for v in sorted(nbrs)]
    return build(n, m, edges)


@pytest.fixture
def acceptance_log():
    def record(criterion, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
