import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import Delaunay

from weakconvex.bench import (BenchConfig, BenchGraph, TargetConcept, _delaunay_edges,
                              delaunay_graph, derive_seed, gen_target, prune_edges,
                              rows_to_csv, run_suite, run_task, summarize)
from weakconvex.errors import DegenerateInput, EmptyEvalSet, TargetGenerationFailed
from weakconvex.extensional import geodesic_space
from weakconvex.metric import is_closed, preclosure

import oracles


def test_triangle_graph():
    g = delaunay_graph(3, seed=0)
    assert len(g.edges) == 3          # 5% of 3 edges rounds down to none
    with pytest.raises(DegenerateInput):
        delaunay_graph(2)


def test_deterministic_and_planar():
    a = delaunay_graph(250, seed=11)
    b = delaunay_graph(250, seed=11)
    assert np.array_equal(a.edges, b.edges) and np.array_equal(a.points, b.points)
    full = _delaunay_edges(a.points)
    assert len(full) <= 3 * 250 - 6
    assert len(a.edges) == len(full) - math.floor(0.05 * len(full))


def test_weighted_same_topology():
    a = delaunay_graph(250, weighted=False, seed=4)
    b = delaunay_graph(250, weighted=True, seed=4)
    assert np.array_equal(a.edges, b.edges)
    sa, sb = a.space(), b.space()
    assert sa.exact and not sb.exact
    assert not np.allclose(sa.dist, sb.dist)


@pytest.mark.parametrize("n", [4, 10, 25, 50])
def test_empty_circumcircles(n):
    pts = np.random.default_rng(n).random((n, 2))
    tri = Delaunay(pts)
    assert oracles.empty_circumcircles(pts, tri.simplices)


def test_pruning_ties_and_reconnection():
    # a path with one long edge that alone keeps vertex 3 attached; it must come back
    edges = np.array([[0, 1], [1, 2], [2, 3], [0, 2]])
    lengths = np.array([1.0, 1.0, 5.0, 2.0])
    kept = prune_edges(4, edges, lengths, fraction=0.25)
    assert sorted(kept.tolist()) == [0, 1, 2, 3]
    # two equally long edges, only one may go: the lexicographically smaller endpoints
    edges = np.array([[0, 1], [1, 2], [2, 3], [0, 3]])
    lengths = np.array([1.0, 2.0, 1.0, 2.0])
    kept = prune_edges(4, edges, lengths, fraction=0.25)
    assert sorted(kept.tolist()) == [0, 1, 2]


def test_graph_connected_after_pruning():
    for seed in range(5):
        g = delaunay_graph(120, seed=seed)
        g.space()   # raises if pruning disconnected the graph


def test_path_target_is_prefix():
    path = geodesic_space(9, [(i, i + 1) for i in range(8)])
    t = gen_target(path, seeds=[0])
    assert t.positives == {0}
    t = gen_target(path, seeds=[0, 2])
    assert t.positives == {0, 1, 2}
    assert preclosure(path, t.positives, t.theta_true) == t.positives
    with pytest.raises(TargetGenerationFailed):
        gen_target(path, seeds=[0, 2, 4, 6, 8])


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**31), st.booleans())
def test_target_invariants(seed, weighted):
    g = delaunay_graph(80, weighted, seed=seed)
    t = gen_target(g, seed)
    n = g.n
    assert 2 * len(t.positives) < n
    assert len(t.positives) >= 0.3 * n
    assert t.positives | t.negatives == set(range(n)) and not t.positives & t.negatives
    assert is_closed(g.space(), t.positives, t.theta_true)


def test_run_task_basics():
    g = delaunay_graph(250, seed=3)
    t = gen_target(g, 3)
    a = run_task(g, t, 40, seed=9)
    b = run_task(g, t, 40, seed=9)
    assert (a.accuracy, a.theta_learned) == (b.accuracy, b.theta_learned)
    assert 0 <= a.accuracy <= 1 and 0.5 <= a.baseline <= 1
    assert a.baseline == max(len(t.positives), 250 - len(t.positives)) / 250
    with pytest.raises(EmptyEvalSet):
        run_task(g, t, 250, seed=1)


def test_fully_informative_sample():
    # positives: one end of a path; every vertex but one is in the training set
    path = geodesic_space(12, [(i, i + 1) for i in range(11)])
    t = TargetConcept(frozenset(range(5)), frozenset(range(5, 12)), 4)
    r = run_task(path, t, 10, seed=0)
    assert r.accuracy == 1.0


def test_suite_counts_and_seeds():
    cfg = BenchConfig(graph_sizes=[60], n_graphs=2, n_targets=2, train_sizes=[10, 20], seed=5)
    rows = run_suite(cfg)
    assert len(rows) == cfg.n_tasks() == 8
    assert len({r["graph_seed"] for r in rows}) == 2
    cfg.record_timing = False
    assert rows_to_csv(run_suite(cfg)) == rows_to_csv(run_suite(cfg))
    assert run_suite(BenchConfig()) == []
    assert rows_to_csv([]).count("\n") == 1
    cells = summarize(rows)
    assert [(c["train_size"], c["tasks"]) for c in cells] == [(10, 4), (20, 4)]
    assert derive_seed(5, 60, 0) == derive_seed(5, 60, 0) != derive_seed(6, 60, 0)


def test_desk_config_size():
    assert BenchConfig.desk().n_tasks() == 250
    assert BenchConfig.full(weighted=[False]).n_tasks() == 4 * 5000


def test_partial_rows_on_failure(monkeypatch):
    import weakconvex.bench as bench
    calls = {"n": 0}
    real = bench.run_task

    def flaky(*a, **k):
        calls["n"] += 1
        if calls["n"] > 3:
            raise RuntimeError("boom")
        return real(*a, **k)

    monkeypatch.setattr(bench, "run_task", flaky)
    cfg = BenchConfig(graph_sizes=[40], n_graphs=3, n_targets=1, train_sizes=[6, 8], seed=1)
    seen = []
    with pytest.raises(RuntimeError) as err:
        run_suite(cfg, on_rows=seen.extend)
    assert len(err.value.partial_rows) == len(seen) == 2


def test_bench_graph_from_parts():
    g = BenchGraph(np.zeros((3, 2)), np.array([[0, 1], [1, 2]]), np.array([1.0, 2.0]), True)
    assert g.space().dist[0, 2] == 3.0
