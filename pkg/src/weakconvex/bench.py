"""Vertex classification on random Delaunay graphs.

Pipeline per task:

1. :func:`delaunay_graph` samples points in the unit square, triangulates
   them and drops the longest 5% of the edges;
2. :func:`gen_target` grows the weakly convex hull of a few random seed
   vertices and keeps the largest threshold for which the hull still covers
   less than half of the graph; that hull is the positive class;
3. :func:`run_task` samples a balanced training set, learns the hull of the
   positive examples for the greatest threshold that excludes every negative
   example, and scores it on the remaining vertices against the majority
   baseline.

:func:`run_suite` runs the cross product of graph sizes, graphs, targets and
training sizes with per-task random streams derived from one master seed.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.spatial import Delaunay, QhullError

from .errors import DegenerateInput, EmptyEvalSet, TargetGenerationFailed
from .extensional import (geodesic_space, hull_size_below, largest_consistent_theta,
                          weak_hull_ext)
from .metric import FiniteMetricSpace, is_closed

PRUNE_FRACTION = 0.05
MIN_POSITIVE_FRACTION = 0.3
RESAMPLE_CAP = 20
TARGET_RETRY_CAP = 50
#: number of random seed vertices the target hull is grown from
TARGET_SEEDS = (2, 6)


@dataclass
class BenchGraph:
    points: np.ndarray        # (n, 2) coordinates in [0, 1]^2
    edges: np.ndarray         # (m, 2) vertex index pairs, u < v
    lengths: np.ndarray       # (m,) Euclidean edge lengths
    weighted: bool = False
    seed: int | None = None
    _space: FiniteMetricSpace | None = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.points)

    def space(self) -> FiniteMetricSpace:
        """Geodesic metric over the vertices (cached)."""
        if self._space is None:
            if self.weighted:
                triples = [(int(u), int(v), float(w)) for (u, v), w in zip(self.edges, self.lengths)]
                self._space = geodesic_space(self.n, triples)
            else:
                self._space = geodesic_space(self.n, [tuple(e) for e in self.edges.tolist()])
        return self._space

    def with_weights(self, weighted: bool) -> "BenchGraph":
        return BenchGraph(self.points, self.edges, self.lengths, weighted, self.seed)


def _delaunay_edges(points: np.ndarray) -> np.ndarray:
    tri = Delaunay(points)
    s = np.sort(tri.simplices, axis=1)
    e = np.concatenate([s[:, [0, 1]], s[:, [1, 2]], s[:, [0, 2]]])
    return np.unique(e, axis=0)


def _components(n, edges):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count, find, parent


def prune_edges(n: int, edges: np.ndarray, lengths: np.ndarray,
                fraction: float = PRUNE_FRACTION) -> np.ndarray:
    """Indices of the edges kept after dropping the longest ``floor(fraction * m)``.

    Ties in length are broken by lexicographic endpoint order.  If the graph
    falls apart, removed edges are restored shortest first until it is
    connected again.
    """
    m = len(edges)
    drop = int(math.floor(fraction * m))
    order = np.lexsort((edges[:, 1], edges[:, 0], -lengths))   # longest first
    removed = order[:drop]
    kept = np.sort(order[drop:])
    count, find, parent = _components(n, edges[kept].tolist())
    if count > 1:
        back = removed[np.lexsort((edges[removed, 1], edges[removed, 0], lengths[removed]))]
        restore = []
        for i in back:
            u, v = edges[i]
            ru, rv = find(int(u)), find(int(v))
            restore.append(i)
            if ru != rv:
                parent[ru] = rv
                count -= 1
                if count == 1:
                    break
        kept = np.sort(np.concatenate([kept, restore]))
    return kept


def delaunay_graph(n: int, weighted: bool = False, seed: int | None = None) -> BenchGraph:
    """Pruned Delaunay graph on ``n`` uniform points in the unit square."""
    if n < 3:
        raise DegenerateInput("need at least 3 points")
    rng = np.random.default_rng(seed)
    for _ in range(RESAMPLE_CAP):
        pts = rng.random((n, 2))
        if len(np.unique(pts, axis=0)) < n:
            continue
        try:
            edges = _delaunay_edges(pts)
        except QhullError:
            continue
        break
    else:
        raise DegenerateInput(f"no non-degenerate sample of {n} points in {RESAMPLE_CAP} tries")
    lengths = np.linalg.norm(pts[edges[:, 0]] - pts[edges[:, 1]], axis=1)
    kept = prune_edges(n, edges, lengths)
    return BenchGraph(pts, edges[kept], lengths[kept], weighted, seed)


@dataclass(frozen=True)
class TargetConcept:
    positives: frozenset
    negatives: frozenset
    theta_true: float
    seeds: tuple = ()


def _largest_theta_below_half(space, seeds, spectrum):
    limit = (space.n + 1) // 2      # 2 |hull| < n  <=>  |hull| < ceil(n / 2)
    lo, hi = 0, len(spectrum) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if hull_size_below(space, seeds, spectrum[mid], limit):
            lo = mid
        else:
            hi = mid - 1
    return spectrum[lo], weak_hull_ext(space, seeds, spectrum[lo])


def gen_target(graph: BenchGraph | FiniteMetricSpace, seed: int | None = None,
               n_seeds: tuple[int, int] = TARGET_SEEDS,
               min_fraction: float = MIN_POSITIVE_FRACTION,
               seeds=None) -> TargetConcept:
    """Random weakly convex positive class covering less than half the vertices.

    A handful of seed vertices is drawn; over the distance spectrum the
    largest ``theta`` with ``2 |hull| < |V|`` is chosen and the hull becomes
    the positive class.  Draws whose hull stays below ``min_fraction`` of the
    vertices are rejected.  Passing ``seeds`` grows that set once and skips
    the size floor.
    """
    space = graph.space() if isinstance(graph, BenchGraph) else graph
    n = space.n
    rng = np.random.default_rng(seed)
    spectrum = space.distance_spectrum().tolist()
    fixed = seeds is not None
    for _ in range(1 if fixed else TARGET_RETRY_CAP):
        if fixed:
            chosen = space.check_points(seeds)
        else:
            s = int(rng.integers(n_seeds[0], n_seeds[1] + 1))
            chosen = np.sort(rng.choice(n, size=min(s, n), replace=False))
        theta, dec = _largest_theta_below_half(space, chosen, spectrum)
        hull = dec.hull
        if 2 * len(hull) < n and (fixed or len(hull) >= min_fraction * n):
            if not is_closed(space, hull, theta):
                raise AssertionError("generated target is not weakly convex")
            return TargetConcept(frozenset(hull), frozenset(range(n)) - hull,
                                 theta, tuple(chosen.tolist()))
    raise TargetGenerationFailed(
        "seed set covers half the vertices" if fixed
        else f"no balanced target after {TARGET_RETRY_CAP} draws")


@dataclass(frozen=True)
class TaskResult:
    accuracy: float
    baseline: float
    theta_learned: float
    theta_true: float
    graph_size: int
    train_size: int
    weighted: bool = False
    graph_seed: int | None = None
    target_seed: int | None = None
    task_seed: int | None = None
    wall_ms: float = 0.0
    n_blocks: int = 0


def run_task(graph: BenchGraph | FiniteMetricSpace, target: TargetConcept, m_train: int,
             seed: int | None = None) -> TaskResult:
    """Train on ``m_train`` balanced examples and score on the rest."""
    t0 = time.perf_counter()
    space = graph.space() if isinstance(graph, BenchGraph) else graph
    n = space.n
    if m_train >= n:
        raise EmptyEvalSet(f"{m_train} training examples leave no vertex of {n} to evaluate")
    n_pos = m_train // 2
    n_neg = m_train - n_pos
    vpos = np.array(sorted(target.positives))
    vneg = np.array(sorted(target.negatives))
    if n_pos > len(vpos) or n_neg > len(vneg):
        raise ValueError("not enough vertices of one class for a balanced training set")
    rng = np.random.default_rng(seed)
    e_pos = rng.choice(vpos, size=n_pos, replace=False) if n_pos else np.zeros(0, dtype=int)
    e_neg = rng.choice(vneg, size=n_neg, replace=False) if n_neg else np.zeros(0, dtype=int)

    theta, dec = largest_consistent_theta(space, e_pos, e_neg)
    predicted = np.zeros(n, dtype=bool)
    hull = np.fromiter(dec.hull, dtype=np.intp, count=len(dec.hull))
    predicted[hull] = True
    if not predicted[e_pos].all() or predicted[e_neg].any():
        raise AssertionError("learned hypothesis is inconsistent with the training set")

    truth = np.zeros(n, dtype=bool)
    truth[vpos] = True
    evaluate = np.ones(n, dtype=bool)
    evaluate[e_pos] = False
    evaluate[e_neg] = False
    accuracy = float(np.mean(predicted[evaluate] == truth[evaluate]))
    baseline = max(len(vpos), len(vneg)) / n
    weighted = isinstance(graph, BenchGraph) and graph.weighted
    return TaskResult(
        accuracy=accuracy, baseline=baseline, theta_learned=float(theta),
        theta_true=float(target.theta_true), graph_size=n, train_size=m_train,
        weighted=weighted, task_seed=seed,
        wall_ms=(time.perf_counter() - t0) * 1e3, n_blocks=len(dec))


# -- suites -----------------------------------------------------------------

CSV_COLUMNS = ["graph_size", "graph_seed", "target_seed", "train_size", "weighted",
               "accuracy", "baseline", "theta_learned", "theta_true", "wall_ms"]


@dataclass
class BenchConfig:
    graph_sizes: Sequence[int] = ()
    n_graphs: int = 0
    n_targets: int = 0
    train_sizes: Sequence[int] = ()
    seed: int = 0
    weighted: Sequence[bool] = (False,)
    workers: int = 1
    record_timing: bool = True

    @classmethod
    def desk(cls, seed: int = 0, **kw) -> "BenchConfig":
        """10 graphs x 5 targets x {20..100} at |V| = 250."""
        base = dict(graph_sizes=[250], n_graphs=10, n_targets=5,
                    train_sizes=[20, 40, 60, 80, 100], seed=seed)
        base.update(kw)
        return cls(**base)

    @classmethod
    def full(cls, seed: int = 0, **kw) -> "BenchConfig":
        """Full grid: 50 graphs x 20 targets x 5 training sizes per graph size."""
        base = dict(graph_sizes=[100, 250, 1000, 2500], n_graphs=50, n_targets=20,
                    train_sizes=[20, 40, 60, 80, 100], seed=seed, weighted=[False, True])
        base.update(kw)
        return cls(**base)

    def n_tasks(self) -> int:
        return (len(self.graph_sizes) * self.n_graphs * self.n_targets
                * len(self.train_sizes) * len(self.weighted))


def derive_seed(master: int, *key: int) -> int:
    """63-bit seed for the stream identified by ``key`` under ``master``."""
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def _graph_job(args):
    """All tasks on one graph: one target per index, every training size."""
    size, g, config = args
    gseed = derive_seed(config.seed, size, g)
    base = delaunay_graph(size, seed=gseed)
    rows = []
    for weighted in config.weighted:
        graph = base.with_weights(bool(weighted))
        for t in range(config.n_targets):
            tseed = derive_seed(config.seed, size, g, t, int(weighted))
            target = gen_target(graph, tseed)
            for m in config.train_sizes:
                kseed = derive_seed(config.seed, size, g, t, int(weighted), m)
                res = run_task(graph, target, m, kseed)
                row = {
                    "graph_size": size, "graph_seed": gseed, "target_seed": tseed,
                    "train_size": m, "weighted": bool(weighted),
                    "accuracy": res.accuracy, "baseline": res.baseline,
                    "theta_learned": res.theta_learned, "theta_true": res.theta_true,
                    "wall_ms": round(res.wall_ms, 3) if config.record_timing else 0.0,
                }
                rows.append(((size, g, int(weighted), t, m), row))
    return rows


def run_suite(config: BenchConfig,
              on_rows: Callable[[list[dict]], None] | None = None) -> list[dict]:
    """Execute every task of ``config``; rows come back sorted by task id.

    ``on_rows`` is called with each finished graph's rows, so callers can
    flush partial results; if a task fails the rows collected so far are
    attached to the exception as ``partial_rows``.
    """
    jobs = [(size, g, config) for size in config.graph_sizes for g in range(config.n_graphs)]
    if config.n_targets == 0 or not config.train_sizes or not config.weighted:
        jobs = []
    keyed: list = []

    def collect(rows):
        keyed.extend(rows)
        if on_rows is not None:
            on_rows([r for _, r in rows])

    try:
        if config.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                for rows in pool.map(_graph_job, jobs):
                    collect(rows)
        else:
            for job in jobs:
                collect(_graph_job(job))
    except Exception as exc:
        exc.partial_rows = [r for _, r in sorted(keyed, key=lambda kr: kr[0])]
        raise
    keyed.sort(key=lambda kr: kr[0])
    return [r for _, r in keyed]


def summarize(rows: Iterable[dict]) -> list[dict]:
    """Mean and standard deviation of accuracy and baseline per (size, weighted, train size)."""
    cells: dict = {}
    for r in rows:
        cells.setdefault((r["graph_size"], r["weighted"], r["train_size"]), []).append(r)
    out = []
    for (size, weighted, m), rs in sorted(cells.items()):
        acc = np.array([r["accuracy"] for r in rs])
        base = np.array([r["baseline"] for r in rs])
        out.append({
            "graph_size": size, "weighted": weighted, "train_size": m, "tasks": len(rs),
            "accuracy_mean": float(acc.mean()), "accuracy_std": float(acc.std()),
            "baseline_mean": float(base.mean()), "baseline_std": float(base.std()),
        })
    return out


def _fmt(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(round(v, 10))
    return str(v)


def rows_to_csv(rows: Iterable[dict], columns: Sequence[str] = CSV_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


SUMMARY_COLUMNS = ["graph_size", "weighted", "train_size", "tasks", "accuracy_mean",
                   "accuracy_std", "baseline_mean", "baseline_std"]


def summary_to_csv(summary: Iterable[dict]) -> str:
    return rows_to_csv(summary, SUMMARY_COLUMNS)


def task_result_dict(res: TaskResult) -> dict:
    return asdict(res)
