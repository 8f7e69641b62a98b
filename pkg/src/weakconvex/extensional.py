"""Extensional weakly convex hulls on finite metric spaces.

:func:`weak_hull_ext` is the queue-based hull algorithm: points are moved
from a FIFO queue into the closed set ``C`` one at a time, each new point is
linked to the already closed points within ``theta`` and every unmarked point
on the segment between such a pair is enqueued.  The blocks of the result are
the connected components of the ``theta``-neighbourhood graph accumulated on
the way.

:func:`chf_ext` and :func:`min_blocks_ext` search the distance spectrum of the
space for the largest ``theta`` whose hull of the positives avoids every
negative.  Hulls only grow with ``theta`` and blocks only coalesce, so that
``theta`` also minimises the number of blocks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import DisconnectedGraph, NonPositiveWeight, OverlappingExamples, UnknownPoint
from .metric import TAU, FiniteMetricSpace, build_space


@dataclass(frozen=True)
class ThetaDecomposition:
    """The unique partition of a ``theta``-convex set into ``theta``-blocks.

    Blocks are frozensets of point indices, ordered by their smallest member.
    """

    theta: float
    blocks: tuple[frozenset, ...] = field(default_factory=tuple)

    @property
    def hull(self) -> frozenset:
        return frozenset().union(*self.blocks)

    def __len__(self):
        return len(self.blocks)

    def block_of(self, x: int):
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        return None

    def as_ids(self, space: FiniteMetricSpace) -> list[list]:
        return [space.ids_of(sorted(b)) for b in self.blocks]


def _sorted_blocks(groups: Iterable[Iterable[int]]) -> tuple[frozenset, ...]:
    blocks = [frozenset(int(v) for v in g) for g in groups]
    blocks = [b for b in blocks if b]
    blocks.sort(key=min)
    return tuple(blocks)


def _grow(space, start, theta, forbidden=None, limit=None):
    """Queue loop shared by the hull and the early-exit probes.

    Every marked point belongs to the hull, so the loop may stop as soon as a
    ``forbidden`` point is marked or ``limit`` points are marked; it then
    returns ``None``.
    """
    n = space.n
    D = space.scan_dist
    exact = space.exact

    marked = np.zeros(n, dtype=bool)
    closed = np.zeros(n, dtype=bool)
    marked[start] = True
    count = int(marked.sum())
    queue = deque(start.tolist())
    eu: list[np.ndarray] = []
    ev: list[np.ndarray] = []

    while queue:
        x = queue.popleft()
        closed[x] = True
        near = space.ball(x, theta)
        ys = near[closed[near]]
        ys = ys[ys != x]
        if ys.size == 0:
            continue
        eu.append(np.full(ys.size, x, dtype=np.intp))
        ev.append(ys)
        # witnesses of (x, y) lie within dist(x, y) <= theta of x
        zs = near[~marked[near]]
        if zs.size == 0:
            continue
        if exact:
            # dist(x, z) + dist(z, y) - dist(x, y) is never negative; look for zeros
            if 4 * zs.size > n:
                gap = D.take(ys, axis=0)
                gap += D[x][None, :]
                gap -= D[x, ys][:, None]
                found = ~gap.all(axis=0)[zs]
            else:
                gap = D.take(ys, axis=0).take(zs, axis=1)
                gap += D[x, zs][None, :]
                gap -= D[x, ys][:, None]
                found = ~gap.all(axis=0)
        else:
            dxy = D[x, ys]
            lhs = D[x, zs][None, :] + D.take(ys, axis=0).take(zs, axis=1)
            hit = np.abs(lhs - dxy[:, None]) <= TAU * np.maximum(1.0, dxy)[:, None]
            found = hit.any(axis=0)
        new = zs[found]
        if new.size:
            new.sort()
            marked[new] = True
            queue.extend(new.tolist())
            count += new.size
            if forbidden is not None and forbidden[new].any():
                return None
            if limit is not None and count >= limit:
                return None
    return closed, eu, ev


def weak_hull_ext(space: FiniteMetricSpace, A: Iterable[int], theta: float) -> ThetaDecomposition:
    """``theta``-decomposition of the weakly convex hull of ``A``.

    Runs in ``O(n d^2)`` for ``d`` the maximum degree of the final
    ``theta``-neighbourhood graph; the inner witness scan is vectorised over
    all closed neighbours of the dequeued point at once.
    """
    if theta < 0:
        raise ValueError("theta must be non-negative")
    start = space.check_points(A)
    closed, eu, ev = _grow(space, start, theta)
    n = space.n
    members = np.flatnonzero(closed)
    if members.size == 0:
        return ThetaDecomposition(theta)
    if not eu:
        return ThetaDecomposition(theta, _sorted_blocks([v] for v in members))
    u = np.concatenate(eu)
    v = np.concatenate(ev)
    graph = sparse.coo_matrix((np.ones(u.size, dtype=np.int8), (u, v)), shape=(n, n))
    _, labels = csgraph.connected_components(graph, directed=False)
    lab = labels[members]
    order = np.argsort(lab, kind="stable")
    splits = np.flatnonzero(np.diff(lab[order])) + 1
    return ThetaDecomposition(theta, _sorted_blocks(np.split(members[order], splits)))


def _check_examples(space, positives, negatives):
    pos = space.check_points(positives)
    neg = space.check_points(negatives)
    both = np.intersect1d(pos, neg)
    if both.size:
        raise OverlappingExamples(f"points labelled both + and -: {both.tolist()}")
    return pos, neg


def _largest_consistent(space, pos, neg, candidates):
    """Binary search for the largest candidate whose hull of ``pos`` avoids ``neg``.

    Candidate ``0`` is always consistent since the 0-hull of ``pos`` is
    ``pos`` itself.  Returns ``(theta, decomposition)``.
    """
    negmask = np.zeros(space.n, dtype=bool)
    negmask[neg] = True
    pos = np.asarray(pos, dtype=np.intp)

    # probes abort on the first marked negative; only the winner is decomposed
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _grow(space, pos, candidates[mid], forbidden=negmask) is not None:
            lo = mid
        else:
            hi = mid - 1
    return candidates[lo], weak_hull_ext(space, pos, candidates[lo])


def hull_size_below(space: FiniteMetricSpace, A: Iterable[int], theta: float, limit: int) -> bool:
    """Whether the hull of ``A`` has fewer than ``limit`` points, stopping early if not."""
    start = space.check_points(A)
    if start.size >= limit:
        return False
    return _grow(space, start, theta, limit=limit) is not None


def chf_ext(space: FiniteMetricSpace, positives: Iterable[int], negatives: Iterable[int],
            k: int) -> ThetaDecomposition | None:
    """Consistent hypothesis with at most ``k`` blocks, or ``None``.

    The candidate thresholds are ``{0}`` plus the distinct pairwise distances;
    the hull is constant between consecutive candidates.  The returned
    decomposition is the one at the largest consistent candidate, which has
    the fewest blocks among all consistent ones.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    pos, neg = _check_examples(space, positives, negatives)
    cands = space.distance_spectrum().tolist()
    _, dec = _largest_consistent(space, pos, neg, cands)
    return dec if len(dec) <= k else None


def min_blocks_ext(space: FiniteMetricSpace, positives: Iterable[int],
                   negatives: Iterable[int]) -> ThetaDecomposition:
    """Consistent decomposition with the minimum number of blocks over all ``theta``."""
    pos, neg = _check_examples(space, positives, negatives)
    if pos.size == 0:
        raise ValueError("need at least one positive example")
    _, dec = _largest_consistent(space, pos, neg, space.distance_spectrum().tolist())
    return dec


def largest_consistent_theta(space, positives, negatives):
    """``(theta, decomposition)`` for the greatest consistent threshold."""
    pos, neg = _check_examples(space, positives, negatives)
    return _largest_consistent(space, pos, neg, space.distance_spectrum().tolist())


def geodesic_space(vertices: Sequence | int, edges: Iterable[Sequence],
                   weights: Sequence[float] | None = None) -> FiniteMetricSpace:
    """Shortest-path metric of a connected undirected graph.

    ``vertices`` is a list of ids or a vertex count; ``edges`` are id pairs,
    optionally ``(u, v, w)`` triples when ``weights`` is not given.  Unit
    weights give an exact integer metric via breadth-first search, otherwise
    Dijkstra from every source is used.
    """
    ids = list(range(vertices)) if isinstance(vertices, (int, np.integer)) else list(vertices)
    index = {p: i for i, p in enumerate(ids)}
    n = len(ids)
    us, vs, ws = [], [], []
    for e in edges:
        u, v = e[0], e[1]
        w = e[2] if len(e) > 2 else None
        for p in (u, v):
            if p not in index:
                raise UnknownPoint(f"edge endpoint {p!r} is not a vertex")
        us.append(index[u])
        vs.append(index[v])
        ws.append(w)
    if weights is not None:
        ws = list(weights)
        if len(ws) != len(us):
            raise ValueError("one weight per edge required")
    weighted = any(w is not None for w in ws)
    if weighted:
        ws = [1.0 if w is None else float(w) for w in ws]
        for (u, v, w) in zip(us, vs, ws):
            if not w > 0:
                raise NonPositiveWeight(f"edge ({ids[u]!r}, {ids[v]!r}) has weight {w}")
    if n == 0:
        return build_space([], np.zeros((0, 0)))

    w = np.asarray(ws if weighted else [1.0] * len(us), dtype=float)
    if us:
        # keep the lightest of parallel edges
        a = np.minimum(us, vs)
        b = np.maximum(us, vs)
        key = a.astype(np.int64) * n + b
        order = np.lexsort((w, key))
        first = np.ones(order.size, dtype=bool)
        first[1:] = key[order][1:] != key[order][:-1]
        sel = order[first]
        a, b, w = a[sel], b[sel], w[sel]
        loops = a == b
        a, b, w = a[~loops], b[~loops], w[~loops]
    else:
        a = b = np.zeros(0, dtype=np.intp)
    graph = sparse.coo_matrix((w, (a, b)), shape=(n, n)).tocsr()
    ncomp, _ = csgraph.connected_components(graph, directed=False)
    if ncomp > 1:
        raise DisconnectedGraph(f"graph has {ncomp} connected components")
    if weighted:
        dist = csgraph.shortest_path(graph, method="D", directed=False)
        if np.all(w == np.rint(w)) and w.size and w.max() < 2**31:
            dist = np.rint(dist).astype(np.int64)
    else:
        dist = csgraph.shortest_path(graph, method="D", directed=False, unweighted=True)
        dist = np.rint(dist).astype(np.int32)
    return FiniteMetricSpace(ids, dist)
