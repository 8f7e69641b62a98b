"""Merge-based weakly convex hulls over compactly represented blocks.

A representation scheme supplies the handful of block operations the merge
loop needs (see :class:`RepresentationScheme`).  Starting from one block per
input point, any two blocks whose distance is at most ``theta`` are replaced
by their merge until all remaining blocks are more than ``theta`` apart; the
survivors are the blocks of the ``theta``-decomposition of the hull.

Two drivers are provided.  :func:`weak_hull_int_naive` rescans all pairs after
every merge.  :func:`weak_hull_int` keeps a FIFO queue of candidate index
pairs, a live flag per block index and a lazily filled distance table indexed
by creation order, so each block's distances are computed exactly once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Hashable, Protocol, Sequence

import numpy as np

from .errors import OverlappingExamples
from .metric import TAU


class RepresentationScheme(Protocol):
    """Operations a block representation must provide.

    ``merge_blocks`` is only called for blocks at distance at most ``theta``;
    it receives the full input list so that schemes may re-hull the input
    points covered by either block.
    """

    def singleton(self, x) -> Any: ...

    def block_distance(self, a, b) -> float: ...

    def merge_blocks(self, theta: float, points: Sequence, a, b) -> Any: ...

    def member(self, block, x) -> bool: ...

    def blocks_equal(self, a, b) -> bool: ...

    def key(self, block) -> Hashable: ...


def within(d, theta) -> bool:
    return d <= theta + TAU * max(1.0, theta)


@dataclass(frozen=True)
class BlockSet:
    """Blocks of a ``theta``-decomposition, sorted by the scheme's key.

    ``created`` counts the block indices allocated by the run that produced
    it (initial blocks plus one per merge).
    """

    blocks: tuple
    theta: float
    created: int = 0

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def covers(self, scheme, x) -> bool:
        return any(scheme.member(b, x) for b in self.blocks)

    def same_as(self, other: "BlockSet", scheme) -> bool:
        return ({scheme.key(b) for b in self.blocks} == {scheme.key(b) for b in other.blocks}
                and len(self.blocks) == len(other.blocks))


def _finish(scheme, blocks, theta, created) -> BlockSet:
    return BlockSet(tuple(sorted(blocks, key=scheme.key)), theta, created)


def _unique_singletons(scheme, points):
    seen = {}
    for x in points:
        b = scheme.singleton(x)
        seen.setdefault(scheme.key(b), b)
    return list(seen.values())


def weak_hull_int_naive(scheme, points: Sequence, theta: float) -> BlockSet:
    """Merge any pair of blocks within ``theta`` until none is left (``O(m^3)`` distance calls)."""
    if theta < 0:
        raise ValueError("theta must be non-negative")
    points = list(points)
    # a dict keyed by representation plays the role of the block *set*
    blocks = {scheme.key(b): b for b in _unique_singletons(scheme, points)}
    created = len(blocks)
    while True:
        items = list(blocks.values())
        pair = next(((a, b) for a, b in combinations(items, 2)
                     if within(scheme.block_distance(a, b), theta)), None)
        if pair is None:
            break
        a, b = pair
        merged = scheme.merge_blocks(theta, points, a, b)
        del blocks[scheme.key(a)], blocks[scheme.key(b)]
        blocks[scheme.key(merged)] = merged
        created += 1
    return _finish(scheme, blocks.values(), theta, created)


def _merge_queue(scheme, initial: list, theta: float, points: list):
    """Queue-driven merging from ``initial`` blocks.

    Returns ``(live blocks, created, gap)`` where ``gap`` is the smallest
    distance between two surviving blocks, read off the distance table.
    """
    m = len(initial)
    cap = max(1, 2 * m)
    store: list = list(initial)
    live = [True] * m
    dist = np.full((cap, cap), np.nan)
    queue: deque = deque()
    for i, j in combinations(range(m), 2):
        d = scheme.block_distance(store[i], store[j])
        dist[i, j] = dist[j, i] = d
        if within(d, theta):
            queue.append((i, j))
    n_live = m
    while queue and n_live > 1:
        i, j = queue.popleft()
        if not (live[i] and live[j]):
            continue
        new = len(store)
        store.append(scheme.merge_blocks(theta, points, store[i], store[j]))
        live[i] = live[j] = False
        live.append(True)
        n_live -= 1
        for t in range(new):
            if live[t]:
                d = scheme.block_distance(store[t], store[new])
                dist[t, new] = dist[new, t] = d
                if within(d, theta):
                    queue.append((t, new))
    alive = np.flatnonzero(live)
    gap = np.nanmin(dist[np.ix_(alive, alive)]) if alive.size > 1 else np.inf
    return [store[i] for i in alive], len(store), float(gap)


def weak_hull_int(scheme, points: Sequence, theta: float) -> BlockSet:
    """Queue-based hull: ``O(m T_S + m^2 T_D + m T_M)``.

    Block indices ``0..m-1`` hold the singletons, each merge appends one more;
    at most ``2m - 1`` indices are ever used.  Pairs whose endpoint has been
    merged away are dropped when dequeued.
    """
    if theta < 0:
        raise ValueError("theta must be non-negative")
    points = list(points)
    blocks, created, _ = _merge_queue(scheme, _unique_singletons(scheme, points), theta, points)
    return _finish(scheme, blocks, theta, created)


def _consistent(scheme, blocks, negatives) -> bool:
    return not any(scheme.member(b, x) for b in blocks for x in negatives)


def _min_gap(scheme, blocks):
    best = np.inf
    for a, b in combinations(blocks, 2):
        best = min(best, scheme.block_distance(a, b))
    return best


def candidate_thetas(scheme, points: Sequence) -> list[float]:
    """``{0}`` plus the distinct pairwise distances of ``points``, ascending.

    Schemes can override this through a ``candidate_thetas`` method.
    """
    custom = getattr(scheme, "candidate_thetas", None)
    if custom is not None:
        return sorted(set(custom(points)))
    singles = [scheme.singleton(x) for x in points]
    vals = {0.0}
    for a, b in combinations(singles, 2):
        vals.add(scheme.block_distance(a, b))
    return sorted(vals)


def chf_int(scheme, positives: Sequence, negatives: Sequence, k: int) -> BlockSet | None:
    """Consistent weakly convex hypothesis with at most ``k`` blocks, or ``None``.

    A binary search over :func:`candidate_thetas` of the positives brackets
    the largest consistent threshold between two adjacent candidates.  Block
    distances between merged blocks need not be candidate values, so the
    bracket is then refined by stepping through merge events: the hull is
    constant until ``theta`` reaches the smallest distance between its current
    blocks, at which point those blocks merge.  This stepping relies on blocks
    being convex, which holds for both bundled schemes above ``theta = 2``
    and is vacuous for integer candidate grids.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    positives = list(positives)
    negatives = list(negatives)
    pos_keys = {scheme.key(scheme.singleton(x)) for x in positives}
    clash = [x for x in negatives if scheme.key(scheme.singleton(x)) in pos_keys]
    if clash:
        raise OverlappingExamples(f"points labelled both + and -: {clash}")
    if not positives:
        return BlockSet((), 0.0, 0)

    cands = candidate_thetas(scheme, positives)
    lo, hi = 0, len(cands) - 1
    best = weak_hull_int(scheme, positives, cands[0])
    while lo < hi:
        mid = (lo + hi + 1) // 2
        hull = weak_hull_int(scheme, positives, cands[mid])
        if _consistent(scheme, hull.blocks, negatives):
            lo, best = mid, hull
        else:
            hi = mid - 1
    upper = cands[lo + 1] if lo + 1 < len(cands) else np.inf

    blocks = list(best.blocks)
    theta = best.theta
    created = best.created
    gap = _min_gap(scheme, blocks)
    # at ``upper`` the hull is already known to be inconsistent
    while len(blocks) > 1 and gap > theta and not within(upper, gap):
        nxt, made, nxt_gap = _merge_queue(scheme, blocks, gap, positives)
        if not _consistent(scheme, nxt, negatives):
            break
        created += made - len(blocks)
        blocks, theta, gap = nxt, gap, nxt_gap
    result = _finish(scheme, blocks, theta, created)
    return result if len(result) <= k else None


def hull_sweep(scheme, points: Sequence, start: float = 0.0, stop: float = np.inf):
    """Yield every distinct hull of ``points`` for ``theta`` in ``[start, stop]``.

    Each step jumps ``theta`` to the smallest distance between the current
    blocks (assumes convex blocks, as in :func:`chf_int`) and recomputes the
    hull from scratch with the naive driver.
    """
    points = list(points)
    theta = start
    while True:
        hull = weak_hull_int_naive(scheme, points, theta)
        yield hull
        if len(hull) <= 1:
            return
        gap = _min_gap(scheme, hull.blocks)
        if gap > stop:
            return
        theta = gap


__all__ = [
    "BlockSet",
    "RepresentationScheme",
    "candidate_thetas",
    "chf_int",
    "hull_sweep",
    "weak_hull_int",
    "weak_hull_int_naive",
    "within",
]
