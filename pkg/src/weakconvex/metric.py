"""Finite metric spaces, metric segments and the brute-force hull oracle.

Everything in here works on dense integer point indices ``0..n-1``.  The
external point ids given to :func:`build_space` are only kept for
translation at the boundary (see :meth:`FiniteMetricSpace.index_of`).

The oracle functions (:func:`preclosure`, :func:`hull_oracle`) evaluate the
definitions directly and are deliberately independent of the queue-based
hull algorithm in :mod:`weakconvex.extensional`; the test-suite uses them as
ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import AxiomViolation, DimensionMismatch, UnknownPoint

#: Relative tolerance for real-valued comparisons.
TAU = 1e-9

# Upper bound on the number of float entries materialised per oracle chunk.
_CHUNK_ELEMS = 1 << 22


class FiniteMetricSpace:
    """A validated finite metric space with precomputed sorted neighbour lists.

    Attributes
    ----------
    ids : tuple
        External point ids, ``ids[i]`` labels internal index ``i``.
    dist : ndarray, shape (n, n)
        Pairwise distances. Integer dtype when every distance is integral,
        in which case all comparisons are exact.
    order : ndarray, shape (n, n)
        ``order[x]`` lists all points sorted by distance from ``x`` (stable,
        ties by index); ``order[x, 0] == x``.
    sorted_dist : ndarray, shape (n, n)
        ``dist[x, order[x]]``.

    Instances are treated as immutable; the arrays are flagged read-only.
    """

    def __init__(self, ids: Sequence[Hashable], dist: np.ndarray):
        self.ids = tuple(ids)
        self.dist = dist
        self.exact = np.issubdtype(dist.dtype, np.integer)
        self._index = {p: i for i, p in enumerate(self.ids)}
        if len(self._index) != len(self.ids):
            raise ValueError("point ids must be unique")
        self.order = np.argsort(dist, axis=1, kind="stable").astype(np.intp)
        self.sorted_dist = np.take_along_axis(dist, self.order, axis=1)
        for arr in (self.dist, self.order, self.sorted_dist):
            arr.flags.writeable = False
        self._scan = None

    @property
    def scan_dist(self) -> np.ndarray:
        """Distance matrix in the narrowest dtype that holds sums of two entries."""
        if self._scan is None:
            d = self.dist
            if self.exact and d.size and d.max() < 2**14:
                d = d.astype(np.int16)
            self._scan = d
        return self._scan

    @property
    def n(self) -> int:
        return len(self.ids)

    def __len__(self):
        return len(self.ids)

    def __repr__(self):
        kind = "exact" if self.exact else "real"
        return f"FiniteMetricSpace(n={self.n}, {kind})"

    # -- id translation -------------------------------------------------
    def index_of(self, point_id) -> int:
        try:
            return self._index[point_id]
        except KeyError:
            raise UnknownPoint(f"unknown point id {point_id!r}") from None

    def indices_of(self, point_ids: Iterable) -> list[int]:
        return [self.index_of(p) for p in point_ids]

    def ids_of(self, indices: Iterable[int]) -> list:
        return [self.ids[i] for i in indices]

    def check_points(self, points: Iterable[int]) -> np.ndarray:
        """Return ``points`` as a sorted unique index array, validating range."""
        arr = np.unique(np.fromiter((int(p) for p in points), dtype=np.intp))
        if arr.size and (arr[0] < 0 or arr[-1] >= self.n):
            bad = arr[0] if arr[0] < 0 else arr[-1]
            raise UnknownPoint(f"point index {int(bad)} not in 0..{self.n - 1}")
        return arr

    # -- tolerant comparisons -------------------------------------------
    def tol(self, ref: float) -> float:
        if self.exact:
            return 0
        return TAU * max(1.0, float(ref))

    def within(self, d, theta: float):
        """``d <= theta`` up to the space's tolerance (works elementwise)."""
        return d <= theta + self.tol(theta)

    # -- neighbourhoods ---------------------------------------------------
    def ball(self, x: int, delta: float) -> np.ndarray:
        """Indices of ``N_delta(x) = {y : dist(x, y) <= delta}``, nearest first."""
        cnt = np.searchsorted(self.sorted_dist[x], delta + self.tol(delta), side="right")
        return self.order[x, :cnt]

    def neighbors(self, x: int) -> list[tuple[int, float]]:
        """The sorted sequence ``S_x`` of ``(y, dist(x, y))`` over ``y != x``."""
        return [(int(y), self.sorted_dist[x, k].item())
                for k, y in enumerate(self.order[x]) if y != x]

    @property
    def neighbor_lists(self) -> list[list[tuple[int, float]]]:
        return [self.neighbors(x) for x in range(self.n)]

    def distance_spectrum(self) -> np.ndarray:
        """``{0}`` together with all distinct pairwise distances, ascending."""
        iu = np.triu_indices(self.n, k=1)
        vals = np.unique(np.concatenate([[0], self.dist[iu]]).astype(self.dist.dtype))
        if self.exact or vals.size < 2:
            return vals
        # collapse float duplicates that differ only by rounding noise
        keep = np.ones(vals.size, dtype=bool)
        last = vals[0]
        for i in range(1, vals.size):
            if vals[i] - last <= self.tol(last):
                keep[i] = False
            else:
                last = vals[i]
        return vals[keep]

    def diameter(self):
        return self.dist.max().item() if self.n else 0


def _as_matrix(matrix) -> np.ndarray:
    m = np.asarray(matrix)
    if m.dtype == object or not np.issubdtype(m.dtype, np.number):
        m = m.astype(float)
    if np.issubdtype(m.dtype, np.integer):
        return m.astype(np.int64)
    m = m.astype(float)
    if np.all(np.isfinite(m)) and np.all(m == np.rint(m)) and (m.size == 0 or np.abs(m).max() < 2**52):
        return m.astype(np.int64)
    return m


def build_space(ids: Sequence[Hashable], matrix, check_triangle: bool = True) -> FiniteMetricSpace:
    """Validate ``matrix`` as a metric over ``ids`` and precompute neighbour lists.

    Raises :class:`DimensionMismatch` if the matrix is not square or does not
    match ``ids``, and :class:`AxiomViolation` naming the first offending
    pair/triple otherwise.  ``check_triangle=False`` skips the ``O(n^3)``
    triangle check for metrics that hold by construction (shortest paths).
    """
    m = _as_matrix(matrix)
    ids = list(ids)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"distance matrix must be square, got shape {m.shape}")
    if m.shape[0] != len(ids):
        raise DimensionMismatch(f"{len(ids)} ids but matrix is {m.shape[0]}x{m.shape[1]}")
    n = len(ids)
    if not np.all(np.isfinite(m)):
        i, j = np.argwhere(~np.isfinite(m))[0]
        raise AxiomViolation("identity", (i, j), "non-finite distance")
    exact = np.issubdtype(m.dtype, np.integer)

    def tol(ref):
        return 0 if exact else TAU * np.maximum(1.0, ref)

    if np.any(m < 0):
        i, j = np.argwhere(m < 0)[0]
        raise AxiomViolation("identity", (i, j), "negative distance")
    diag = np.diagonal(m)
    if np.any(diag != 0):
        i = int(np.flatnonzero(diag != 0)[0])
        raise AxiomViolation("identity", (i, i), "dist(x, x) != 0")
    off = m + np.eye(n, dtype=m.dtype) * (1 if exact else 1.0)
    if np.any(off <= 0):
        i, j = np.argwhere(off <= 0)[0]
        raise AxiomViolation("identity", (i, j), "distinct points at distance 0")
    asym = np.abs(m - m.T) > tol(np.maximum(m, m.T))
    if np.any(asym):
        i, j = np.argwhere(asym)[0]
        raise AxiomViolation("symmetry", (i, j), f"{m[i, j]} != {m[j, i]}")
    if check_triangle:
        for z in range(n):
            via = m[:, z, None] + m[None, z, :]
            bad = m > via + tol(m)
            if np.any(bad):
                x, y = np.argwhere(bad)[0]
                raise AxiomViolation(
                    "triangle", (x, z, y),
                    f"dist(x,y)={m[x, y]} > dist(x,z)+dist(z,y)={via[x, y]}")
    return FiniteMetricSpace(ids, m)


def triangle_equal_set(space: FiniteMetricSpace, x: int, y: int) -> frozenset[int]:
    """All ``z`` with ``dist(x, z) + dist(z, y) == dist(x, y)`` (the metric segment)."""
    space.check_points((x, y))
    D = space.dist
    dxy = D[x, y]
    hit = np.abs(D[x] + D[y] - dxy) <= space.tol(dxy)
    return frozenset(np.flatnonzero(hit).tolist())


def _witness_mask(space: FiniteMetricSpace, a: np.ndarray, theta: float,
                  cols: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask over ``cols`` (default all points) of points lying on a
    segment between two members of ``a`` that are at most ``theta`` apart."""
    D = space.dist
    if cols is None:
        cols = np.arange(space.n)
    out = np.zeros(cols.size, dtype=bool)
    if a.size == 0 or cols.size == 0:
        return out
    Da = D[np.ix_(a, cols)]                      # |a| x |cols|
    pair = D[np.ix_(a, a)]
    close = space.within(pair, theta)
    rows = max(1, _CHUNK_ELEMS // max(1, a.size * cols.size))
    for s in range(0, a.size, rows):
        sl = slice(s, s + rows)
        lhs = Da[sl, None, :] + Da[None, :, :]    # dist(x,z) + dist(z,y)
        ref = pair[sl, :, None]
        eq = np.abs(lhs - ref) <= (0 if space.exact else TAU * np.maximum(1.0, ref))
        eq &= close[sl, :, None]
        out |= eq.any(axis=(0, 1))
    return out


def preclosure(space: FiniteMetricSpace, A: Iterable[int], theta: float) -> frozenset[int]:
    """One witness-expansion step: union of segments between ``theta``-close pairs of ``A``."""
    if theta < 0:
        raise ValueError("theta must be non-negative")
    a = space.check_points(A)
    return frozenset(np.flatnonzero(_witness_mask(space, a, theta)).tolist())


@dataclass(frozen=True)
class HullOracleResult:
    closure: frozenset
    #: smallest ``g >= 0`` with ``pre^g(A) == pre^(g+1)(A)``
    iterations: int


def hull_oracle(space: FiniteMetricSpace, A: Iterable[int], theta: float) -> HullOracleResult:
    """Iterate :func:`preclosure` to its fixed point, the ``theta``-convex hull."""
    cur = frozenset(space.check_points(A).tolist())
    steps = 0
    while True:
        nxt = preclosure(space, cur, theta)
        if nxt == cur:
            return HullOracleResult(cur, steps)
        cur = nxt
        steps += 1


def is_closed(space: FiniteMetricSpace, A: Iterable[int], theta: float) -> bool:
    """True iff ``preclosure(A, theta) == A``; only scans points outside ``A``."""
    a = space.check_points(A)
    outside = np.setdiff1d(np.arange(space.n), a, assume_unique=True)
    return not _witness_mask(space, a, theta, outside).any()
