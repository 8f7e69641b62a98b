"""Axis-aligned closed boxes as blocks in ``(R^d, L1)``.

Under the Manhattan distance the metric segment between two points is the
smallest closed box containing both, so weakly convex hulls of finite sets
are unions of pairwise disjoint boxes.  A box is stored by its corner of
componentwise minima and its corner of componentwise maxima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch

#: absolute tolerance on interval endpoints
BOX_TOL = 1e-9


def as_point(x) -> tuple[float, ...]:
    p = tuple(float(v) for v in x)
    if not p:
        raise DimensionMismatch("points need at least one coordinate")
    if not all(math.isfinite(v) for v in p):
        raise ValueError(f"non-finite coordinate in {x!r}")
    return p


@dataclass(frozen=True, order=True)
class Box:
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DimensionMismatch("corner dimensions differ")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError(f"min corner {self.lo} exceeds max corner {self.hi}")

    @property
    def d(self) -> int:
        return len(self.lo)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def l1(x, y) -> float:
    return sum(abs(a - b) for a, b in zip(x, y))


def _same_d(a: Box, b: Box):
    if a.d != b.d:
        raise DimensionMismatch(f"boxes of dimension {a.d} and {b.d}")


def box_singleton(x) -> Box:
    p = as_point(x)
    return Box(p, p)


def box_distance(a: Box, b: Box) -> float:
    """Infimum L1 distance: per-axis interval gaps, summed."""
    _same_d(a, b)
    total = 0.0
    for u, v, x, y in zip(a.lo, a.hi, b.lo, b.hi):
        if x > v or u > y:  # axis intervals [u, v] and [x, y] are disjoint
            total += min(abs(x - v), abs(u - y))
    return total


def box_merge(a: Box, b: Box) -> Box:
    _same_d(a, b)
    return Box(tuple(map(min, a.lo, b.lo)), tuple(map(max, a.hi, b.hi)))


def box_member(box: Box, x, tol: float = BOX_TOL) -> bool:
    p = as_point(x)
    if len(p) != box.d:
        raise DimensionMismatch(f"point of dimension {len(p)} vs box of dimension {box.d}")
    return all(lo - tol <= c <= hi + tol for lo, c, hi in zip(box.lo, p, box.hi))


class BoxScheme:
    """Representation scheme for ``(R^d, L1)``.

    ``merge_blocks`` ignores the input list: the hull of the input points in
    two ``theta``-close boxes is their bounding box.
    """

    def __init__(self, d: int | None = None):
        self.d = d

    def __repr__(self):
        return f"BoxScheme(d={self.d})"

    def singleton(self, x) -> Box:
        b = box_singleton(x)
        if self.d is not None and b.d != self.d:
            raise DimensionMismatch(f"expected dimension {self.d}, got {b.d}")
        return b

    def block_distance(self, a: Box, b: Box) -> float:
        return box_distance(a, b)

    def merge_blocks(self, theta: float, points: Sequence, a: Box, b: Box) -> Box:
        return box_merge(a, b)

    def member(self, block: Box, x) -> bool:
        return box_member(block, x)

    def key(self, block: Box):
        return (block.lo, block.hi)

    def blocks_equal(self, a: Box, b: Box) -> bool:
        return a == b


def boxes_to_rows(blocks) -> list[list[float]]:
    """CSV rows ``min_1..min_d, max_1..max_d``."""
    return [list(b.lo) + list(b.hi) for b in blocks]
