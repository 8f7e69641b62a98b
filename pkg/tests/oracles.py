"""Independent reference implementations for the test suite.

Everything here works on plain Python lists and sets and deliberately shares
no code with the package: segments are found by scanning every third point,
hulls by iterating the one-step expansion to a fixed point, and shortest
paths come from networkx.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import networkx as nx
import numpy as np

EPS = 1e-9


def close(a, b):
    return abs(a - b) <= EPS * max(1.0, abs(a), abs(b))


def segment(D, x, y):
    return {z for z in range(len(D)) if close(D[x][z] + D[z][y], D[x][y])}


def expand(D, A, theta):
    out = set()
    for x in A:
        for y in A:
            if D[x][y] <= theta + EPS * max(1.0, theta):
                out |= segment(D, x, y)
    return out


def hull(D, A, theta):
    cur = set(A)
    while True:
        nxt = expand(D, cur, theta)
        if nxt == cur:
            return cur
        cur = nxt


def theta_components(D, S, theta):
    """Connected components of ``S`` under hops of length at most ``theta``."""
    left = set(S)
    comps = []
    while left:
        stack = [min(left)]
        comp = set(stack)
        left -= comp
        while stack:
            u = stack.pop()
            nb = {v for v in left if D[u][v] <= theta + EPS * max(1.0, theta)}
            left -= nb
            comp |= nb
            stack.extend(nb)
        comps.append(frozenset(comp))
    return sorted(comps, key=min)


def spectrum(D):
    n = len(D)
    vals = sorted({0.0} | {float(D[i][j]) for i in range(n) for j in range(i + 1, n)})
    out = []
    for v in vals:
        if not out or not close(out[-1], v):
            out.append(v)
    return out


def min_blocks_sweep(D, pos, neg):
    """Fewest blocks of a consistent hull over every threshold in the spectrum."""
    best = None
    for t in spectrum(D):
        h = hull(D, pos, t)
        if h & set(neg):
            continue
        b = len(theta_components(D, h, t))
        best = b if best is None else min(best, b)
    return best


def shortest_paths(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for e in edges:
        w = e[2] if len(e) > 2 else 1
        if g.has_edge(e[0], e[1]):
            w = min(w, g[e[0]][e[1]]["weight"])
        g.add_edge(e[0], e[1], weight=w)
    lengths = dict(nx.all_pairs_dijkstra_path_length(g, weight="weight"))
    return [[lengths[i][j] for j in range(n)] for i in range(n)]


def random_metric(rng, n, kind="graph"):
    """Random finite metric as a nested list: graph geodesics or points in the plane."""
    if kind == "euclid":
        P = rng.random((n, 2)) * 10
        return [[float(np.hypot(*(P[i] - P[j]))) for j in range(n)] for i in range(n)]
    if kind == "l1grid":
        P = rng.integers(0, 5, size=(n, 2))
        P = np.unique(P, axis=0)
        return [[int(np.abs(p - q).sum()) for q in P] for p in P]
    # random connected graph, integer or real weights
    edges = [(i, int(rng.integers(0, i))) for i in range(1, n)]
    extra = int(rng.integers(0, n + 1))
    for _ in range(extra):
        u, v = rng.integers(0, n, size=2)
        if u != v:
            edges.append((int(u), int(v)))
    if kind == "weighted":
        edges = [(u, v, float(rng.integers(1, 6))) for u, v in edges]
    return shortest_paths(n, edges)


def hamming_cube(n):
    pts = list(range(1 << n))
    return pts, [[(p ^ q).bit_count() for q in pts] for p in pts]


def bits_to_mask(s):
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def box_gap_grid(a_lo, a_hi, b_lo, b_hi, steps=40):
    """Minimum L1 distance between two boxes by scanning a grid of their points.

    Distance is separable over axes, so each axis is minimised on its own
    grid; each grid also holds the other interval's endpoints clipped into it.
    """
    total = 0.0
    for u, v, x, y in zip(a_lo, a_hi, b_lo, b_hi):
        gu = np.concatenate([np.linspace(u, v, steps), np.clip([x, y], u, v)])
        gx = np.concatenate([np.linspace(x, y, steps), np.clip([u, v], x, y)])
        total += float(np.abs(gu[:, None] - gx[None, :]).min())
    return total


def in_circle(a, b, c, d):
    """Exact sign of the in-circle determinant; > 0 iff ``d`` lies inside the
    circle through counter-clockwise ``a, b, c``."""
    rows = []
    for p in (a, b, c):
        dx, dy = p[0] - d[0], p[1] - d[1]
        rows.append((dx, dy, dx * dx + dy * dy))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return (a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1))


def orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def empty_circumcircles(points, simplices):
    """Check every triangle's circumcircle against every other point, exactly."""
    P = [(Fraction(float(x)), Fraction(float(y))) for x, y in points]
    for tri in simplices:
        a, b, c = (P[i] for i in tri)
        if orient(a, b, c) < 0:
            b, c = c, b
        for j, d in enumerate(P):
            if j in tri:
                continue
            if in_circle(a, b, c, d) > 0:
                return False
    return True


def exhaustive_boxes_min_blocks(pos, neg):
    """Fewest boxes of a consistent hull, sweeping thresholds over every merge event.

    Uses a from-scratch single-linkage style loop on bounding boxes with the
    distance written as a clipped per-axis gap.
    """
    def gap(a, b):
        return sum(max(0.0, b[0][i] - a[1][i], a[0][i] - b[1][i]) for i in range(len(a[0])))

    def boxes_at(theta):
        bs = [(tuple(p), tuple(p)) for p in set(map(tuple, pos))]
        merged = True
        while merged:
            merged = False
            for i, j in itertools.combinations(range(len(bs)), 2):
                if gap(bs[i], bs[j]) <= theta + 1e-9:
                    a, b = bs[i], bs[j]
                    new = (tuple(map(min, a[0], b[0])), tuple(map(max, a[1], b[1])))
                    bs = [bs[k] for k in range(len(bs)) if k not in (i, j)] + [new]
                    merged = True
                    break
        return bs

    def inside(bx, p):
        return all(bx[0][i] - 1e-9 <= p[i] <= bx[1][i] + 1e-9 for i in range(len(p)))

    theta = 0.0
    best = None
    while True:
        bs = boxes_at(theta)
        if not any(inside(b, q) for b in bs for q in neg):
            best = len(bs) if best is None else min(best, len(bs))
        if len(bs) == 1:
            return best
        theta = min(gap(a, b) for a, b in itertools.combinations(bs, 2))


def mean(xs):
    xs = list(xs)
    return sum(xs) / len(xs) if xs else math.nan
