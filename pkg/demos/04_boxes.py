"""Unions of disjoint boxes under the Manhattan distance.

In (R^2, L1) the set of points between two points is their bounding box, so
hull blocks are axis-aligned rectangles.  Learning a union of rectangles from
labelled points only needs the merge loop on box corners.
"""

# %%
import numpy as np

from weakconvex import BoxScheme, chf_int, weak_hull_int

rng = np.random.default_rng(0)
cluster_a = rng.normal((2, 2), 0.6, size=(15, 2))
cluster_b = rng.normal((8, 7), 0.6, size=(15, 2))
pos = [tuple(p) for p in np.vstack([cluster_a, cluster_b])]
neg = [(5.0, 5.0), (2.0, 8.0), (8.0, 1.0)]

scheme = BoxScheme(2)
for theta in (0.5, 2.0, 12.0):
    res = weak_hull_int(scheme, pos, theta)
    print(f"theta={theta}: {len(res)} boxes")

# %%
res = chf_int(scheme, pos, neg, k=2)
for box in res.blocks:
    print("box", np.round(box.lo, 2), "->", np.round(box.hi, 2))
print("threshold", round(res.theta, 3))
