"""Finding a consistent hull with few blocks.

Positive examples are covered by the hull, negative ones must stay outside.
Larger thresholds give fewer, larger blocks, so the search looks for the
greatest threshold whose hull still avoids every negative.
"""

# %%
from weakconvex import chf_ext, geodesic_space, min_blocks_ext

path = geodesic_space(list(range(1, 10)), [(i, i + 1) for i in range(1, 9)])
pos = path.indices_of([1, 3, 7, 9])
neg = path.indices_of([5])

dec = min_blocks_ext(path, pos, neg)
print("fewest blocks:", len(dec), "at theta", dec.theta, "->", dec.as_ids(path))

# %%
for k in (1, 2, 3):
    res = chf_ext(path, pos, neg, k)
    print(f"k={k}:", "no" if res is None else res.as_ids(path))
