"""Hulls on the Boolean cube are disjoint DNFs.

Blocks are terms: conjunctions of literals.  Two terms merge once they
conflict on at most theta variables, and the merged term keeps only the
literals they share.
"""

# %%
from weakconvex import DisjointDNF, HammingScheme, chf_int, weak_hull_int

scheme = HammingScheme(5)
points = ["00000", "00011", "11100", "11111"]
for theta in range(6):
    res = weak_hull_int(scheme, points, theta)
    dnf = DisjointDNF.from_blocks(res.blocks, 5, theta)
    print(f"theta={theta}: " + " | ".join(f"({t})" for t in dnf.lines()))

# %% A one-term concept consistent with a negative example.
res = chf_int(scheme, ["00000", "00011", "00101"], ["10000", "11111"], k=1)
print("consistent term:", res.blocks[0], "at theta", res.theta)
