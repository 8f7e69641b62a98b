"""Weakly convex hulls on a small graph.

The grid below is a 4 x 4 lattice with unit edges.  For a fixed seed set the
hull grows with theta: at theta = 0 nothing happens, at moderate theta nearby
seeds fill in the shortest paths between them, and at large theta everything
joins into one block.
"""

# %%
from weakconvex import geodesic_space, hull_oracle, weak_hull_ext

side = 4
edges = [(r * side + c, r * side + c + 1) for r in range(side) for c in range(side - 1)]
edges += [(r * side + c, (r + 1) * side + c) for r in range(side - 1) for c in range(side)]
space = geodesic_space(side * side, edges)
seeds = [0, 5, 15]


def show(cells):
    for r in range(side):
        print(" ".join("#" if r * side + c in cells else "." for c in range(side)))


# %%
for theta in space.distance_spectrum().tolist():
    dec = weak_hull_ext(space, seeds, theta)
    print(f"theta={theta}: {len(dec)} block(s), {len(dec.hull)} vertices")
    show(dec.hull)
    print()

# %% The brute-force iteration agrees and reports how many rounds it needed.
for theta in (2, 6):
    ref = hull_oracle(space, seeds, theta)
    assert ref.closure == weak_hull_ext(space, seeds, theta).hull
    print(f"theta={theta}: reference hull reached after {ref.iterations} round(s)")
