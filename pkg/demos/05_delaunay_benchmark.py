"""Vertex classification on random Delaunay graphs.

Each task draws a weakly convex target covering a bit under half the
vertices, shows the learner a balanced sample of labelled vertices and scores
its hull on the rest against the majority vote.  Pass a larger size on the
command line (e.g. 1000) for a slower, closer look.
"""

# %%
import sys

from weakconvex.bench import BenchConfig, rows_to_csv, run_suite, summarize

size = int(sys.argv[1]) if len(sys.argv) > 1 else 250
config = BenchConfig(graph_sizes=[size], n_graphs=3, n_targets=3,
                     train_sizes=[20, 40, 80], seed=1, weighted=[False, True])
rows = run_suite(config)

# %%
for cell in summarize(rows):
    kind = "weighted" if cell["weighted"] else "unweighted"
    print(f"{kind:>10} m={cell['train_size']:>3}: accuracy {cell['accuracy_mean']:.3f} "
          f"+/- {cell['accuracy_std']:.3f}, baseline {cell['baseline_mean']:.3f}")

# %%
print()
print(rows_to_csv(rows[:3]), end="")
