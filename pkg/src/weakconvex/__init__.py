"""Weakly convex hulls in metric spaces.

* :mod:`.metric`: finite metric spaces, triangle-equality sets and a
  brute-force iterated-preclosure hull used as a reference;
* :mod:`.extensional`: the queue-based hull for finite spaces, consistent
  hypothesis search and shortest-path metrics of graphs;
* :mod:`.intensional`: the block-merging hull over representation schemes,
  instantiated by :mod:`.hamming` (terms) and :mod:`.boxes` (boxes under L1);
* :mod:`.bench`: the Delaunay-graph vertex classification benchmark.
"""

from .boxes import Box, BoxScheme
from .errors import (AxiomViolation, DegenerateInput, DimensionMismatch, DisconnectedGraph,
                     EmptyEvalSet, LengthMismatch, NonPositiveWeight, OverlappingExamples,
                     ParseError, TargetGenerationFailed, UnknownPoint, UnknownVertex,
                     WeakConvexError)
from .extensional import (ThetaDecomposition, chf_ext, geodesic_space, largest_consistent_theta,
                          min_blocks_ext, weak_hull_ext)
from .hamming import DisjointDNF, HammingScheme, PointCluster, Term
from .intensional import BlockSet, chf_int, weak_hull_int, weak_hull_int_naive
from .metric import (TAU, FiniteMetricSpace, build_space, hull_oracle, is_closed, preclosure,
                     triangle_equal_set)

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation", "BlockSet", "Box", "BoxScheme", "DegenerateInput", "DimensionMismatch",
    "DisconnectedGraph", "DisjointDNF", "EmptyEvalSet", "FiniteMetricSpace", "HammingScheme",
    "LengthMismatch", "NonPositiveWeight", "OverlappingExamples", "ParseError", "PointCluster",
    "TAU", "TargetGenerationFailed", "Term", "ThetaDecomposition", "UnknownPoint",
    "UnknownVertex", "WeakConvexError", "build_space", "chf_ext", "chf_int", "geodesic_space",
    "hull_oracle", "is_closed", "largest_consistent_theta", "min_blocks_ext", "preclosure",
    "triangle_equal_set", "weak_hull_ext", "weak_hull_int", "weak_hull_int_naive",
]
