"""Exception hierarchy shared by all modules."""


class WeakConvexError(Exception):
    """Base class for errors raised by this package."""


class AxiomViolation(WeakConvexError, ValueError):
    """A distance matrix violates one of the metric axioms.

    ``kind`` is one of ``"identity"``, ``"symmetry"`` or ``"triangle"`` and
    ``triple`` holds the offending point indices.
    """

    def __init__(self, kind, triple, detail=""):
        self.kind = kind
        self.triple = tuple(triple)
        msg = f"{kind} axiom violated at {self.triple}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class DimensionMismatch(WeakConvexError, ValueError):
    pass


class LengthMismatch(DimensionMismatch):
    pass


class UnknownPoint(WeakConvexError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class OverlappingExamples(WeakConvexError, ValueError):
    pass


class DisconnectedGraph(WeakConvexError, ValueError):
    pass


class NonPositiveWeight(WeakConvexError, ValueError):
    pass


class DegenerateInput(WeakConvexError, ValueError):
    pass


class TargetGenerationFailed(WeakConvexError, RuntimeError):
    pass


class EmptyEvalSet(WeakConvexError, ValueError):
    pass


class ParseError(WeakConvexError, ValueError):
    """Malformed input file. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, msg, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {msg}" if where else msg)


#: graph-flavoured name for an id that is not a vertex of the space
UnknownVertex = UnknownPoint
