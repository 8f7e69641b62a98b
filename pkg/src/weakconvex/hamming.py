"""Boolean terms as blocks over the Hamming cube ``{0,1}^n``.

A term fixes some variables to 1 (positive literal) or 0 (negative literal)
and leaves the rest free; its extension is a subcube.  For ``theta >= 2`` every
``theta``-connected, ``theta``-convex subset of the cube is a subcube, so the
hull blocks are exactly terms and the hull is a DNF with pairwise disjoint
terms:

* the distance between two terms is the number of conflicting variables,
* the merge of two terms keeps the literals they share.

Below ``theta = 2`` segments between admissible pairs contain only their
endpoints, so the hull of a point set is the set itself and its blocks are the
1-connected components, which in general are not subcubes.  Merges at
``theta < 2`` therefore produce a :class:`PointCluster` holding the points
explicitly.

Bit strings are read left to right as ``x1 .. xn``; internally variable
``x_{i+1}`` is bit ``i`` of an integer mask.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, LengthMismatch


def parse_bits(x, n: int | None = None) -> tuple[int, int]:
    """Return ``(mask, length)`` for a bit string or 0/1 sequence."""
    if isinstance(x, str):
        s = x.strip()
        if any(c not in "01" for c in s):
            raise ValueError(f"not a bit string: {x!r}")
        bits = [c == "1" for c in s]
    else:
        bits = [bool(int(b)) for b in x]
        if any(int(b) not in (0, 1) for b in x):
            raise ValueError(f"not a 0/1 sequence: {x!r}")
    if not bits:
        raise LengthMismatch("empty bit string")
    if n is not None and len(bits) != n:
        raise LengthMismatch(f"expected {n} bits, got {len(bits)}")
    mask = 0
    for i, b in enumerate(bits):
        if b:
            mask |= 1 << i
    return mask, len(bits)


def format_bits(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


@dataclass(frozen=True, order=True)
class Term:
    """Conjunction of literals over ``n`` variables, as two disjoint bit masks."""

    n: int
    pos: int = 0
    neg: int = 0

    def __post_init__(self):
        if self.pos & self.neg:
            raise ValueError("a term cannot contain a variable and its negation")
        full = (1 << self.n) - 1
        if (self.pos | self.neg) & ~full:
            raise ValueError("literal outside the term's variables")

    @property
    def fixed(self) -> int:
        return self.pos | self.neg

    def literals(self) -> list[tuple[int, bool]]:
        """``(variable number, polarity)`` pairs, variables numbered from 1."""
        return [(i + 1, bool(self.pos >> i & 1)) for i in range(self.n) if self.fixed >> i & 1]

    def extension(self) -> list[int]:
        """All cube points satisfying the term, as masks (exponential in free variables)."""
        free = [i for i in range(self.n) if not self.fixed >> i & 1]
        out = []
        for sub in range(1 << len(free)):
            m = self.pos
            for k, i in enumerate(free):
                if sub >> k & 1:
                    m |= 1 << i
            out.append(m)
        return sorted(out)

    def __str__(self):
        lits = [f"x{v}" if p else f"!x{v}" for v, p in self.literals()]
        return " & ".join(lits) if lits else "true"


@dataclass(frozen=True)
class PointCluster:
    """A 1-connected set of at least two cube points; the block shape for ``theta < 2``."""

    n: int
    points: frozenset

    def extension(self) -> list[int]:
        return sorted(self.points)

    def terms(self) -> list[Term]:
        full = (1 << self.n) - 1
        return [Term(self.n, p, full & ~p) for p in sorted(self.points)]

    def __str__(self):
        return " | ".join(f"({t})" for t in self.terms())


def _mask_of(x, n):
    if isinstance(x, int) and not isinstance(x, bool):
        if x < 0 or x >> n:
            raise LengthMismatch(f"mask {x} does not fit in {n} bits")
        return x
    return parse_bits(x, n)[0]


def term_singleton(x, n: int | None = None) -> Term:
    """The full term whose only satisfying point is ``x``."""
    mask, length = parse_bits(x, n)
    full = (1 << length) - 1
    return Term(length, mask, full & ~mask)


def _same_n(a, b):
    if a.n != b.n:
        raise DimensionMismatch(f"terms over {a.n} and {b.n} variables")


def term_distance(a: Term, b: Term) -> int:
    """Number of conflicting variables, the minimum Hamming distance between the extensions."""
    _same_n(a, b)
    return ((a.pos & b.neg) | (a.neg & b.pos)).bit_count()


def term_merge(a: Term, b: Term) -> Term:
    """Smallest subcube containing both extensions: the shared literals."""
    _same_n(a, b)
    return Term(a.n, a.pos & b.pos, a.neg & b.neg)


def term_member(t: Term, x) -> bool:
    m = _mask_of(x, t.n)
    return (m & t.pos) == t.pos and not (m & t.neg)


class HammingScheme:
    """Representation scheme for ``({0,1}^n, Hamming)``.

    Thresholds are integers ``0..n``; a fractional ``theta`` is floored, with
    a warning.
    """

    def __init__(self, n: int):
        if n < 1:
            raise LengthMismatch("need at least one variable")
        self.n = n

    def __repr__(self):
        return f"HammingScheme(n={self.n})"

    def theta_level(self, theta: float) -> int:
        t = math.floor(theta)
        if t != theta:
            warnings.warn(f"Hamming thresholds are integral; using floor({theta}) = {t}",
                          stacklevel=3)
        return int(t)

    def mask(self, x) -> int:
        return _mask_of(x, self.n)

    def singleton(self, x) -> Term:
        m = self.mask(x)
        return Term(self.n, m, ((1 << self.n) - 1) & ~m)

    def block_distance(self, a, b) -> int:
        if isinstance(a, Term) and isinstance(b, Term):
            return term_distance(a, b)
        pa = a.points if isinstance(a, PointCluster) else None
        pb = b.points if isinstance(b, PointCluster) else None
        if pa is not None and pb is not None:
            return min((p ^ q).bit_count() for p in pa for q in pb)
        cluster, term = (a, b) if pa is not None else (b, a)
        return min(term_distance(self.singleton(p), term) for p in cluster.points)

    def merge_blocks(self, theta: float, points: Sequence, a, b):
        if self.theta_level(theta) >= 2:
            if isinstance(a, PointCluster) or isinstance(b, PointCluster):
                raise ValueError("point clusters only arise below theta = 2")
            return term_merge(a, b)
        # below 2 the hull adds nothing: the block is just the covered input points
        pts = frozenset(self._points(a)) | frozenset(self._points(b))
        if len(pts) == 1:
            return self.singleton(next(iter(pts)))
        return PointCluster(self.n, pts)

    def _points(self, block):
        if isinstance(block, PointCluster):
            return block.points
        return block.extension()

    def member(self, block, x) -> bool:
        if isinstance(block, PointCluster):
            return self.mask(x) in block.points
        return term_member(block, x)

    def key(self, block):
        if isinstance(block, PointCluster):
            return (1, tuple(sorted(block.points)), 0)
        return (0, block.pos, block.neg)

    def blocks_equal(self, a, b) -> bool:
        return self.key(a) == self.key(b)

    def candidate_thetas(self, points: Iterable) -> list[int]:
        return list(range(self.n + 1))

    def extension(self, block) -> list[int]:
        return sorted(self._points(block))


@dataclass(frozen=True)
class DisjointDNF:
    """A hull rendered as a DNF; term extensions are pairwise disjoint."""

    terms: tuple
    n: int
    theta: float

    @classmethod
    def from_blocks(cls, blocks, n: int, theta: float) -> "DisjointDNF":
        terms = []
        for b in blocks:
            terms.extend(b.terms() if isinstance(b, PointCluster) else [b])
        return cls(tuple(terms), n, theta)

    def __call__(self, x) -> bool:
        return any(term_member(t, x) for t in self.terms)

    def lines(self) -> list[str]:
        return [str(t) for t in self.terms]

    def __str__(self):
        return "\n".join(self.lines())


def parse_term(text: str, n: int) -> Term:
    """Inverse of ``str(Term)``: ``"x1 & !x3"``; ``"true"`` is the empty term."""
    text = text.strip()
    pos = neg = 0
    if text in ("", "true"):
        return Term(n)
    for lit in text.split("&"):
        lit = lit.strip()
        negated = lit.startswith("!")
        name = lit[1:] if negated else lit
        if not name.startswith("x") or not name[1:].isdigit():
            raise ValueError(f"bad literal {lit!r}")
        v = int(name[1:]) - 1
        if not 0 <= v < n:
            raise LengthMismatch(f"variable {name} outside x1..x{n}")
        if negated:
            neg |= 1 << v
        else:
            pos |= 1 << v
    return Term(n, pos, neg)
