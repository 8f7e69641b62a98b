"""Plain-text input formats and JSON/CSV output.

Graph files start with ``n m`` followed by ``m`` lines ``u v [w]`` over the
0-based vertex ids ``0..n-1``.  Labelled files hold one example per line with
a trailing ``+`` or ``-``.  Blank lines and lines starting with ``#`` are
skipped everywhere; reported line numbers count them.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterator

from .errors import LengthMismatch, ParseError
from .extensional import ThetaDecomposition, geodesic_space
from .hamming import DisjointDNF, parse_bits, parse_term
from .boxes import Box, boxes_to_rows

LABELS = {"+": True, "-": False}


def _lines(path) -> Iterator[tuple[int, str]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read input: {exc.strerror}", path=path) from exc
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _int(tok, no, path, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", no, path) from None


def read_graph(path) -> tuple[int, list[tuple]]:
    """``(n, edges)``; edges are ``(u, v)`` or ``(u, v, w)``."""
    lines = _lines(path)
    header = next(lines, None)
    if header is None:
        raise ParseError("empty graph file", path=path)
    no, line = header
    toks = line.split()
    if len(toks) != 2:
        raise ParseError("header must be 'n m'", no, path)
    n = _int(toks[0], no, path, "vertex count")
    m = _int(toks[1], no, path, "edge count")
    if n < 0 or m < 0:
        raise ParseError("counts must be non-negative", no, path)
    edges = []
    for no, line in lines:
        toks = line.split()
        if len(toks) not in (2, 3):
            raise ParseError(f"edge line needs 'u v [w]', got {line!r}", no, path)
        u = _int(toks[0], no, path, "vertex")
        v = _int(toks[1], no, path, "vertex")
        for p in (u, v):
            if not 0 <= p < n:
                raise ParseError(f"vertex {p} outside 0..{n - 1}", no, path)
        if len(toks) == 3:
            try:
                w = float(toks[2])
            except ValueError:
                raise ParseError(f"weight {toks[2]!r} is not a number", no, path) from None
            if not (math.isfinite(w) and w > 0):
                raise ParseError(f"weight {toks[2]} must be positive and finite", no, path)
            edges.append((u, v, w))
        else:
            edges.append((u, v))
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", path=path)
    return n, edges


def load_graph_space(path):
    n, edges = read_graph(path)
    return geodesic_space(n, edges)


def read_ids(path) -> list[int]:
    """Whitespace-separated integer vertex ids."""
    out = []
    for no, line in _lines(path):
        out.extend(_int(t, no, path, "vertex") for t in line.split())
    return out


def _split_label(line, no, path):
    head, _, label = line.rpartition(" ") if " " in line else line.rpartition(",")
    label = label.strip()
    if label not in LABELS:
        raise ParseError(f"label must be '+' or '-', got {label!r}", no, path)
    return head.strip().rstrip(","), LABELS[label]


def read_labeled_vertices(path) -> tuple[list[int], list[int]]:
    pos, neg = [], []
    for no, line in _lines(path):
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"expected 'v +' or 'v -', got {line!r}", no, path)
        v = _int(toks[0], no, path, "vertex")
        if toks[1] not in LABELS:
            raise ParseError(f"label must be '+' or '-', got {toks[1]!r}", no, path)
        (pos if LABELS[toks[1]] else neg).append(v)
    return pos, neg


def _bits(tok, n, no, path):
    try:
        return parse_bits(tok, n)
    except LengthMismatch as exc:
        raise ParseError(str(exc), no, path) from None
    except ValueError:
        raise ParseError(f"not a bit string: {tok!r}", no, path) from None


def read_bitstrings(path, labeled: bool = False):
    """Bit strings of a common length ``n``; returns ``(n, points)`` or ``(n, pos, neg)``."""
    n = None
    pos, neg = [], []
    for no, line in _lines(path):
        if labeled:
            tok, lab = _split_label(line, no, path)
        else:
            tok, lab = line, True
        if len(tok.split()) != 1:
            raise ParseError(f"expected one bit string, got {line!r}", no, path)
        _, length = _bits(tok, n, no, path)
        n = length
        (pos if lab else neg).append(tok)
    if n is None:
        raise ParseError("no points given", path=path)
    return (n, pos, neg) if labeled else (n, pos)


def _coords(text, d, no, path):
    toks = [t for t in text.replace(",", " ").split()]
    try:
        p = tuple(float(t) for t in toks)
    except ValueError:
        raise ParseError(f"bad coordinate in {text!r}", no, path) from None
    if not p:
        raise ParseError("empty point", no, path)
    if not all(math.isfinite(c) for c in p):
        raise ParseError(f"non-finite coordinate in {text!r}", no, path)
    if d is not None and len(p) != d:
        raise ParseError(f"expected {d} coordinates, got {len(p)}", no, path)
    return p


def read_points(path, labeled: bool = False):
    """Comma-separated coordinates; returns ``(d, points)`` or ``(d, pos, neg)``."""
    d = None
    pos, neg = [], []
    for no, line in _lines(path):
        if labeled:
            text, lab = _split_label(line, no, path)
        else:
            text, lab = line, True
        p = _coords(text, d, no, path)
        d = len(p)
        (pos if lab else neg).append(p)
    if d is None:
        raise ParseError("no points given", path=path)
    return (d, pos, neg) if labeled else (d, pos)


# -- output -----------------------------------------------------------------

def _num(x):
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x.item() if hasattr(x, "item") else x


def decomposition_doc(dec: ThetaDecomposition, space) -> dict:
    return {"theta": _num(dec.theta), "blocks": dec.as_ids(space)}


def parse_decomposition_doc(doc, space) -> ThetaDecomposition:
    """Inverse of :func:`decomposition_doc`; ids are mapped back to indices."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        theta = float(doc["theta"])
        blocks = [space.indices_of(b) for b in doc["blocks"]]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    return ThetaDecomposition(theta, tuple(frozenset(b) for b in blocks))


def term_doc(blocks, n: int, theta) -> dict:
    dnf = DisjointDNF.from_blocks(blocks, n, theta)
    return {"theta": _num(theta), "n": n, "terms": dnf.lines()}


def parse_term_doc(doc) -> DisjointDNF:
    if isinstance(doc, str):
        doc = json.loads(doc)
    n = int(doc["n"])
    return DisjointDNF(tuple(parse_term(t, n) for t in doc["terms"]), n, doc["theta"])


def box_doc(blocks, theta) -> dict:
    return {"theta": _num(theta),
            "boxes": [{"min": list(b.lo), "max": list(b.hi)} for b in blocks]}


def parse_box_doc(doc) -> list[Box]:
    if isinstance(doc, str):
        doc = json.loads(doc)
    return [Box(tuple(map(float, b["min"])), tuple(map(float, b["max"]))) for b in doc["boxes"]]


def box_csv(blocks) -> str:
    return "".join(",".join(repr(float(v)) for v in row) + "\n" for row in boxes_to_rows(blocks))


def dump_json(doc) -> str:
    return json.dumps(doc) + "\n"


__all__ = [
    "box_csv", "box_doc", "decomposition_doc", "dump_json", "load_graph_space",
    "parse_box_doc", "parse_decomposition_doc", "parse_term_doc", "read_bitstrings",
    "read_graph", "read_ids", "read_labeled_vertices", "read_points", "term_doc",
]
