"""Command-line front end: ``weakconvex {hull-ext,hull-int,chf,bench}``.

Exit codes: 0 on success or a Yes answer, 1 when no consistent hypothesis
with at most ``k`` blocks exists, 2 on usage or input errors, 3 when a
benchmark run aborts (rows finished so far are kept in ``<out>.partial``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench, io
from .boxes import BoxScheme
from .errors import ParseError, WeakConvexError
from .extensional import chf_ext, weak_hull_ext
from .hamming import HammingScheme
from .intensional import chf_int, weak_hull_int

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_ABORTED = 0, 1, 2, 3

BENCH_KEYS = ("graph_sizes", "n_graphs", "n_targets", "train_sizes")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _theta(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 0 or v == float("inf"):
        raise argparse.ArgumentTypeError("theta must be a finite number >= 0")
    return int(v) if v.is_integer() else v


def _k(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("k must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weakconvex", description="Weakly convex hulls in metric spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("hull-ext", help="hull of a vertex set in a graph's shortest-path metric")
    h.add_argument("graph", help="graph file: 'n m' then 'u v [w]' per edge")
    h.add_argument("seeds", help="file of vertex ids")
    h.add_argument("--theta", type=_theta, required=True)
    _output_args(h)

    h = sub.add_parser("hull-int", help="hull of bit strings or points via block merging")
    h.add_argument("points", help="one bit string or comma-separated point per line")
    h.add_argument("--scheme", choices=["hamming", "boxes"], required=True)
    h.add_argument("--theta", type=_theta, required=True)
    _output_args(h)

    c = sub.add_parser("chf", help="consistent weakly convex hypothesis with at most k blocks")
    c.add_argument("labeled", help="labelled examples, one per line ending in + or -")
    c.add_argument("--scheme", choices=["graph", "hamming", "boxes"], required=True)
    c.add_argument("--graph", help="graph file (required for --scheme graph)")
    c.add_argument("--k", type=_k, required=True)
    _output_args(c)

    b = sub.add_parser("bench", help="run the Delaunay vertex-classification benchmark")
    b.add_argument("config", help="JSON config: graph_sizes, n_graphs, n_targets, train_sizes "
                                  "[, seed, weighted, workers]; or 'desk'")
    b.add_argument("--seed", type=int, help="master seed, overrides the config")
    b.add_argument("--workers", type=int, help="worker processes, overrides the config")
    b.add_argument("--summary", help="write per-cell means and deviations to this CSV")
    b.add_argument("--no-timing", action="store_true",
                   help="write wall_ms as 0 so repeated runs are byte-identical")
    b.add_argument("--out", help="results CSV (default: stdout)")
    return p


def _output_args(p):
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default="json")


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _decomposition_csv(doc):
    return "".join(" ".join(str(v) for v in block) + "\n" for block in doc["blocks"])


def _render_graph(dec, space, fmt):
    doc = io.decomposition_doc(dec, space)
    return io.dump_json(doc) if fmt == "json" else _decomposition_csv(doc)


def _render_blocks(scheme, blocks, theta, fmt):
    if isinstance(scheme, HammingScheme):
        doc = io.term_doc(blocks, scheme.n, theta)
        return io.dump_json(doc) if fmt == "json" else "".join(t + "\n" for t in doc["terms"])
    return io.dump_json(io.box_doc(blocks, theta)) if fmt == "json" else io.box_csv(blocks)


def cmd_hull_ext(args) -> int:
    space = io.load_graph_space(args.graph)
    seeds = io.read_ids(args.seeds)
    dec = weak_hull_ext(space, space.indices_of(seeds), args.theta)
    _emit(_render_graph(dec, space, args.format), args.out)
    return EXIT_OK


def _scheme_points(kind, path, labeled):
    if kind == "hamming":
        n, *rest = io.read_bitstrings(path, labeled)
        return HammingScheme(n), rest
    d, *rest = io.read_points(path, labeled)
    return BoxScheme(d), rest


def cmd_hull_int(args) -> int:
    scheme, (points,) = _scheme_points(args.scheme, args.points, False)
    res = weak_hull_int(scheme, points, args.theta)
    _emit(_render_blocks(scheme, res.blocks, res.theta, args.format), args.out)
    return EXIT_OK


def cmd_chf(args) -> int:
    if args.scheme == "graph":
        if not args.graph:
            raise ParseError("--scheme graph needs --graph FILE")
        space = io.load_graph_space(args.graph)
        pos, neg = io.read_labeled_vertices(args.labeled)
        dec = chf_ext(space, space.indices_of(pos), space.indices_of(neg), args.k)
        if dec is None:
            print(f"no: no consistent hypothesis has at most {args.k} block(s)")
            return EXIT_NO
        _emit(_render_graph(dec, space, args.format), args.out)
        return EXIT_OK
    scheme, (pos, neg) = _scheme_points(args.scheme, args.labeled, True)
    res = chf_int(scheme, pos, neg, args.k)
    if res is None:
        print(f"no: no consistent hypothesis has at most {args.k} block(s)")
        return EXIT_NO
    _emit(_render_blocks(scheme, res.blocks, res.theta, args.format), args.out)
    return EXIT_OK


def load_bench_config(path) -> bench.BenchConfig:
    """Read a benchmark config; ``{}`` is the empty suite, ``desk`` the desk preset."""
    if path == "desk":
        return bench.BenchConfig.desk()
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read config: {exc.strerror}", path=path) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, path) from None
    if not isinstance(doc, dict):
        raise ParseError("config must be a JSON object", path=path)
    if not doc:
        return bench.BenchConfig()
    preset = doc.pop("preset", None)
    if preset is not None:
        if preset not in ("desk", "full"):
            raise ParseError(f"unknown preset {preset!r}", path=path)
        base = getattr(bench.BenchConfig, preset)()
    else:
        missing = [k for k in BENCH_KEYS if k not in doc]
        if missing:
            raise ParseError(f"missing config key {missing[0]!r}", path=path)
        base = bench.BenchConfig()
    known = set(BENCH_KEYS) | {"seed", "weighted", "workers"}
    extra = sorted(set(doc) - known)
    if extra:
        raise ParseError(f"unknown config key {extra[0]!r}", path=path)
    try:
        for key in BENCH_KEYS[1:3] + ("seed", "workers"):
            if key in doc:
                setattr(base, key, int(doc[key]))
        for key in ("graph_sizes", "train_sizes"):
            if key in doc:
                setattr(base, key, [int(v) for v in doc[key]])
        if "weighted" in doc:
            w = doc["weighted"]
            base.weighted = [bool(v) for v in w] if isinstance(w, list) else [bool(w)]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad config value: {exc}", path=path) from None
    return base


def cmd_bench(args) -> int:
    config = load_bench_config(args.config)
    if args.seed is not None:
        config.seed = args.seed
    if args.workers is not None:
        config.workers = args.workers
    config.record_timing = not args.no_timing
    try:
        rows = bench.run_suite(config)
    except Exception as exc:
        partial = getattr(exc, "partial_rows", [])
        if args.out:
            Path(args.out + ".partial").write_text(bench.rows_to_csv(partial))
        print(f"benchmark aborted after {len(partial)} rows: {exc}", file=sys.stderr)
        return EXIT_ABORTED
    _emit(bench.rows_to_csv(rows), args.out)
    summary = bench.summarize(rows)
    if args.summary:
        Path(args.summary).write_text(bench.summary_to_csv(summary))
    for cell in summary:
        print(f"|V|={cell['graph_size']} weighted={int(cell['weighted'])} "
              f"m={cell['train_size']}: accuracy {cell['accuracy_mean']:.3f} "
              f"(sd {cell['accuracy_std']:.3f}), baseline {cell['baseline_mean']:.3f} "
              f"over {cell['tasks']} tasks", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"hull-ext": cmd_hull_ext, "hull-int": cmd_hull_int, "chf": cmd_chf,
            "bench": cmd_bench}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:      # usage errors and --help
        return exc.code
    try:
        return COMMANDS[args.command](args)
    except WeakConvexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
