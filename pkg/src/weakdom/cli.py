"""Command-line interface: ``wdd COMMAND (--gen SPEC | --input FILE) [options]``.

Exit codes: 0 ok, 1 usage error, 2 input error, 3 cap exceeded,
4 bound violation (``verify`` only).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .dag import (
    Dag,
    count_incomparable,
    format_edge_list,
    gen_antichain,
    gen_chain,
    gen_crown,
    gen_grid,
    gen_random_dag,
    parse_edge_list,
    transitive_closure,
)
from .drawing import diagonal_drawing, emit_drawing, make_drawing
from .errors import BadSpec, CapExceeded, DimExceedsMax, InputError
from .linext import build_linext_graph, default_cap, enumerate_extensions, export_linext_graph
from .solver import DEFAULT_MAX_DIM, minfip_exact, minfip_heuristic, verify_bounds

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CAP, EXIT_BOUND = 0, 1, 2, 3, 4

COMMANDS = ("gen", "analyze", "draw", "led", "minfip", "dim", "verify", "extgraph")


class UsageError(Exception):
    pass


def parse_generator_spec(text: str) -> Dag:
    """``crown:k``, ``chain:n``, ``antichain:n``, ``grid:r,c`` or ``random:n,p,seed``."""
    kind, sep, args = text.partition(":")
    if not sep:
        raise BadSpec(f"generator spec {text!r} lacks ':'")
    parts = [a.strip() for a in args.split(",")] if args else []
    try:
        if kind == "crown" and len(parts) == 1:
            k = int(parts[0])
            if k < 1:
                raise BadSpec("crown size must be >= 1")
            return gen_crown(k)
        if kind in ("chain", "antichain") and len(parts) == 1:
            n = int(parts[0])
            if n < 0:
                raise BadSpec(f"{kind} length must be >= 0")
            return gen_chain(n) if kind == "chain" else gen_antichain(n)
        if kind == "grid" and len(parts) == 2:
            rows, cols = int(parts[0]), int(parts[1])
            if rows < 1 or cols < 1:
                raise BadSpec("grid sides must be >= 1")
            return gen_grid(rows, cols)
        if kind == "random" and len(parts) == 3:
            n, p, seed = int(parts[0]), float(parts[1]), int(parts[2])
            if n < 0 or not 0.0 <= p <= 1.0:
                raise BadSpec("random spec needs n >= 0 and p in [0, 1]")
            return gen_random_dag(n, p, seed)
    except ValueError as exc:
        if isinstance(exc, BadSpec):
            raise
        raise BadSpec(f"bad generator spec {text!r}: {exc}") from None
    raise BadSpec(f"unknown generator spec {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", metavar="SPEC", help="crown:k | chain:n | antichain:n | grid:r,c | random:n,p,seed")
    src.add_argument("--input", metavar="FILE", help="edge-list file ('-' for stdin)")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="method", action="store_const", const="exact")
    mode.add_argument("--heuristic", dest="method", action="store_const", const="heuristic")
    common.add_argument("--restarts", type=int, default=50)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=None, help="extension/state cap (default: $WDD_CAP or 100000)")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=("coords", "svg", "json", "edgelist"))
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")

    parser = _Parser(prog="wdd", description="Weak dominance drawings of DAGs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "gen": "emit the graph as an edge list",
        "analyze": "vertex, edge, closure and incomparable-pair counts",
        "draw": "coordinates or SVG for a diagonal, heuristic or exact drawing",
        "led": "linear extension diameter",
        "minfip": "minimum number of falsely implied paths",
        "dim": "poset dimension with a realizer",
        "verify": "check the fip upper bounds; exit 4 on violation",
        "extgraph": "linear extension graph summary or export",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _load(args) -> Dag:
    if args.gen is not None:
        return parse_generator_spec(args.gen)
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_edge_list(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _execute(args) -> tuple[int, str, dict[str, str]]:
    if args.restarts < 1:
        raise UsageError("--restarts must be positive")
    if args.cap is not None and args.cap < 1:
        raise UsageError("--cap must be positive")
    if args.max_dim < 1:
        raise UsageError("--max-dim must be positive")
    cap = args.cap if args.cap is not None else default_cap()
    g = _load(args)
    cmd = args.command
    side: dict[str, str] = {}

    if cmd == "gen":
        if args.format not in (None, "edgelist"):
            raise UsageError("gen only writes edgelist")
        return EXIT_OK, format_edge_list(g), side

    if cmd == "analyze":
        r = transitive_closure(g)
        doc = {"n": g.n, "edges": len(g.edges), "closure_edges": r.closure_edge_count, "inc": count_incomparable(r)}
        return EXIT_OK, _dump(doc), side

    if cmd == "draw":
        fmt = args.format or "coords"
        if fmt not in ("coords", "svg"):
            raise UsageError("draw writes coords or svg")
        if args.method == "exact":
            rep = minfip_exact(g, cap, with_dim=False)
            d = make_drawing(g, *rep.optimal_pair)
        elif args.method == "heuristic":
            rep = minfip_heuristic(g, args.restarts, args.seed)
            d = make_drawing(g, *rep.optimal_pair)
        else:
            d = diagonal_drawing(g)
        return EXIT_OK, emit_drawing(d, fmt), side

    if cmd in ("led", "minfip"):
        if args.method == "heuristic":
            rep = minfip_heuristic(g, args.restarts, args.seed)
        else:
            rep = minfip_exact(g, cap, with_dim=cmd == "minfip", max_dim=args.max_dim)
        return EXIT_OK, rep.to_json(args.timings), side

    if cmd == "dim":
        rep = minfip_exact(g, cap, max_dim=args.max_dim)
        if rep.dim is None:
            raise DimExceedsMax(args.max_dim, args.max_dim + 1)
        return EXIT_OK, rep.to_json(args.timings), side

    if cmd == "verify":
        rep = minfip_exact(g, cap, max_dim=args.max_dim)
        if rep.dim is None:
            raise DimExceedsMax(args.max_dim, args.max_dim + 1)
        chk = verify_bounds(rep)
        doc = rep.to_dict(args.timings)
        doc["verified"] = chk.ok
        return (EXIT_OK if chk.ok else EXIT_BOUND), _dump(doc), side

    if cmd == "extgraph":
        ext = enumerate_extensions(transitive_closure(g), cap)
        if ext.truncated:
            raise CapExceeded(f"more than {cap} linear extensions")
        lg = build_linext_graph(ext)
        fmt = args.format or "json"
        if fmt == "edgelist":
            edges, nodes = export_linext_graph(lg, g)
            if args.out:
                side[args.out + ".nodes"] = nodes
            return EXIT_OK, edges, side
        if fmt != "json":
            raise UsageError("extgraph writes json or edgelist")
        return EXIT_OK, _dump({"nodes": len(ext), "edges": lg.edge_count}), side

    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        status, text, side = _execute(args)
    except UsageError as exc:
        print(f"wdd: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"wdd: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CapExceeded, DimExceedsMax) as exc:
        print(f"wdd: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        for path, body in side.items():
            Path(path).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if status == EXIT_BOUND:
        print("wdd: bound violation", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
