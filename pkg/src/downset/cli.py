"""Command-line frontend.

Subcommands: member, union, intersect, solve-parity, count, width,
conjecture, gen, bench.  Exit codes: 0 success, 1 domain errors (bad input
files, dimension mismatches, infeasible requests, check failures), 2 usage
errors.  All randomness takes an explicit seed.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import bench as bench_mod
from . import combinatorics as comb
from . import parity as parity_mod
from .adaptive import BACKEND_NAMES, get_backend
from .core import (
    Antichain,
    DimensionMismatch,
    Stats,
    VectorSetFormatError,
    format_vector_set,
    load_vector_set,
    save_vector_set,
)
from .cst import build_cst
from .sharingtree import build_sharingtree, to_dot


class CliError(Exception):
    """Domain-level failure; message printed to stderr, exit code 1."""


def _parse_vector_literal(text: str, dim: int):
    parts = text.split()
    if len(parts) != dim:
        raise CliError(f"vector literal has {len(parts)} components, set has dimension {dim}")
    try:
        vec = tuple(int(p) for p in parts)
    except ValueError:
        raise CliError(f"bad vector literal {text!r}") from None
    if any(x < 0 for x in vec):
        raise CliError(f"vector literal has negative components: {text!r}")
    return vec


def _maybe_dump_dot(args, ac: Antichain) -> None:
    path = getattr(args, "dump_dot", None)
    if path is None:
        return
    if args.backend == "sharingtree":
        text = to_dot(build_sharingtree(ac))
    elif args.backend == "cst":
        text = to_dot(build_cst(ac.vectors, dim=ac.dim))
    else:
        raise CliError("--dump-dot requires the sharingtree or cst backend")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _print_stats(args, stats: Stats) -> None:
    if getattr(args, "stats", False):
        print(f"comparisons={stats.comparisons} node_visits={stats.node_visits}", file=sys.stderr)


def cmd_member(args) -> int:
    ac = load_vector_set(args.set)
    u = _parse_vector_literal(args.vector, ac.dim)
    stats = Stats()
    verdict = get_backend(args.backend).member(ac, u, stats)
    _maybe_dump_dot(args, ac)
    print("true" if verdict else "false")
    _print_stats(args, stats)
    return 0


def cmd_setop(args, op: str) -> int:
    a = load_vector_set(args.a)
    b = load_vector_set(args.b)
    stats = Stats()
    ops = get_backend(args.backend)
    out = ops.union(a, b, stats) if op == "union" else ops.intersect(a, b, stats)
    if args.check:
        for name in BACKEND_NAMES:
            if name == args.backend:
                continue
            other_ops = get_backend(name)
            other = other_ops.union(a, b) if op == "union" else other_ops.intersect(a, b)
            if other != out:
                raise CliError(f"backend {name} disagrees with {args.backend} on {op}")
    _maybe_dump_dot(args, out)
    if args.output:
        save_vector_set(out, args.output)
    else:
        sys.stdout.write(format_vector_set(out))
    if getattr(args, "stats", False):
        print(f"|a|={len(a)} |b|={len(b)} |out|={len(out)}", file=sys.stderr)
        _print_stats(args, stats)
    return 0


def cmd_solve_parity(args) -> int:
    with open(args.game, "r", encoding="utf-8") as fh:
        game = parity_mod.parse_pgsolver(fh.read())
    result = parity_mod.solve(game, backend=args.backend)
    strategy = parity_mod.synthesize_even_strategy(game, result)
    for v in range(len(game)):
        winner = "even" if result.winners[v] == parity_mod.EVEN else "odd"
        line = f"{game.ids[v]} {winner}"
        if v in strategy:
            line += f" {game.ids[strategy[v]]}"
        print(line)
    if args.strategy:
        with open(args.strategy, "w", encoding="utf-8", newline="\n") as fh:
            for u in sorted(strategy):
                fh.write(f"{game.ids[u]} {game.ids[strategy[u]]}\n")
    if args.check:
        oracle = parity_mod.zielonka(game)
        if oracle != result.winners:
            raise CliError("winner map disagrees with the attractor-based oracle")
        if not parity_mod.check_even_strategy(game, result.winners, strategy):
            raise CliError("synthesized strategy fails the cycle parity check")
    return 0


def cmd_count(args) -> int:
    if args.dim == 2:
        print(comb.count_2d(args.ell, args.n))
    else:
        print(comb.count_antichains(args.dim, args.ell, args.n))
    return 0


def cmd_width(args) -> int:
    print(comb.width(args.dim, args.ell))
    return 0


def cmd_conjecture(args) -> int:
    report = comb.check_middle_layer_conjecture(args.dim, args.ell)
    print(f"d={report.d} ell={report.ell}")
    print(f"width={report.width}")
    print(f"max_layer_size={report.max_layer_size} at sums {list(report.argmax_sums)}")
    print(f"stated_sum={report.stated_sum} midpoint_sum={report.midpoint_sum}")
    print(f"equal={'true' if report.equal else 'false'}")
    return 0


def cmd_gen(args) -> int:
    gen = comb.random_antichain(args.k, args.m, args.maxval, args.seed)
    save_vector_set(gen.antichain, args.output)
    if not gen.target_reached:
        print(f"warning: reached size {len(gen.antichain)} of requested {args.m}",
              file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    sizes = []
    for tok in args.sizes.split(","):
        tok = tok.strip()
        if tok:
            sizes.append(int(tok))
    if not sizes:
        raise CliError("no sizes given")
    spec = bench_mod.BenchSpec(
        op=args.op,
        sizes=sizes,
        k=args.k,
        maxval=args.maxval,
        seed=args.seed,
        backends=tuple(b.strip() for b in args.backends.split(",") if b.strip()),
        metric=args.metric,
    )
    rows = bench_mod.run_bench(spec)
    if args.csv:
        bench_mod.emit_csv(rows, args.csv)
    else:
        sys.stdout.write(bench_mod.format_csv(rows))
    return 0


def _add_backend_flag(parser) -> None:
    parser.add_argument("--backend", choices=BACKEND_NAMES, default="list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="downset",
                                     description="Antichain-backed downset toolbox.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", help="membership of a vector in a downset file")
    p.add_argument("set", help="vector-set file")
    p.add_argument("vector", help="space-separated components, e.g. '1 0 2'")
    _add_backend_flag(p)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--dump-dot", metavar="PATH")

    for op in ("union", "intersect"):
        p = sub.add_parser(op, help=f"{op} of two downset files")
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("-o", "--output", metavar="PATH")
        _add_backend_flag(p)
        p.add_argument("--stats", action="store_true")
        p.add_argument("--check", action="store_true",
                       help="verify all backends agree")
        p.add_argument("--dump-dot", metavar="PATH")

    p = sub.add_parser("solve-parity", help="solve a pgsolver-format parity game")
    p.add_argument("game")
    _add_backend_flag(p)
    p.add_argument("--strategy", metavar="PATH", help="write the even strategy here")
    p.add_argument("--check", action="store_true",
                   help="cross-check winners against the attractor oracle")

    p = sub.add_parser("count", help="count antichains of the grid [ell]^d")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="restrict to antichains of this size")

    p = sub.add_parser("width", help="maximum antichain size of the grid")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)

    p = sub.add_parser("conjecture", help="width versus largest constant-sum layer")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)

    p = sub.add_parser("gen", help="generate a random antichain file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--maxval", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("bench", help="deterministic benchmark harness")
    p.add_argument("--op", choices=bench_mod.OPS, required=True)
    p.add_argument("--sizes", required=True, help="comma-separated t values")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--maxval", type=int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--metric", choices=bench_mod.METRICS, default="comparisons")
    p.add_argument("--backends", default="list,kdtree")
    p.add_argument("--csv", metavar="PATH")

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "member":
            return cmd_member(args)
        if args.command == "union":
            return cmd_setop(args, "union")
        if args.command == "intersect":
            return cmd_setop(args, "intersect")
        if args.command == "solve-parity":
            return cmd_solve_parity(args)
        if args.command == "count":
            return cmd_count(args)
        if args.command == "width":
            return cmd_width(args)
        if args.command == "conjecture":
            return cmd_conjecture(args)
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "bench":
            return cmd_bench(args)
        parser.error(f"unknown command {args.command!r}")
    except (CliError, DimensionMismatch, VectorSetFormatError,
            parity_mod.ParityParseError, comb.GridTooLarge,
            bench_mod.InfeasibleBench, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
