"""Command-line interface: ``wellscoped {eval,norm,check,gen,bench}``.

Exit codes: 0 success, 1 usage error, 2 unbound name, 3 parse error,
4 fuel exhausted, 5 stuck or ill-shaped redex, 6 benchmark hash mismatch.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from wellscoped import bench
from wellscoped.deep import run_deep
from wellscoped.environment import EnvRepr
from wellscoped.evaluators import EvalError, EvalStrategy, Fuel, FuelExhausted, Impl, evaluate, nf
from wellscoped.frontend.generate import GenConfig, gen_term
from wellscoped.frontend.named import UnboundName, scope_check
from wellscoped.frontend.parser import ParseError, parse
from wellscoped.frontend.pretty import pretty, pretty_indices
from wellscoped.indices import ScopeError

EXIT_OK, EXIT_USAGE, EXIT_UNBOUND, EXIT_PARSE, EXIT_FUEL, EXIT_STUCK, EXIT_HASH = range(7)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _strategy(text: str) -> EvalStrategy:
    try:
        return EvalStrategy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _repr(text: str) -> EnvRepr:
    try:
        return EnvRepr.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _natural(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return n


def _split_list(values: list[str] | None, conv, default: Sequence) -> list:
    if not values:
        return list(default)
    out = []
    for v in values:
        for part in v.split(","):
            if part:
                out.append(conv(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wellscoped", description="Well-scoped lambda calculus evaluators and benchmarks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def source_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("file", help="term file ('-' reads standard input)")
        sp.add_argument("--scope", type=_natural, default=0,
                        help="number of free variables, named x0 .. x{N-1}")

    def run_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--impl", type=_strategy, default=EvalStrategy.parse("bindv"),
                        help="evalv | substv | bindv | envv (drop the v for call-by-name)")
        sp.add_argument("--env", type=_repr, default=EnvRepr.LAZY, help="functional | lazy | strict")
        sp.add_argument("--fuel", type=_natural, default=None, help="maximum reduction steps")

    for name, help_ in (("eval", "weak-head evaluation"), ("norm", "full normalization")):
        sp = sub.add_parser(name, help=help_)
        source_args(sp)
        run_args(sp)

    sp = sub.add_parser("check", help="parse and scope-check only")
    source_args(sp)
    sp.add_argument("--dump-indices", action="store_true", help="print the de Bruijn form")

    sp = sub.add_parser("gen", help="print random well-scoped terms")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=_natural, default=10)
    sp.add_argument("--size", type=_natural, default=bench.RANDOM_SIZE, help="size budget per term")
    sp.add_argument("--min-steps", type=_natural, default=0)
    sp.add_argument("--scope", type=_natural, default=0)
    sp.add_argument("--env", type=_repr, default=EnvRepr.LAZY)
    sp.add_argument("--out", default=None, help="output path (default: standard output)")

    sp = sub.add_parser("bench", help="time evaluators and write CSV")
    sp.add_argument("--task", action="append", choices=bench.TASKS,
                    help="eval | nf | random (repeatable; default all three)")
    sp.add_argument("--impl", action="append", help="strategies, repeatable or comma separated")
    sp.add_argument("--env", action="append", help="environment representations (default lazy)")
    sp.add_argument("--reps", type=_natural, default=20)
    sp.add_argument("--warmup", type=_natural, default=bench.WARMUP)
    sp.add_argument("--seed", type=int, default=0, help="seed for the random task")
    sp.add_argument("--count", type=_natural, default=bench.RANDOM_COUNT, help="terms in the random task")
    sp.add_argument("--min-steps", type=_natural, default=bench.RANDOM_MIN_STEPS)
    sp.add_argument("--out", default=None, help="CSV path (default: standard output)")
    sp.add_argument("--quiet", action="store_true", help="no progress on standard error")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _ambient(scope: int) -> list[str]:
    return [f"x{i}" for i in range(scope)]


def _load(args, repr: EnvRepr):
    return scope_check(parse(_read(args.file)), _ambient(args.scope), repr)


def _run(args, out: TextIO) -> int:
    strategy: EvalStrategy = args.impl
    t = _load(args, args.env)
    fuel = Fuel(args.fuel)
    if args.command == "eval":
        if strategy.impl is Impl.EVALV and args.scope:
            print("error: the closure evaluator only runs closed terms", file=sys.stderr)
            return EXIT_USAGE
        result = run_deep(evaluate, t, strategy, fuel, args.scope, args.env)
    else:
        if strategy.impl is Impl.EVALV:
            print("error: the closure evaluator does not normalize; use substv, bindv or envv",
                  file=sys.stderr)
            return EXIT_USAGE
        result = run_deep(nf, t, strategy, fuel, args.scope, args.env)
    print(run_deep(pretty, result, None, args.scope), file=out)
    return EXIT_OK


def _check(args, out: TextIO) -> int:
    t = _load(args, EnvRepr.LAZY)
    if args.dump_indices:
        print(run_deep(pretty_indices, t), file=out)
    return EXIT_OK


def _gen(args, out: TextIO) -> int:
    cfg = GenConfig(seed=args.seed, target_scope=args.scope, size_budget=args.size,
                    min_steps=args.min_steps, repr=args.env)

    def lines() -> list[str]:
        stream = gen_term(cfg)
        return [pretty(next(stream), scope=args.scope) for _ in range(args.count)]

    text = "".join(line + "\n" for line in run_deep(lines))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _bench(args, out: TextIO) -> int:
    strategies = _split_list(args.impl, EvalStrategy.parse, bench.ALL_STRATEGIES)
    reprs = _split_list(args.env, EnvRepr.parse, (EnvRepr.LAZY,))
    tasks = args.task or list(bench.TASKS)
    if args.reps < 1:
        print("error: --reps must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        records = bench.run_bench(tasks, strategies, reprs, args.reps, args.seed, args.warmup,
                                  args.count, args.min_steps, None if args.quiet else sys.stderr)
    except bench.HashMismatch as exc:
        print(exc, file=sys.stderr)
        return EXIT_HASH
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            bench.write_csv(records, f)
    else:
        bench.write_csv(records, out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"eval": _run, "norm": _run, "check": _check, "gen": _gen, "bench": _bench}
    try:
        return handlers[args.command](args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnboundName as exc:
        print(f"scope error: {exc}", file=sys.stderr)
        return EXIT_UNBOUND
    except FuelExhausted as exc:
        print(f"fuel exhausted: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except EvalError as exc:
        print(f"stuck: {exc}", file=sys.stderr)
        return EXIT_STUCK
    except (ValueError, ScopeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
