"""The ``fclp`` command: check, solve, translate and bench."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .asp import AspSyntaxError, parse_asp
from .bench import SUITES, run_bench, write_csv
from .core import FuelExhausted, fact_key, format_attribute, format_term, is_reserved, with_facts
from .documents import DocumentError, facts_from_document, solution_document
from .graphs import FAMILIES
from .solver import DEFAULT_FUEL, Solver
from .syntax import DiagnosticError, format_source, load_program
from .translate import NonGroundInput, NotDatalog, asp_to_source, datalog_to_source

EXIT_OK, EXIT_INPUT, EXIT_NO_SOLUTION, EXIT_FUEL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # Usage errors share exit code 1 with other bad input; 2 means "no solution".
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class _Usage(Exception):
    """Bad input detected after argument parsing; reported with exit code 1."""


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror}") from None


def _load(path: str):
    try:
        return load_program(_read(path))
    except DiagnosticError as e:
        raise _Usage("\n".join(f"{path}:{d}" for d in e.diagnostics)) from None


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("FCLP_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise _Usage(f"FCLP_SEED must be an integer, got {env!r}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_check(args) -> int:
    program = _load(args.file)
    print(f"ok: {len(program.rules)} rules")
    return EXIT_OK


def _text_solution(index: int, facts) -> str:
    shown = sorted((f for f in facts if not is_reserved(f.attr.pred)), key=fact_key)
    lines = [f"solution {index}:"]
    lines += [f"  {format_attribute(f.attr)} is {format_term(f.value, True)}" for f in shown]
    return "\n".join(lines)


def cmd_solve(args) -> int:
    program = _load(args.file)
    if args.facts:
        try:
            extra = facts_from_document(json.loads(_read(args.facts)))
        except (json.JSONDecodeError, DocumentError) as e:
            raise _Usage(f"{args.facts}: {e}") from None
        program = with_facts(program, sorted(extra, key=fact_key))
    if args.count < 0:
        raise _Usage("--count must be non-negative")
    solver = Solver(program, seed=_seed(args.seed), fuel=args.fuel)
    found = 0
    status = "count-reached"
    try:
        while found < args.count:
            sol = solver.next_solution()
            if sol is None:
                status = "exhausted"
                break
            found += 1
            if args.format == "json":
                print(json.dumps(solution_document(sol)))
            else:
                print(_text_solution(found, sol))
    except FuelExhausted:
        status = "fuel-exhausted"
    if found == args.count and solver.done:
        status = "exhausted"
    if args.format == "json":
        print(json.dumps({"status": status, "solutions": found}))
    else:
        print(f"status: {status}, solutions found: {found}")
    if args.stats:
        print(json.dumps(vars(solver.stats)), file=sys.stderr)
    if found:
        return EXIT_OK
    return EXIT_FUEL if status == "fuel-exhausted" else EXIT_NO_SOLUTION


def cmd_translate(args) -> int:
    text = _read(args.input)
    try:
        asp = parse_asp(text)
        if args.source == "asp":
            src = asp_to_source(asp, permissive=args.permissive, allow_nonground=args.allow_nonground)
        else:
            src = datalog_to_source(asp)
    except (AspSyntaxError, NonGroundInput, NotDatalog) as e:
        raise _Usage(f"{args.input}: {e}") from None
    out = format_source(src)
    if args.output in (None, "-"):
        sys.stdout.write(out)
    else:
        Path(args.output).write_text(out)
    return EXIT_OK


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {text!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def cmd_bench(args) -> int:
    families = [f for f in args.family.split(",") if f] if args.family != "all" else list(FAMILIES)
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise _Usage(f"unknown family {unknown[0]!r}; expected one of {', '.join(FAMILIES)} or all")
    rows = []
    for family in families:
        rows += run_bench(args.suite, family, args.sizes, seed=_seed(args.seed), repeat=args.repeat,
                          fuel=args.fuel)
    write_csv(rows, sys.stdout)
    if args.figure:
        from .plotting import plot_bench

        plot_bench(rows, args.figure, title=args.suite)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fclp", description="Finite-choice logic programming toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="parse, desugar and check a program")
    c.add_argument("file", help="program file, or - for stdin")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="enumerate solutions of a program")
    s.add_argument("file", help="program file, or - for stdin")
    s.add_argument("--count", "-n", type=int, default=1, help="maximum number of solutions (default 1)")
    s.add_argument("--seed", type=int, default=None, help="random seed (default: $FCLP_SEED or 0)")
    s.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="insertion budget")
    s.add_argument("--facts", help="JSON array of extra facts to add as rules")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--stats", action="store_true", help="print search counters to stderr")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("translate", help="rewrite ASP or datalog as a finite-choice program")
    t.add_argument("--from", dest="source", choices=("asp", "datalog"), required=True)
    t.add_argument("input", help="input file, or - for stdin")
    t.add_argument("output", nargs="?", help="output file (default stdout)")
    t.add_argument("--allow-nonground", action="store_true", help="accept ASP rules with variables")
    t.add_argument("--permissive", action="store_true", help="emit unconditional open rules for negated atoms")
    t.set_defaults(func=cmd_translate)

    b = sub.add_parser("bench", help="time graph suites; CSV on stdout")
    b.add_argument("--suite", choices=tuple(SUITES), default="canonical-reps")
    b.add_argument("--family", default="all", help=f"comma-separated subset of {', '.join(FAMILIES)}, or all")
    b.add_argument("--sizes", type=_sizes, default=[100, 200, 400], help="comma-separated node counts")
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--repeat", type=int, default=3)
    b.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    b.add_argument("--figure", help="also write a plot of median time against edges to this path")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Usage as e:
        print(f"fclp: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
