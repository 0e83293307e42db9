"""Command line entry point: ``menages count|enumerate|verify|check``.

Exit codes: 0 success or valid, 1 invalid seating or unexplained
divergence, 2 bad input, 3 domain or resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .enumerator import DEFAULT_CEILING, CeilingExceeded, count_by_enumeration, enumerate_seatings
from .formula import DomainError, count_exact, count_paper, factorial, is_lone_couple, is_lone_large_family
from .model import (
    ProblemSpec,
    SeatingError,
    SpecError,
    build_population,
    format_seating,
    is_valid_seating,
    parse_seating,
)
from .oracle import DEFAULT_CAP, CapExceeded, brute_force_count

EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_DOMAIN = 3

AGREE = "AGREE"
DOCUMENTED = "DIVERGE(documented)"
DIVERGE = "DIVERGE"
REPORT_HEADER = ("spec", "formula", "exact", "plans", "distinct", "oracle", "flag")


class InputError(Exception):
    pass


def parse_families(text: str) -> dict[int, int]:
    """``"2=4,3=1"`` -> ``{2: 4, 3: 1}``."""
    families: dict[int, int] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        try:
            k, n = item.split("=")
            families[int(k)] = families.get(int(k), 0) + int(n)
        except ValueError:
            raise InputError(f"bad family entry {item!r}, expected SIZE=COUNT") from None
    return families


def _load_json(source: str) -> dict:
    if source.lstrip().startswith("{"):
        text = source
    elif source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read spec file: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"spec is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) - {"families", "single_men", "single_women"}:
        raise InputError("spec JSON must be an object with keys families, single_men, single_women")
    return doc


def spec_from_args(args: argparse.Namespace) -> ProblemSpec:
    try:
        flags = None
        if args.families is not None or args.single_men is not None or args.single_women is not None:
            flags = ProblemSpec(
                parse_families(args.families or ""),
                args.single_men or 0,
                args.single_women or 0,
            )
        if args.spec is None:
            if flags is None:
                raise InputError("no spec given: use --spec or --families/--single-men/--single-women")
            return flags
        doc = _load_json(args.spec)
        families = doc.get("families", {})
        if not isinstance(families, dict):
            raise InputError("families must be an object mapping size to count")
        from_json = ProblemSpec(
            {int(k): n for k, n in families.items()},
            doc.get("single_men", 0),
            doc.get("single_women", 0),
        )
    except (SpecError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if flags is not None and flags != from_json:
        raise InputError(
            f"--spec ({from_json.describe()}) conflicts with flags ({flags.describe()})"
        )
    return from_json


def cmd_count(args) -> int:
    spec = spec_from_args(args)
    if args.method == "formula":
        value = count_paper(spec)
    elif args.method == "exact":
        value = count_exact(spec)
    elif args.method == "enumerate":
        plans, distinct = count_by_enumeration(spec, ceiling=args.ceiling)
        value = plans if args.plans else distinct
    else:
        value = brute_force_count(spec, cap=args.cap, workers=args.workers)
    print(value)
    return 0


def cmd_enumerate(args) -> int:
    spec = spec_from_args(args)
    population = build_population(spec)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        for seating in enumerate_seatings(spec, limit=args.limit):
            out.write(format_seating(population, seating) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def verify_row(spec: ProblemSpec, cap: int = DEFAULT_CAP, workers: int = 1,
               ceiling: int = DEFAULT_CEILING) -> tuple:
    """One report row: (spec, formula, exact, plans, distinct, oracle, flag)."""
    formula = count_paper(spec)
    exact = count_exact(spec)
    plans, distinct = count_by_enumeration(spec, ceiling=ceiling)
    oracle = brute_force_count(spec, cap=cap, workers=workers)
    values = (formula, exact, plans, distinct, oracle)
    if len(set(values)) == 1:
        flag = AGREE
    elif is_lone_large_family(spec):
        k = spec.families[0][0]
        literal = (k - 2) * factorial(k - 1)
        flag = DOCUMENTED if values == (literal, factorial(k - 1), literal, factorial(k - 1), factorial(k - 1)) else DIVERGE
    elif is_lone_couple(spec):
        flag = DOCUMENTED if values == (0, 1, 0, 0, 1) else DIVERGE
    else:
        flag = DIVERGE
    return (spec.describe(), *values, flag)


def sweep_specs(max_persons: int, min_persons: int = 2, max_family: int | None = None):
    """Every spec with at least one family and a head count in range."""

    def partitions(n, lo):
        if n == 0:
            yield ()
            return
        hi = n if max_family is None else min(n, max_family)
        for k in range(lo, hi + 1):
            for rest in partitions(n - k, k):
                yield (k,) + rest

    for total in range(max(min_persons, 2), max_persons + 1):
        for in_families in range(2, total + 1):
            for sizes in partitions(in_families, 2):
                families: dict[int, int] = {}
                for k in sizes:
                    families[k] = families.get(k, 0) + 1
                for m in range(total - in_families + 1):
                    yield ProblemSpec(families, m, total - in_families - m)


def cmd_verify(args) -> int:
    if args.max_persons is not None:
        if args.max_persons > args.cap:
            raise CapExceeded(f"sweep bound {args.max_persons} exceeds the brute-force cap of {args.cap}")
        specs = list(sweep_specs(args.max_persons, args.min_persons, args.max_family))
    else:
        specs = [spec_from_args(args)]
    print("\t".join(REPORT_HEADER))
    status = 0
    for spec in specs:
        row = verify_row(spec, cap=args.cap, workers=args.workers, ceiling=args.ceiling)
        print("\t".join(map(str, row)))
        if row[-1] == DIVERGE:
            status = EXIT_INVALID
    return status


def cmd_check(args) -> int:
    spec = spec_from_args(args)
    population = build_population(spec)
    try:
        seating = parse_seating(population, args.seating)
        verdict = is_valid_seating(population, seating)
    except SeatingError as exc:
        raise InputError(str(exc)) from None
    print(verdict)
    return 0 if verdict.valid else EXIT_INVALID


def _add_spec_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="JSON spec: inline object, file path, or - for stdin")
    p.add_argument("--families", help="family sizes and counts, e.g. 2=4,3=1")
    p.add_argument("--single-men", type=int, help="number of single men")
    p.add_argument("--single-women", type=int, help="number of single women")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="menages", description="Count and enumerate constrained circular family seatings."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="print the number of valid seatings")
    _add_spec_options(p)
    p.add_argument("--method", choices=["formula", "exact", "enumerate", "brute-force"], default="formula")
    p.add_argument("--plans", action="store_true",
                   help="with --method enumerate, print the plan count instead of distinct seatings")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="brute-force person cap")
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING, help="enumeration plan ceiling")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="write constructed seatings, one per line")
    _add_spec_options(p)
    p.add_argument("--limit", type=int)
    p.add_argument("--output", "-o", help="output file (default stdout)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="cross-check all counting methods")
    _add_spec_options(p)
    p.add_argument("--max-persons", type=int, help="sweep every spec up to this many persons")
    p.add_argument("--min-persons", type=int, default=2)
    p.add_argument("--max-family", type=int, help="largest family size in the sweep")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="validate one seating line")
    _add_spec_options(p)
    p.add_argument("seating", help='person tokens, e.g. "W1.1 H1 H2 W2.1"')
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, CapExceeded, CeilingExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SeatingError as exc:
        # too few persons for a table
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
