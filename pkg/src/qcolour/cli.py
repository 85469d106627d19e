"""Command-line interface: JSON on stdout, diagnostics on stderr.

Exit codes: 0 success (a Clash verdict is a successful analysis), 2 usage or
domain errors, 3 search/construction budget exhaustion (including a
non-exhaustive search summary). Output keys are emitted in a fixed order;
``--pretty`` only adds whitespace.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .colourings import (
    PAIR_IDS,
    UNARY_IDS,
    Bit,
    big_phi,
    colour_key,
    colouring_fn,
    phi,
    psi,
    psi_prime,
)
from .construct import DEFAULT_SEARCH_BUDGET, extend_sum_closed
from .core import DEFAULT_PRIME_COUNT, PrimeTable, Rational, parse_rational
from .digits import expand
from .errors import BudgetExhaustedError, DomainError
from .verify import CombinationMode, UniverseSpec, check, property_suite, search


def _emit(obj: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(obj, indent=2))
    else:
        print(json.dumps(obj, separators=(",", ":")))


def _table(args: argparse.Namespace) -> PrimeTable | None:
    index = getattr(args, "prime_index", None)
    if index is None:
        return None
    if index < 1:
        raise DomainError(f"prime index must be >= 1, got {index}")
    return PrimeTable(max(DEFAULT_PRIME_COUNT, index))


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise DomainError(f"{what} must be an integer, got {text!r}") from None


def _colour_one(colouring_id: str, text: str, table: PrimeTable | None):
    if colouring_id in PAIR_IDS:
        parts = text.split(",")
        if len(parts) != 2:
            raise DomainError(
                f"{colouring_id} colours pairs; expected 'a,b', got {text!r}"
            )
        a = _parse_int(parts[0], "first component")
        b = _parse_int(parts[1], "second component")
        fn = {"bigphi": big_phi, "psi": psi, "psiprime": psi_prime}[colouring_id]
        return fn(a, b)
    if colouring_id == "phi":
        return Bit(phi(_parse_int(text, "phi argument")))
    return colouring_fn(colouring_id, table)(parse_rational(text))


def _read_sequence(path: str | None) -> list[Rational]:
    if path is None or path == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise DomainError(f"cannot read {path}: {exc}") from None
    out = []
    for line in lines:
        text = line.split("#", 1)[0].strip()
        if text:
            out.append(parse_rational(text))
    if not out:
        raise DomainError("no terms supplied")
    return out


def _cmd_colour(args: argparse.Namespace) -> int:
    value = _colour_one(args.colouring, args.value, _table(args))
    _emit({"input": args.value, "colour": colour_key(value)}, args.pretty)
    return 0


def _cmd_expand(args: argparse.Namespace) -> int:
    x = parse_rational(args.value)
    n = args.prime_index if args.prime_index is not None else 1
    table = _table(args) or PrimeTable(DEFAULT_PRIME_COUNT)
    exp = expand(x, n, table)
    digits = sorted(exp.digits.items(), reverse=True)
    _emit(
        {
            "input": args.value,
            "base_index": n,
            "base": table.primorial(n),
            "digits": [[pos, digit] for pos, digit in digits],
            "leading": exp.leading(),
            "trailing": exp.trailing(),
            "positional": exp.positional(table),
        },
        args.pretty,
    )
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    xs = _read_sequence(args.file)
    cert = check(args.colouring, xs, CombinationMode(args.mode), _table(args))
    _emit(cert.to_obj(), args.pretty)
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    universe = UniverseSpec(
        numerator_bound=args.numerator_bound,
        denominator_bound=args.denominator_bound,
        prime_index_bound=args.prime_index if args.prime_index is not None else 1,
        integers_only=args.integers_only,
    )
    result = search(
        args.colouring,
        universe,
        CombinationMode(args.mode),
        target_size=args.target,
        budget=args.budget,
        workers=args.workers,
        table=_table(args),
    )
    _emit(result.to_obj(), args.pretty)
    return 0 if result.exhausted else 3


def _cmd_construct(args: argparse.Namespace) -> int:
    result = extend_sum_closed(args.terms, args.budget)
    _emit(result.to_obj(), args.pretty)
    return 0


def _cmd_properties(args: argparse.Namespace) -> int:
    report = property_suite(args.seed, args.samples)
    _emit(report.to_obj(), args.pretty)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcolour",
        description="Colourings of the positive rationals, digit expansions, "
        "monochromaticity checks, bounded searches, and sequence construction.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--pretty", action="store_true", help="indent JSON output (same key order)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("colour", parents=[common], help="colour one value")
    p.add_argument("--colouring", required=True, choices=UNARY_IDS + PAIR_IDS)
    p.add_argument("--prime-index", type=int, help="prime table size for mu/alpha")
    p.add_argument("value", help="rational 'n/d', integer, or 'a,b' for pair colourings")
    p.set_defaults(fn=_cmd_colour)

    p = sub.add_parser("expand", parents=[common], help="digit expansion in a primorial base")
    p.add_argument("--prime-index", type=int, help="base index n (base is P_n; default 1)")
    p.add_argument("value")
    p.set_defaults(fn=_cmd_expand)

    p = sub.add_parser("check", parents=[common], help="monochromaticity certificate")
    p.add_argument("--colouring", required=True, choices=UNARY_IDS)
    p.add_argument("--mode", choices=[m.value for m in CombinationMode], default="pairwise")
    p.add_argument("--prime-index", type=int, help="prime table size for mu/alpha")
    p.add_argument("file", nargs="?", help="terms, one per line ('#' comments); default stdin")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("search", parents=[common], help="bounded monochromatic-configuration search")
    p.add_argument("--colouring", required=True, choices=UNARY_IDS)
    p.add_argument("--mode", choices=[m.value for m in CombinationMode], default="pairwise")
    p.add_argument("--target", type=int, default=2, help="configuration size to certify")
    p.add_argument("--budget", type=int, default=1_000_000, help="node budget")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--numerator-bound", type=int, default=20)
    p.add_argument("--denominator-bound", type=int, default=1)
    p.add_argument("--prime-index", type=int, help="universe denominators use the first n primes")
    p.add_argument("--integers-only", action="store_true")
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("construct", parents=[common], help="sum-and-product monochromatic terms")
    p.add_argument("--terms", type=int, required=True, help="number of terms m")
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("properties", parents=[common], help="run the seeded digit-law suite")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(fn=_cmd_properties)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExhaustedError as exc:
        _emit(
            {"budget_exhausted": {"message": str(exc), "best_depth": exc.best_depth}},
            args.pretty,
        )
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
