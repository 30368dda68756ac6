"""Command-line interface: ``idealizer-lab {seq,levels,chain,bracket,verify}``.

Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .checks import run_suite
from .grading import decompose, enumerate_layer
from .lie import ElementSemanticError, ElementSyntaxError, RingContext, bracket, parse_element, print_element
from .oracle import DEFAULT_SEED
from .partitions import BFileError, load_bfile, partition_counts
from .report import METHODS, build_chain_report

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)


def _context(n: int) -> RingContext:
    try:
        return RingContext(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_seq(args) -> int:
    if args.max < 0:
        raise UsageError("--max must be >= 0")
    counts = partition_counts(args.max)
    mismatch = None
    if args.bfile:
        snapshot = load_bfile(args.bfile)
        mismatch = next((i for i in range(args.max + 1) if snapshot.get(i) != counts.a[i]), None)
    if args.format == "json":
        payload = {"max": args.max, "a": list(counts.a), "b": list(counts.b), "c": list(counts.c)}
        if args.bfile:
            payload["bfile_match"] = mismatch is None
            payload["first_mismatch"] = mismatch
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        rows = ["n,a,b,c"] + [f"{i},{counts.a[i]},{counts.b[i]},{counts.c[i]}" for i in range(args.max + 1)]
        text = "\n".join(rows) + "\n"
    else:
        lines = [f"{name}: {' '.join(map(str, seq))}" for name, seq in zip("abc", (counts.a, counts.b, counts.c))]
        if args.bfile:
            lines.append("bfile: match" if mismatch is None else f"bfile: mismatch at index {mismatch}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if mismatch is not None:
        print(f"b-file mismatch at index {mismatch}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_levels(args) -> int:
    ctx = _context(args.n)
    if args.i < 0:
        raise UsageError("--i must be >= 0")
    idx = decompose(ctx.n, args.i)
    layer = enumerate_layer(ctx, args.i)
    listing = {k: [str(e) for e in v] for k, v in sorted(layer.by_direction.items())}
    if args.format == "json":
        payload = {"n": ctx.n, "i": idx.i, "h": idx.h, "r": idx.r, "by_k": {str(k): v for k, v in listing.items()}}
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        rows = ["n,i,h,r,k,element"] + [
            f"{ctx.n},{idx.i},{idx.h},{idx.r},{k},{e}" for k, elems in listing.items() for e in elems
        ]
        text = "\n".join(rows) + "\n"
    else:
        lines = [f"k={k}: {', '.join(elems)}" for k, elems in listing.items()]
        text = "\n".join(lines) + "\n" if lines else "(empty)\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_chain(args) -> int:
    _context(args.n)
    if args.i_max < 0:
        raise UsageError("--i-max must be >= 0")
    if args.margin < 0:
        raise UsageError("--margin must be >= 0")
    report = build_chain_report(args.n, args.i_max, args.method, args.margin, args.elements)
    render = {"json": report.to_json, "csv": report.to_csv, "text": report.to_text}[args.format]
    _emit(render(), args.out)
    if report.oracle_mismatch or report.prediction_mismatch:
        print("chain mismatch detected", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_bracket(args) -> int:
    ctx = _context(args.n)
    try:
        x = parse_element(ctx, args.left)
        y = parse_element(ctx, args.right)
    except (ElementSyntaxError, ElementSemanticError) as exc:
        raise UsageError(str(exc)) from None
    _emit(print_element(bracket(ctx, x, y)) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    _context(args.n)
    if args.i_max < 0:
        raise UsageError("--i-max must be >= 0")
    report = run_suite(args.n, args.i_max, seed=args.seed, trials=args.trials)
    if args.format == "json":
        text = json.dumps(report.as_dict(), indent=2) + "\n"
    elif args.format == "csv":
        rows = ["name,passed,witness"] + [
            f"{c.name},{str(c.passed).lower()},{json.dumps(c.witness or '')}" for c in report.checks
        ]
        text = "\n".join(rows) + "\n"
    else:
        lines = [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" + ("" if c.passed else f" [witness: {c.witness}]")
            for c in report.checks
        ]
        lines.append(f"{'all checks passed' if report.passed else 'verification FAILED'} (n={args.n}, i_max={args.i_max})")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    parser = _Parser(prog="idealizer-lab", description="Idealizer chain in the integral Lie ring of partitions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seq", parents=[common], help="partition counts a, b, c")
    p.add_argument("--max", type=int, default=14)
    p.add_argument("--bfile", default=None, help="OEIS b-file to compare the a row against")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("levels", parents=[common], help="list the layer of level i by direction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("chain", parents=[common], help="rank table of the chain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i-max", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="analytic")
    p.add_argument("--margin", type=int, default=0, help="extra weight for oracle candidates")
    p.add_argument("--elements", action="store_true", help="include element listings")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("bracket", parents=[common], help="bracket of two elements")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("verify", parents=[common], help="run every invariant check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BFileError as exc:
        print(f"error: bad b-file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
