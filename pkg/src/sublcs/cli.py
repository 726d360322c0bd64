"""Command-line front end: ``sublcs lcs``, ``sublcs editdist`` and ``sublcs bench``."""

from __future__ import annotations

import argparse
import csv
import io
import random
import string
import sys
from typing import Optional, Sequence

from .grid import ContractViolation
from .meter import MeterError, MetricsRecord
from .sublinear import ALGOS, ContaminationError, run_edit_distance, run_lcs
from .weights import CostTable

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3

BENCH_COLUMNS = ("n", "algo", "B", "result", "peak_aux_bits", "leaf_count",
                 "max_depth", "elapsed_ms")

METRICS_HELP = f"""\
metrics JSON (--metrics PATH) has exactly these keys:
  {", ".join(MetricsRecord.KEYS)}
  m <= n after orienting the grid; B is null unless --algo sublinear;
  peak_aux_bits counts live auxiliary bits (input and output are free).

bench CSV columns:
  {",".join(BENCH_COLUMNS)}
  every column except elapsed_ms is deterministic for a given --seed.

exit status: 0 ok, 2 usage or I/O error, 3 internal invariant failure.
"""


class UsageError(Exception):
    pass


def _read_input(path: str, raw: bool, stdin) -> bytes:
    if path == "-":
        data = stdin.buffer.read() if hasattr(stdin, "buffer") else stdin.read()
        if isinstance(data, str):
            data = data.encode("utf-8")
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if not raw:
        if data.endswith(b"\r\n"):
            data = data[:-2]
        elif data.endswith(b"\n"):
            data = data[:-1]
    return data


def _load_pair(args, stdin):
    if args.a == "-" and args.b == "-":
        raise UsageError("only one of the inputs may be '-' (stdin)")
    a = _read_input(args.a, args.raw, stdin)
    b = _read_input(args.b, args.raw, stdin)
    if args.unicode:
        try:
            return a.decode("utf-8"), b.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise UsageError(f"input is not valid UTF-8: {exc}") from exc
    return a, b


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"cost must be nonnegative, got {value}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _add_pair_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("a", metavar="A", help="first input file, or - for stdin")
    p.add_argument("b", metavar="B", help="second input file, or - for stdin")
    p.add_argument("--algo", choices=ALGOS, default="sublinear",
                   help="sublinear recursion (default), two-front sweep, or full table")
    p.add_argument("--block-size", type=_positive, default=None,
                   help="override the block size of the sublinear algorithm")
    p.add_argument("--metrics", metavar="PATH", help="write the run's metrics as JSON")
    p.add_argument("--raw", action="store_true",
                   help="keep a trailing newline instead of stripping it")
    p.add_argument("--unicode", action="store_true",
                   help="compare Unicode code points instead of bytes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sublcs",
        description="LCS length and edit distance in sublinear working space.",
        epilog=METRICS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lcs", help="length of a longest common subsequence",
                       epilog=METRICS_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_pair_args(p)

    p = sub.add_parser("editdist", help="edit distance with integer costs",
                       epilog=METRICS_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_pair_args(p)
    p.add_argument("--cost-ins", type=_nonnegative, default=1)
    p.add_argument("--cost-del", type=_nonnegative, default=1)
    p.add_argument("--cost-sub", type=_nonnegative, default=1)

    p = sub.add_parser("bench", help="space/time curves on random strings as CSV",
                       epilog=METRICS_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--min-n", type=_positive, required=True)
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--factor", type=_positive, default=2)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--algos", default="standard,sublinear",
                   help="comma-separated subset of standard,sublinear")
    p.add_argument("--alphabet", type=_positive, default=4,
                   help="alphabet size of the random strings (max 26)")
    p.add_argument("--out", default="-", help="CSV destination (default stdout)")
    return parser


def _write_metrics(path: Optional[str], rec: MetricsRecord) -> None:
    if not path:
        return
    try:
        with open(path, "w") as fh:
            fh.write(rec.to_json() + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_lcs(args, stdout, stdin) -> int:
    a, b = _load_pair(args, stdin)
    rec = run_lcs(a, b, algo=args.algo, block_size=args.block_size, unicode=args.unicode)
    _write_metrics(args.metrics, rec)
    print(rec.result, file=stdout)
    return EXIT_OK


def cmd_editdist(args, stdout, stdin) -> int:
    a, b = _load_pair(args, stdin)
    costs = CostTable(ins=args.cost_ins, dele=args.cost_del, sub=args.cost_sub)
    rec = run_edit_distance(a, b, costs, algo=args.algo, block_size=args.block_size,
                            unicode=args.unicode)
    _write_metrics(args.metrics, rec)
    print(rec.result, file=stdout)
    return EXIT_OK


def random_pair(n: int, seed: int, alphabet: int = 4) -> tuple[bytes, bytes]:
    """Two random strings of length ``n``; depends only on ``(seed, n, alphabet)``."""
    rng = random.Random(f"{seed}:{n}:{alphabet}")
    letters = string.ascii_lowercase[:alphabet]
    a = "".join(rng.choice(letters) for _ in range(n)).encode()
    b = "".join(rng.choice(letters) for _ in range(n)).encode()
    return a, b


def bench_rows(min_n: int, max_n: int, factor: int, seed: int,
               algos: Sequence[str], alphabet: int = 4):
    n = min_n
    while n <= max_n:
        a, b = random_pair(n, seed, alphabet)
        for algo in algos:
            rec = run_lcs(a, b, algo=algo)
            yield {
                "n": n, "algo": algo, "B": "" if rec.B is None else rec.B,
                "result": rec.result, "peak_aux_bits": rec.peak_aux_bits,
                "leaf_count": rec.leaf_count, "max_depth": rec.max_depth,
                "elapsed_ms": rec.elapsed_ms,
            }
        n *= factor


def _is_pow2(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def cmd_bench(args, stdout, stdin) -> int:
    if not (_is_pow2(args.min_n) and _is_pow2(args.max_n)):
        raise UsageError("--min-n and --max-n must be powers of two")
    if args.min_n > args.max_n:
        raise UsageError("--min-n exceeds --max-n")
    if args.factor < 2:
        raise UsageError("--factor must be at least 2")
    if args.alphabet > 26:
        raise UsageError("--alphabet is at most 26")
    algos = [x.strip() for x in args.algos.split(",") if x.strip()]
    bad = [x for x in algos if x not in ("standard", "sublinear")]
    if not algos or bad:
        raise UsageError(f"--algos must be a subset of standard,sublinear (got {args.algos!r})")

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in bench_rows(args.min_n, args.max_n, args.factor, args.seed, algos,
                          args.alphabet):
        writer.writerow(row)
        print(f"n={row['n']} {row['algo']}: {row['elapsed_ms']} ms", file=sys.stderr)
    if args.out == "-":
        stdout.write(buf.getvalue())
    else:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    return EXIT_OK


COMMANDS = {"lcs": cmd_lcs, "editdist": cmd_editdist, "bench": cmd_bench}


def main(argv: Optional[Sequence[str]] = None, stdout=None, stdin=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stdin = stdin if stdin is not None else sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout, stdin)
    except (UsageError, ContractViolation) as exc:
        print(f"sublcs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MeterError, ContaminationError) as exc:
        print(f"sublcs: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
