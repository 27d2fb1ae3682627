"""Command line: ``hvselect gen-front | select | hv | bench``.

Exit codes: 0 success, 1 usage error, 2 data or contract error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from .bench import BenchConfig, run_bench, summarize, write_records
from .contribution import ContractViolation
from .core import ReferencePointError
from .fronts import SHAPES, FrontSpec, generate, normalize_unit_box
from .hypervolume import hv
from .io import PointSetFormatError, read_points, write_json, write_points
from .selectors import SELECTORS, SelectionProblem, select

EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hvselect", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-front", help="write a seeded front as CSV plus JSON metadata")
    p.add_argument("--shape", required=True, choices=SHAPES)
    p.add_argument("--dim", required=True, type=int)
    p.add_argument("--count", required=True, type=_positive)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=None,
                   help="min-max rescale to [0,1] (default: only for discontinuous)")
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("select", help="greedy hypervolume subset selection")
    p.add_argument("input", type=Path)
    p.add_argument("--k", required=True, type=_nonnegative)
    p.add_argument("--algorithm", choices=sorted(SELECTORS), default="lgi")
    p.add_argument("--ref", type=float, default=1.1)
    p.add_argument("--normalize", action="store_true", help="min-max rescale the input first")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--stats", type=Path, help="JSON stats path (default: OUT with .json)")

    p = sub.add_parser("hv", help="print the hypervolume of a point set")
    p.add_argument("input", type=Path)
    p.add_argument("--ref", type=float, default=1.1)
    p.add_argument("--normalize", action="store_true")

    p = sub.add_parser("bench", help="run a timing matrix from a YAML/JSON config")
    p.add_argument("config", type=Path)
    p.add_argument("--out", required=True, type=Path, help="results CSV")
    p.add_argument("--summary", type=Path, help="summary JSON (default: OUT with .json)")
    p.add_argument("--serial", action="store_true", help="run cells one at a time (default)")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes for cells")
    return parser


def _load(path: Path, normalize: bool) -> np.ndarray:
    points = read_points(path)
    return normalize_unit_box(points) if normalize else points


def cmd_gen_front(args) -> int:
    try:
        spec = FrontSpec(args.shape, args.dim, args.count, args.seed)
    except ValueError as exc:
        print(f"hvselect gen-front: {exc}", file=sys.stderr)
        return EXIT_USAGE
    normalized = args.normalize if args.normalize is not None else spec.shape == "discontinuous"
    front = generate(spec, normalize=normalized)
    write_points(args.out, front)
    write_json(args.out.with_suffix(".json"), {
        "shape": spec.shape, "dim": spec.dim, "count": spec.count,
        "seed": spec.seed, "normalized": bool(normalized),
    })
    return 0


def cmd_select(args) -> int:
    points = _load(args.input, args.normalize)
    problem = SelectionProblem(points, args.k, args.ref)
    start = time.perf_counter()
    result = select(problem, args.algorithm)
    seconds = time.perf_counter() - start
    original = read_points(args.input) if args.normalize else points
    write_points(args.out, original[result.selected])
    write_json(args.stats or args.out.with_suffix(".json"), {
        "algorithm": args.algorithm,
        "k": args.k,
        "selected": result.selected,
        "hv": result.hv,
        "hv_trajectory": result.hv_trajectory,
        "hvc_evaluations": result.hvc_evaluations,
        "update_operations": result.update_operations,
        "seconds": seconds,
    })
    return 0


def format_hv(value: float) -> str:
    return repr(float(f"{value:.12g}"))


def cmd_hv(args) -> int:
    points = _load(args.input, args.normalize)
    ref = np.full(points.shape[1], args.ref)
    print(format_hv(hv(points, ref)))
    return 0


def cmd_bench(args) -> int:
    config = BenchConfig.load(args.config)
    records = run_bench(config, jobs=1 if args.serial else args.jobs)
    write_records(args.out, records)
    summary = summarize(records)
    write_json(args.summary or args.out.with_suffix(".json"), summary)
    if summary["failed"]:
        print(f"hvselect bench: {len(summary['failed'])} failed run(s)", file=sys.stderr)
        return EXIT_DATA
    return 0


COMMANDS = {"gen-front": cmd_gen_front, "select": cmd_select, "hv": cmd_hv, "bench": cmd_bench}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ReferencePointError as exc:
        rows = ", ".join(str(i + 1) for i in exc.indices[:20])
        print(f"hvselect {args.command}: {len(exc.indices)} data row(s) not strictly below "
              f"the reference point (1-based data rows: {rows})", file=sys.stderr)
        return EXIT_DATA
    except (PointSetFormatError, ContractViolation, ValueError, OSError) as exc:
        print(f"hvselect {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
