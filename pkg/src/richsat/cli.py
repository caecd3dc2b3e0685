"""Command-line front end.

Usage:
    richsat partition --d 1,2,1
    richsat quiver --d 3,1,2,3 --format dot
    richsat verify --tables 1,2 --n 5 --p 7 --format json
    richsat batch --file vectors.txt --verb centralizer

Every verb except ``--format dot`` and plain-text ``partition`` emits a report
of named checks. The exit status is 0 when no check fails, 1 when one does and
2 for usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable

from . import cent, esub, jordan, quiver
from .errors import CapExceeded, ParseError, PreconditionViolated, RichsatError
from .exact import is_prime, next_prime
from .report import FAIL, Check, Report
from .typea import DimensionVector, levi_roots, line_diagram, richardson

BATCH_VERBS = ("quiver", "richardson", "partition", "centralizer", "esub", "srk")


class UsageError(Exception):
    """Bad flag value discovered after parsing; the message names the flag."""


# -- argument types --------------------------------------------------------------------

def _dimension_vector(text: str) -> DimensionVector:
    try:
        return DimensionVector.parse(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def parse_range(text: str) -> list[int]:
    """'5' -> [5]; '3..9' -> [3, ..., 9] (inclusive)."""
    try:
        if ".." in text:
            lo, hi = (int(s) for s in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer or a range a..b") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or invalid range {text!r}")
    return list(range(lo, hi + 1))


def _tables(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(sorted({int(s) for s in text.split(",") if s.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a list of table numbers") from None
    if not vals or any(v not in (1, 2) for v in vals):
        raise argparse.ArgumentTypeError("tables must be drawn from 1,2")
    return vals


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=_prime, help="prime characteristic (default: next prime >= n+1)")
    common.add_argument("--format", choices=("json", "text", "dot"), default="text")
    common.add_argument("--cap", type=_positive, default=esub.DEFAULT_CAP,
                        help=f"largest dim(c/z) enumerated exhaustively (default {esub.DEFAULT_CAP})")
    common.add_argument("--out", type=Path, help="write the artifact here instead of stdout")
    common.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1,
                        help="worker processes for batch and verify (default: CPU count)")

    parser = argparse.ArgumentParser(prog="richsat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in BATCH_VERBS:
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("--d", type=_dimension_vector, required=True,
                        help="dimension vector, comma separated")
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("--tables", type=_tables, default=(1, 2))
    sp.add_argument("--n", type=parse_range, required=True, help="rank n or inclusive range a..b")
    sp = sub.add_parser("batch", parents=[common])
    sp.add_argument("--file", type=Path, required=True)
    sp.add_argument("--verb", dest="verb_name", choices=BATCH_VERBS, required=True)
    return parser


# -- per-verb checks -------------------------------------------------------------------

def _prime_for(d: DimensionVector, p: int | None) -> int:
    return p if p is not None else cent.default_prime(d)


def checks_quiver(d: DimensionVector, p: int, cap: int) -> list[Check]:
    q = quiver.build_quiver(d)
    iso = quiver.verify_phi_isomorphism(d, p, max_bracket_pairs=4000)
    return [
        Check.info("vertices", len(q.vertices)),
        Check.info("arrows", len(q.arrows)),
        Check.info("paths", iso.num_paths),
        Check.info("relation_rank", iso.relation_rank),
        Check.compare("quotient_dim", iso.num_positions, iso.quotient_dim),
        Check.compare("surjective", True, iso.surjective),
        Check.compare("ideal_closed", True, iso.ideal_closed),
        Check.compare("bracket_compatible", True, iso.bracket_ok),
    ]


def checks_richardson(d: DimensionVector, p: int, cap: int) -> list[Check]:
    diag = line_diagram(d)
    return [
        Check.info("x", str(richardson(d, p))),
        Check.info("coords", diag.format_coords()),
        Check.info("levi_roots", sorted(levi_roots(d).indices)),
    ]


def checks_partition(d: DimensionVector, p: int, cap: int) -> list[Check]:
    part = jordan.partition_of(d)
    dual = jordan.conjugate(jordan.Partition(tuple(d)))
    return [Check.info("partition", str(part)),
            Check.compare("conjugate_of_d", str(dual), str(part))]


def checks_centralizer(d: DimensionVector, p: int, cap: int) -> list[Check]:
    c = cent.centralizer_in_u(d, p)
    z = cent.center_of(c, p)
    x = richardson(d, p)
    elems = c.elements()
    return [
        Check.info("dim", c.dim),
        Check.info("abelian", c.abelian),
        Check.info("center_dim", z.dim),
        Check.info("basis", [str(e) for e in elems]),
        Check.compare("brackets_vanish", True, all(not x.bracket(e).support for e in elems)),
    ]


def checks_esub(d: DimensionVector, p: int, cap: int) -> list[Check]:
    found = esub.maximal_elementary_containing(d, p, cap)
    x = richardson(d, p)
    return [
        Check.info("count", len(found)),
        Check.info("dims", sorted({e.dim for e in found})),
        Check.compare("all_abelian", True, all(e.is_abelian() for e in found)),
        Check.compare("all_contain_x", True, all(e.contains(x) for e in found)),
        Check.compare("all_maximal", True, all(esub.is_maximal_elementary(e, d, p) for e in found)),
    ]


def checks_srk(d: DimensionVector, p: int, cap: int) -> list[Check]:
    b = esub.lemma43_bounds(d, p, cap)
    return [
        Check.info("srk", b.srk),
        Check.info("dim_c", b.dim_c),
        Check.info("dim_center", b.dim_z),
        Check.compare("bounds", True, b.passed),
    ]


CHECKS: dict[str, Callable[[DimensionVector, int, int], list[Check]]] = {
    "quiver": checks_quiver, "richardson": checks_richardson, "partition": checks_partition,
    "centralizer": checks_centralizer, "esub": checks_esub, "srk": checks_srk,
}


def _flag_for(exc: RichsatError) -> str:
    if isinstance(exc, CapExceeded):
        return "--cap"
    if isinstance(exc, PreconditionViolated):
        return "--p"
    return "--d"


# -- verify and batch ------------------------------------------------------------------

def _verify_task(task: tuple[int, int, int | None, int]) -> list[Check]:
    table, n, p, cap = task
    q = p if p is not None else next_prime(n + 1)
    if table == 1:
        return cent.verify_table1(n, q).checks + cent.verify_centers(n, q).checks
    return esub.verify_table2(n, q, cap).checks


def _batch_task(task: tuple[int, str, str, int | None, int]) -> list[Check]:
    lineno, text, verb, p, cap = task
    try:
        d = DimensionVector.parse(text)
    except ParseError as exc:
        return [Check(f"line{lineno}", "dimension vector", f"ParseError: {exc}", FAIL)]
    tag = f"line{lineno}/{d}"
    try:
        checks = CHECKS[verb](d, _prime_for(d, p), cap)
    except RichsatError as exc:
        return [Check(tag, "result", f"{type(exc).__name__}: {exc}", FAIL)]
    return [Check(f"{tag}/{c.name}", c.expected, c.actual, c.status) for c in checks]


def _run_tasks(fn, tasks: list, jobs: int) -> list[Check]:
    if jobs <= 1 or len(tasks) <= 1:
        results = [fn(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, tasks))
    return [c for part in results for c in part]


def read_batch(path: Path) -> list[tuple[int, str]]:
    out = []
    for k, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        s = line.strip()
        if s and not s.startswith("#"):
            out.append((k, s))
    return out


# -- entry points ----------------------------------------------------------------------

def _inputs(args: argparse.Namespace) -> dict:
    out = {"format": args.format, "cap": args.cap}
    if args.p is not None:
        out["p"] = args.p
    if getattr(args, "d", None) is not None:
        out["d"] = str(args.d)
    if args.verb == "verify":
        out["n"] = args.n
        out["tables"] = list(args.tables)
    if args.verb == "batch":
        out["file"] = str(args.file)
        out["verb"] = args.verb_name
    return out


def execute(args: argparse.Namespace) -> tuple[Report, str]:
    """Run a parsed command; returns the report and the rendered artifact."""
    start = time.perf_counter()
    if args.format == "dot" and args.verb != "quiver":
        raise UsageError("argument --format: dot output is only available for the quiver verb")
    if args.verb == "verify":
        tasks = [(t, n, args.p, args.cap) for n in args.n for t in args.tables]
        checks = _run_tasks(_verify_task, tasks, args.jobs)
    elif args.verb == "batch":
        try:
            lines = read_batch(args.file)
        except OSError as exc:
            raise UsageError(f"argument --file: {exc}") from None
        tasks = [(k, s, args.verb_name, args.p, args.cap) for k, s in lines]
        checks = _run_tasks(_batch_task, tasks, args.jobs)
    else:
        p = _prime_for(args.d, args.p)
        try:
            checks = CHECKS[args.verb](args.d, p, args.cap)
        except RichsatError as exc:
            raise UsageError(f"argument {_flag_for(exc)}: {exc}") from None
    report = Report(args.verb, _inputs(args), checks)
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    if args.format == "json":
        return report, report.to_json()
    if args.format == "dot":
        return report, quiver.dot_export(quiver.build_quiver(args.d))
    if args.verb == "partition":
        return report, checks[0].actual + "\n"
    return report, report.to_text()


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, text = execute(args)
    except UsageError as exc:
        print(f"richsat {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
