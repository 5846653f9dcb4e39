"""
zetakit scan - run a checker over a parameter grid.

One report line per grid point, always in grid order: the grid is cut into
static chunks for the worker pool and results are merged back in order, so
output does not depend on --jobs. Exit 1 if any report fails
("unrecognized" conjecture instances are not failures); exit 2 on usage
errors and 3 when a checker stops on an unexpected error.
"""

import argparse
import itertools
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from zetakit.cli import (
    EXIT_FAIL,
    EXIT_OK,
    add_common_arguments,
    build_run_config,
    emit,
    emit_header,
    fail_internal,
    fail_usage,
    render_report,
    setup_logging,
)
from zetakit.identities import IdentityReport, run_checker
from zetakit.indices import Pattern
from zetakit.truncated import theorem_admissible

logger = logging.getLogger(__name__)


def _weight_grid(min_m: int, min_n: int, weight, max_weight: int):
    """(m, n) pairs in lexicographic order with weight(m, n) <= max_weight."""
    for m in range(min_m, max_weight + 1):
        for n in range(min_n, max_weight + 1):
            if weight(m, n) <= max_weight:
                yield {"m": m, "n": n}


def _patterns(n: int, jmax: int):
    """All theorem-admissible patterns with n blocks and entries <= jmax."""
    for jvec in itertools.product(range(jmax + 1), repeat=n):
        for evec in itertools.product((1, 3), repeat=n - 1):
            pattern = Pattern(jvec, evec)
            if theorem_admissible(pattern):
                yield pattern


def _given(value: int | None, default: int) -> int:
    return default if value is None else value


def family_grid(family: str, max_weight: int, n: int | None, jmax: int, cap: int) -> list[dict]:
    """Parameter dicts for one scan family, in output order."""
    if family == "main1":
        return list(_weight_grid(1, 1, lambda m, n: 2 * m + 2 * n + 2, max_weight))
    if family == "main2":
        return list(_weight_grid(1, 1, lambda m, n: 2 * m + 2 * n + 1, max_weight))
    if family == "main3":
        return list(_weight_grid(1, 1, lambda m, n: 2 * m + 2 * n, max_weight))
    if family == "two_one":
        return list(_weight_grid(1, 1, lambda m, n: 2 * m + 2 * n + 2, max_weight))
    if family in ("22322", "22122"):
        return list(_weight_grid(0, 0, lambda m, n: 2 * m + 2 * n + 3, max_weight))
    if family == "prop_m0":
        return [{"n": k} for k in range(1, (max_weight - 1) // 2 + 1)]
    if family == "1ext":
        blocks = _given(n, 2)
        return [
            {"jvec": jvec}
            for jvec in itertools.product(range(jmax + 1), repeat=blocks)
            if jvec[0] >= 1 and jvec[-1] >= 1
        ]
    if family == "3ext":
        blocks = 2 * _given(n, 1)
        return [{"jvec": jvec} for jvec in itertools.product(range(jmax + 1), repeat=blocks)]
    if family == "thm31":
        return [{"pattern": p} for p in _patterns(_given(n, 2), jmax)]
    if family == "telescope":
        return [{"pattern": p, "P": P} for p in _patterns(_given(n, 2), jmax) for P in range(1, cap + 1)]
    if family == "conjectureA":
        size = _given(n, 1)
        # symmetrized sums depend only on the multiset
        return [
            {"n": size, "jvec": jvec}
            for jvec in itertools.combinations_with_replacement(range(jmax + 1), 2 * size)
        ]
    if family == "conjectureB":
        size = _given(n, 0)
        return [
            {"n": size, "jvec": jvec}
            for jvec in itertools.combinations_with_replacement(range(jmax + 1), 2 * size + 1)
        ]
    raise ValueError(f"Unknown scan family: {family}")


FAMILIES = (
    "main1", "main2", "main3", "two_one", "22322", "22122", "prop_m0",
    "1ext", "3ext", "thm31", "telescope", "conjectureA", "conjectureB",
)


def _run_task(task) -> IdentityReport:
    family, params, ctx, max_den = task
    return run_checker(family, params, ctx=ctx, max_den=max_den)


def run_scan(family: str, grid: list[dict], run_config) -> list[IdentityReport]:
    """Reports for every grid point, in grid order."""
    ctx = run_config.precision()
    tasks = [(family, params, ctx, run_config.max_den) for params in grid]
    if run_config.jobs == 1 or len(tasks) <= 1:
        return [_run_task(task) for task in tasks]

    chunksize = max(1, len(tasks) // (4 * run_config.jobs))
    logger.info("scan %s: %d instances over %d workers (chunks of %d)",
                family, len(tasks), run_config.jobs, chunksize)
    with ProcessPoolExecutor(max_workers=run_config.jobs) as pool:
        return list(pool.map(_run_task, tasks, chunksize=chunksize))


def main():
    """Main entry point for zetakit scan."""
    parser = argparse.ArgumentParser(
        prog="zetakit scan",
        description="Verify an identity over a parameter grid",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  zetakit scan main1 --max-weight 11
  zetakit scan thm31 --n 2 --jmax 1
  zetakit scan telescope --n 3 --jmax 2 --trunc 12
  zetakit scan conjectureA --n 1 --jmax 1 --max-den 1000000
  ZETAKIT_JOBS=4 zetakit scan 22122 --format tsv

Families:
  """ + ", ".join(FAMILIES),
    )
    parser.add_argument("family", choices=FAMILIES, metavar="FAMILY", help="Identity family (see list below)")
    parser.add_argument("--max-weight", "-w", type=int, help="Largest weight for (m, n) families (default: config run.max_weight)")
    parser.add_argument("--n", type=int, help="Block count for pattern and conjecture families")
    parser.add_argument("--jmax", type=int, default=1, help="Largest j entry (default: 1)")
    parser.add_argument("--trunc", "-t", type=int, help="Largest cap P for telescope (default: config run.cap)")
    add_common_arguments(parser)
    args = parser.parse_args(sys.argv[1:])

    setup_logging(args.verbose)
    try:
        run_config = build_run_config("scan", args)
        if args.jmax < 0:
            raise ValueError(f"--jmax must be >= 0, got {args.jmax}")
        grid = family_grid(args.family, run_config.max_weight, args.n, args.jmax, run_config.cap)
        reports = run_scan(args.family, grid, run_config)
    except ValueError as e:
        fail_usage(str(e))
        return
    except Exception:
        fail_internal(f"scan {args.family}")
        return

    emit_header(run_config.format)
    for report in reports:
        emit(render_report(report, run_config.format, run_config.digits))

    failed = sum(1 for r in reports if r.status == "fail")
    logger.info("scan %s: %d reports, %d failed", args.family, len(reports), failed)
    sys.exit(EXIT_FAIL if failed else EXIT_OK)


if __name__ == "__main__":
    main()
