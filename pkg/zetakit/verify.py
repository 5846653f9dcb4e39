"""
zetakit verify - check one identity instance and print its report.

Exit codes: 0 pass, 1 fail or unrecognized, 2 usage error (including
parameters at which the identity diverges), 3 unexpected error.
"""

import argparse
import logging
import sys

from zetakit.cli import (
    EXIT_FAIL,
    EXIT_OK,
    add_common_arguments,
    build_run_config,
    emit,
    emit_header,
    fail_internal,
    fail_usage,
    parse_int_list,
    render_report,
    setup_logging,
)
from zetakit.identities import CHECKERS, IdentityReport, run_checker
from zetakit.indices import Pattern

logger = logging.getLogger(__name__)


def collect_params(args: argparse.Namespace, run_config) -> dict:
    """Checker parameters from flags; only the ones that were given."""
    params = {}
    for name in ("m", "n", "a", "b", "c", "q"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    if args.kernel_j is not None:
        params["j"] = args.kernel_j
    if args.jvec is not None:
        params["jvec"] = parse_int_list(args.jvec)
    if args.pattern is not None:
        params["pattern"] = Pattern.parse(args.pattern)
    if args.word is not None:
        params["word"] = args.word
    # --trunc feeds both the level p and the cap P
    params["p"] = params["P"] = run_config.cap
    return params


def verify(identity: str, params: dict, run_config) -> IdentityReport:
    return run_checker(identity, params, ctx=run_config.precision(), max_den=run_config.max_den)


def main():
    """Main entry point for zetakit verify."""
    parser = argparse.ArgumentParser(
        prog="zetakit verify",
        description="Verify one identity instance (exact at finite truncation, or numerically)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  zetakit verify main3 --m 1 --n 1
  zetakit verify telescope --pattern "j=1,1;e=1" --trunc 8
  zetakit verify 3ext --jvec 0,0
  zetakit verify conjectureB --n 0 --jvec 2 --max-den 1000000
  zetakit verify ccbaa --m 2 --n 1 --a 2 --b 1 --c 2 --trunc 10
  zetakit verify c_duality --kernel-j 2 --trunc 5 --q 7

Identities:
  """ + ", ".join(CHECKERS),
    )
    parser.add_argument("identity", choices=list(CHECKERS), metavar="IDENTITY", help="Identity id (see list below)")
    parser.add_argument("--m", type=int, help="m parameter")
    parser.add_argument("--n", type=int, help="n parameter")
    parser.add_argument("--jvec", help="j-vector, e.g. 1,0,1")
    parser.add_argument("--pattern", help='2-3-1 pattern, e.g. "j=1,1;e=1"')
    parser.add_argument("--a", type=int, help="a in z_c^m z_b z_a^n")
    parser.add_argument("--b", type=int, help="b in z_c^m z_b z_a^n")
    parser.add_argument("--c", type=int, help="c in z_c^m z_b z_a^n")
    parser.add_argument("--kernel-j", type=int, help="j of the chain kernel C_j (c_duality)")
    parser.add_argument("--q", type=int, help="second level q (c_duality)")
    parser.add_argument("--word", help="word over x,y ending in y (zp_d)")
    parser.add_argument("--trunc", "-t", type=int, help="Truncation level p / cap P (default: config run.cap)")
    add_common_arguments(parser)
    args = parser.parse_args(sys.argv[1:])

    setup_logging(args.verbose)
    try:
        run_config = build_run_config("verify", args)
        params = collect_params(args, run_config)
        report = verify(args.identity, params, run_config)
    except ValueError as e:
        fail_usage(str(e))
        return
    except Exception:
        fail_internal(f"verify {args.identity}")
        return

    emit_header(run_config.format)
    emit(render_report(report, run_config.format, run_config.digits))
    logger.info("%s: %s", report.identity, report.status)
    sys.exit(EXIT_OK if report.passed else EXIT_FAIL)


if __name__ == "__main__":
    main()
