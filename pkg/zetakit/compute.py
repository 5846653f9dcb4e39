"""
zetakit compute - print one zeta or zeta-star value.

Usage:
    zetakit compute --star --index 2,1 --trunc 2 --mode exact-p   # 11/8
    zetakit compute --star --index 2,1 --mode numeric             # 2 zeta(3)
    zetakit compute --pattern "j=0,0;e=3" --star --mode numeric
"""

import argparse
import json
import logging
import sys

import mpmath

from zetakit.cli import (
    add_common_arguments,
    build_run_config,
    emit,
    fail_internal,
    fail_usage,
    format_value,
    setup_logging,
)
from zetakit.indices import Index, Pattern, pattern_to_index
from zetakit.numeric import mzsv_numeric, mzv_numeric
from zetakit.truncated import zeta_star_trunc, zeta_trunc

logger = logging.getLogger(__name__)

MODES = ("exact-p", "numeric")


def compute_value(index: Index, star: bool, mode: str, run_config):
    """Fraction at level run_config.cap, or an extrapolated NumericValue."""
    if mode == "exact-p":
        return (zeta_star_trunc if star else zeta_trunc)(index, run_config.cap)
    if mode == "numeric":
        return (mzsv_numeric if star else mzv_numeric)(index, run_config.precision())
    raise ValueError(f"Unknown mode: {mode}")


def main():
    """Main entry point for zetakit compute."""
    parser = argparse.ArgumentParser(
        prog="zetakit compute",
        description="Compute a truncated or limiting (multiple) zeta(-star) value",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  zetakit compute --star --index 2,1 --trunc 2 --mode exact-p   # 11/8
  zetakit compute --star --index 2,1 --mode numeric --bits 128  # 2.4041138063191885707...
  zetakit compute --index 2 --mode numeric                      # pi^2/6
  zetakit compute --star --pattern "j=1,0;e=3" --mode numeric   # zeta*(2,3)
        """,
    )
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--index", "-i", help="Index, e.g. 2,1,2")
    target.add_argument("--pattern", "-p", help='2-3-1 pattern, e.g. "j=1,0;e=1"')
    parser.add_argument("--star", "-s", action="store_true", help="zeta-star instead of zeta")
    parser.add_argument("--mode", "-m", choices=MODES, default="numeric",
                        help="exact-p: exact rational at level --trunc; numeric: extrapolated limit")
    parser.add_argument("--trunc", "-t", type=int, help="Truncation level for exact-p (default: config run.cap)")
    add_common_arguments(parser)
    # plain value unless a format is asked for
    parser.set_defaults(format=None)

    args = parser.parse_args(sys.argv[1:])

    setup_logging(args.verbose)
    fmt = args.format
    try:
        run_config = build_run_config("compute", args)
        if args.index is not None:
            index = Index.parse(args.index)
        else:
            index = pattern_to_index(Pattern.parse(args.pattern))
        value = compute_value(index, args.star, args.mode, run_config)
    except ValueError as e:
        fail_usage(str(e))
        return
    except Exception:
        fail_internal("compute")
        return

    logger.info("%s(%s) mode=%s", "zeta*" if args.star else "zeta", index, args.mode)
    text = format_value(value, run_config.digits)
    if fmt is None:
        emit(text)
        return

    record = {
        "index": str(index),
        "star": args.star,
        "mode": args.mode,
        "value": text,
        "err": "0" if args.mode == "exact-p" else mpmath.nstr(value.err, 3),
        "trunc": run_config.cap if args.mode == "exact-p" else None,
        "precision_bits": run_config.bits if args.mode == "numeric" else None,
    }
    if fmt == "json":
        emit(json.dumps(record, ensure_ascii=False))
    else:
        emit("\t".join(str(v) for v in record.values()))


if __name__ == "__main__":
    main()
