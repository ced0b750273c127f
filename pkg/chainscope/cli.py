#!/usr/bin/env python3

import argparse
import os
import sys
from typing import List, Optional

from . import __version__


def get_optimal_workers() -> int:
    """Thread count for graph construction: CHAINSCOPE_THREADS, else CPU cores capped at 16."""
    env = os.environ.get("CHAINSCOPE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    try:
        return min(os.cpu_count() or 4, 16)
    except NotImplementedError:
        return 4


def _run_options() -> argparse.ArgumentParser:
    """Flags shared by every config-driven subcommand."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", "-c", required=True, help="Config file, or the name of a bundled config")
    parent.add_argument("--out", "-o", help="Write the JSON report here instead of stdout")
    parent.add_argument("--seed", type=int, help="Random seed (overrides [run] seed)")
    parent.add_argument("--threads", type=int, help="Graph construction threads (overrides [run] threads)")
    parent.add_argument("--verbose", "-v", action="store_true", help="Print per-stage progress to stderr")
    return parent


def _graph_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--dot", help="Write the chain graph as DOT")
    parent.add_argument("--csv", help="Write the chain graph edges as CSV")
    parent.add_argument("--eps", type=float, help="Override [analysis] epsilon")
    parent.add_argument("--res", type=int, help="Override [space] res (per axis)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainscope",
        description="Chain recurrence, chain mixing, periods and odometer factors of iterated function systems",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  chainscope analyze -c rotations                      # Two circle rotations: transitive, k=1, mixing N
  chainscope analyze -c tent_pair --dot g.dot          # Tent pair, with the graph as DOT
  chainscope scan -c dyadic_odometer                   # ks=(2,4,8,16,32), OdometerLike(2,2,2,2,2)
  chainscope scan -c half_rotation -v                  # Per-level progress on stderr
  chainscope shadow -c tent_pair --chain 0.1,0.2,0.4 --eps 0.1 --delta 0.01
  chainscope shadow -c tent_pair --spot-check --transfer
  chainscope odometer --alpha 2,3,2 --x 1,2,0 --y 1,1,1 --steps 4
  chainscope export -c rotations --csv edges.csv --res 32
        """,
    )
    parser.add_argument("--version", action="version", version=f"chainscope {__version__}")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    run, graph = _run_options(), _graph_options()

    # Analyze command
    subparsers.add_parser("analyze", parents=[run, graph], help="Build and analyze the chain graph")

    # Scan command
    scan_parser = subparsers.add_parser("scan", parents=[run], help="Epsilon-refinement scan and verdict")
    scan_parser.add_argument("--dot", help="Write the finest-level graph as DOT")
    scan_parser.add_argument("--csv", help="Write the finest-level graph edges as CSV")

    # Shadow command
    shadow_parser = subparsers.add_parser("shadow", parents=[run], help="Shadow chains by true orbits")
    shadow_parser.add_argument("--chain", help="Chain points, comma separated; product points as x:y")
    shadow_parser.add_argument("--eps", type=float, help="Shadowing distance (overrides [shadow] epsilon)")
    shadow_parser.add_argument("--delta", type=float, help="Chain tolerance (overrides [shadow] delta)")
    shadow_parser.add_argument("--spot-check", dest="spot_check", action="store_true",
                               help="Shadow random delta-chains and a drift chain")
    shadow_parser.add_argument("--transfer", action="store_true",
                               help="Mixing transfer over [shadow] pairs (runs the spot check first)")

    # Odometer command
    odometer_parser = subparsers.add_parser("odometer", help="Adding-machine arithmetic on digit strings")
    odometer_parser.add_argument("--alpha", required=True, help="Radices j1,j2,... (least significant first)")
    odometer_parser.add_argument("--depth", type=int, help="Truncation depth (default: length of alpha)")
    odometer_parser.add_argument("--tail", type=int, help="Radix repeated past the end of alpha")
    odometer_parser.add_argument("--x", help="Digit string x (default: zero)")
    odometer_parser.add_argument("--y", help="Digit string y, for d_alpha and x+y")
    odometer_parser.add_argument("--steps", type=int, default=0, help="List the first STEPS points of the orbit of x")
    odometer_parser.add_argument("--out", "-o", help="Write the JSON report here instead of stdout")

    # Export command
    subparsers.add_parser("export", parents=[run, graph], help="Export the chain graph as DOT/CSV")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    from .presentation.cli.dispatcher import CommandDispatcher
    return CommandDispatcher.try_dispatch(args.command, args, default_threads=get_optimal_workers())


if __name__ == "__main__":
    sys.exit(main())
