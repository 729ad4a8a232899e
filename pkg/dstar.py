"""D* d-separation toolkit - command-line entry point.

    python dstar.py query --graph data/graphs/case_study.dag --a x1,x2 --b y1,y2 --c z
    python dstar.py bounds --graph data/graphs/collider.dag --a a --b b --c v
    python dstar.py crosscheck --sizes 3,4,5 --trials 100 --seed 1

Verdicts and reports go to stdout, diagnostics to stderr. Exit codes:
0 success, 1 input error, 2 expectation mismatch or crosscheck disagreement.
"""

import argparse
import json
import os
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from config import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_EDGE_PROBABILITY, DEFAULT_SCHEDULE, DEFAULT_SEED
from models.schemas import RunConfig, SchedulePolicy, SimulationParams
from services.engine_provider import ENGINE_NAMES
from tools import cmd_bounds, cmd_crosscheck, cmd_query
from utils.text_utils import parse_init, parse_node_list, parse_sizes


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", required=True, help="graph file (node/edge lines)")
    parser.add_argument("--a", required=True, help="comma-separated green side")
    parser.add_argument("--b", required=True, help="comma-separated red side")
    parser.add_argument("--c", default="", help="comma-separated conditioning set")
    parser.add_argument("--seed", type=int, default=None, help="scheduler seed (default: $DSTAR_SEED)")
    parser.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="processing-delay bound")
    parser.add_argument("--beta", type=float, default=DEFAULT_BETA, help="channel-delay bound")
    parser.add_argument(
        "--schedule",
        choices=[p.value for p in SchedulePolicy],
        default=DEFAULT_SCHEDULE,
    )
    parser.add_argument("--init", default="self", help="'self' or 'central:SOURCE'")
    parser.add_argument("--check-bounds", dest="check_bounds", default=None, help="bound report JSON path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dstar", description="Distributed d-separation with D*")
    sub = parser.add_subparsers(dest="command", required=True)

    query = sub.add_parser("query", help="decide one d-separation query")
    _add_run_flags(query)
    query.add_argument("--engine", choices=ENGINE_NAMES, default="dstar")
    query.add_argument("--trace", default=None, help="trace JSON output path")
    query.add_argument("--snapshots", default=None, help="directory for snapshot DOT files")
    query.add_argument("--expect", choices=["dep", "indep"], default=None)

    bounds = sub.add_parser("bounds", help="check clash-time bounds on a dependent query")
    _add_run_flags(bounds)

    cross = sub.add_parser("crosscheck", help="compare D* with both oracles on generated graphs")
    cross.add_argument("--sizes", default="3,4,5", help="comma-separated node counts")
    cross.add_argument("--trials", type=int, default=100, help="random instances per size")
    cross.add_argument("--seed", type=int, default=None)
    cross.add_argument("--exhaustive", action="store_true", help="every labeled DAG, every singleton query")
    cross.add_argument("--edge-prob", dest="edge_prob", type=float, default=DEFAULT_EDGE_PROBABILITY)
    return parser


def _seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    return int(os.getenv("DSTAR_SEED", str(DEFAULT_SEED)))


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    init_mode, source = parse_init(args.init)
    params = SimulationParams(
        alpha=args.alpha,
        beta=args.beta,
        seed=_seed(args.seed),
        schedule_policy=SchedulePolicy(args.schedule),
        init_mode=init_mode,
        source=source,
    )
    return RunConfig(
        graph_path=args.graph,
        a=parse_node_list(args.a),
        b=parse_node_list(args.b),
        c=parse_node_list(args.c),
        engine=getattr(args, "engine", "dstar"),
        params=params,
        trace_path=getattr(args, "trace", None),
        snapshot_dir=getattr(args, "snapshots", None),
        bounds_path=args.check_bounds,
        expect=getattr(args, "expect", None),
    )


def _emit(result: Dict[str, Any]) -> int:
    for line in result.get("lines", []):
        print(line)
    for case in result.get("counterexamples", []):
        print(json.dumps(case), file=sys.stderr)
    if result.get("error_message"):
        print(f"error: {result['error_message']}", file=sys.stderr)
        if result.get("suggestion"):
            print(f"hint: {result['suggestion']}", file=sys.stderr)
    return int(result["exit_code"])


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "crosscheck":
        try:
            sizes = parse_sizes(args.sizes)
        except ValueError as exc:
            print(f"error: invalid --sizes: {exc}", file=sys.stderr)
            return 1
        return _emit(
            cmd_crosscheck(sizes, args.trials, _seed(args.seed), args.exhaustive, args.edge_prob)
        )

    try:
        config = run_config_from_args(args)
    except (ValueError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.command == "bounds":
        return _emit(cmd_bounds(config))
    return _emit(cmd_query(config))


if __name__ == "__main__":
    sys.exit(main())
