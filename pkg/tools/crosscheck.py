"""
Crosscheck command

Generates DAGs and queries, decides each with D* and both oracles, and
tallies agreement per graph size. Any disagreement is kept as a replayable
counterexample (graph text, query, simulator seed) and turns the exit code
to 2.
"""

import logging
import random
from typing import Any, Dict, Iterator, List, Sequence, Tuple

from config import DEFAULT_EDGE_PROBABILITY
from engine.simulator import run_query
from graph.dag import Dag, serialize_dag
from graph.generators import all_labeled_dags, random_dag, random_query, singleton_queries
from models.schemas import Decision, DSepQuery, SimulationParams
from oracles.moral import d_separated_moral
from oracles.reach import d_separated_reach
from utils.formatters import format_crosscheck_rows

from .inputs import error_result

Instance = Tuple[Dag, DSepQuery, int]


def _as_decision(separated: bool) -> str:
    return (Decision.INDEPENDENT if separated else Decision.DEPENDENT).value


def _decisions(g: Dag, q: DSepQuery, seed: int) -> Dict[str, str]:
    verdict, _ = run_query(g, q, SimulationParams(seed=seed))
    reach = d_separated_reach(g, q).separated
    moral = d_separated_moral(g, q).separated
    return {
        "dstar": verdict.decision.value,
        "oracle-reach": _as_decision(reach),
        "oracle-moral": _as_decision(moral),
    }


def _random_instances(n: int, trials: int, p: float, rng: random.Random) -> Iterator[Instance]:
    for _ in range(trials):
        g = random_dag(n, p, rng)
        q = random_query(g, rng)
        yield g, q, rng.randrange(2**31)


def _exhaustive_instances(n: int, seed: int) -> Iterator[Instance]:
    for g in all_labeled_dags(n):
        for q in singleton_queries(g):
            yield g, q, seed


def counterexample(g: Dag, q: DSepQuery, seed: int, decisions: Dict[str, str]) -> Dict[str, Any]:
    return {
        "graph": serialize_dag(g),
        "a": sorted(q.a_set),
        "b": sorted(q.b_set),
        "c": sorted(q.c_set),
        "seed": seed,
        "decisions": decisions,
    }


def cmd_crosscheck(
    sizes: Sequence[int],
    trials: int,
    seed: int = 0,
    exhaustive: bool = False,
    edge_prob: float = DEFAULT_EDGE_PROBABILITY,
) -> Dict[str, Any]:
    """Agreement table between D* and the two oracles.

    Returns:
        {"status": "success" | "mismatch" | "error", "exit_code": 0 | 2 | 1,
         "rows": [{"size", "instances", "agree", "disagree"}, ...],
         "counterexamples": [...], "lines": [...]}
    """
    if trials < 0:
        return error_result("trials must be non-negative", "Pass --trials 0 or more.")
    if any(n < 2 for n in sizes):
        return error_result("every graph size must be at least 2", "A query needs two distinct nodes.")
    if not 0.0 <= edge_prob <= 1.0:
        return error_result("edge probability must lie in [0, 1]", "Pass --edge-prob between 0 and 1.")

    rng = random.Random(seed)
    rows: List[Dict[str, int]] = []
    counterexamples: List[Dict[str, Any]] = []

    for n in sizes:
        instances = _exhaustive_instances(n, seed) if exhaustive else _random_instances(n, trials, edge_prob, rng)
        total = agree = 0
        for g, q, run_seed in instances:
            decisions = _decisions(g, q, run_seed)
            total += 1
            if len(set(decisions.values())) == 1:
                agree += 1
            else:
                case = counterexample(g, q, run_seed, decisions)
                counterexamples.append(case)
                logging.error("Crosscheck disagreement: %s", case)
        if total:
            rows.append({"size": n, "instances": total, "agree": agree, "disagree": total - agree})
        logging.info("Crosscheck n=%d: %d/%d agree", n, agree, total)

    failed = bool(counterexamples)
    return {
        "status": "mismatch" if failed else "success",
        "exit_code": 2 if failed else 0,
        "rows": rows,
        "counterexamples": counterexamples,
        "lines": format_crosscheck_rows(rows),
    }
