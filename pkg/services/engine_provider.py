import logging
import os
from typing import Callable, Optional

from engine.concurrent import run_query_concurrent
from engine.simulator import run_query
from graph.dag import Dag
from models.schemas import Decision, DSepQuery, EngineOutcome, SimulationParams
from oracles.moral import d_separated_moral
from oracles.reach import d_separated_reach

EngineFn = Callable[[Dag, DSepQuery, SimulationParams], EngineOutcome]

ENGINE_NAMES = ("dstar", "dstar-concurrent", "oracle-reach", "oracle-moral")


def _dstar(g: Dag, q: DSepQuery, params: SimulationParams) -> EngineOutcome:
    verdict, trace = run_query(g, q, params)
    return EngineOutcome(engine="dstar", decision=verdict.decision, verdict=verdict, trace=trace)


def _dstar_concurrent(g: Dag, q: DSepQuery, params: SimulationParams) -> EngineOutcome:
    verdict, trace = run_query_concurrent(g, q, params)
    return EngineOutcome(
        engine="dstar-concurrent", decision=verdict.decision, verdict=verdict, trace=trace
    )


def _oracle(name: str, decide) -> EngineFn:
    def run(g: Dag, q: DSepQuery, params: SimulationParams) -> EngineOutcome:
        result = decide(g, q)
        decision = Decision.INDEPENDENT if result.separated else Decision.DEPENDENT
        return EngineOutcome(engine=name, decision=decision, witness_path=result.witness_path)

    return run


_ENGINES = {
    "dstar": _dstar,
    "dstar-concurrent": _dstar_concurrent,
    "oracle-reach": _oracle("oracle-reach", d_separated_reach),
    "oracle-moral": _oracle("oracle-moral", d_separated_moral),
}


def get_engine(name: Optional[str] = None) -> EngineFn:
    """Return the decider registered under `name` (env DSTAR_ENGINE, else dstar)."""
    engine = (name or os.getenv("DSTAR_ENGINE") or "dstar").strip().lower()
    if engine not in _ENGINES:
        raise ValueError(f"unknown engine '{engine}'; choose one of {', '.join(ENGINE_NAMES)}")
    logging.info("Using engine: %s", engine)
    return _ENGINES[engine]
