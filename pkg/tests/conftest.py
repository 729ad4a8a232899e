"""Shared fixtures: bundled graphs and the exhaustive four-node sweep."""

import os
from dataclasses import dataclass, field
from typing import List

import pytest

from analysis.accounting import account_messages
from config import BITS_PER_MESSAGE, GRAPH_DIR
from engine.simulator import run_query
from engine.trace import channel_key, color_histories, quiescence_report
from graph.dag import ancestral_graph, load_dag, serialize_dag
from graph.generators import all_labeled_dags, singleton_queries
from models.schemas import Decision, DSepQuery, SimulationParams
from oracles.moral import d_separated_moral
from oracles.reach import d_separated_reach

SWEEP_NODES = 4
SWEEP_SEEDS = range(20)


@pytest.fixture
def graph_path():
    def _path(name: str) -> str:
        return os.path.join(GRAPH_DIR, name)

    return _path


@pytest.fixture
def case_study():
    return load_dag(os.path.join(GRAPH_DIR, "case_study.dag"))


@pytest.fixture
def case_query():
    return DSepQuery(
        a_set=frozenset({"x1", "x2"}),
        b_set=frozenset({"y1", "y2"}),
        c_set=frozenset({"z"}),
    )


@dataclass
class SweepSummary:
    graphs: int = 0
    instances: int = 0
    runs: int = 0
    yes_runs: int = 0
    # K: the largest per-channel color-message count seen anywhere in the sweep
    measured_k: int = 0
    max_raw_per_channel: int = 0
    # worst total messages / ancestral edges over runs with ancestral edges
    max_messages_per_edge: float = 0.0
    accounting_violations: List[dict] = field(default_factory=list)
    dstar_disagreements: List[dict] = field(default_factory=list)
    oracle_disagreements: List[dict] = field(default_factory=list)
    confinement_violations: List[dict] = field(default_factory=list)
    history_violations: List[dict] = field(default_factory=list)
    quiescence_violations: List[dict] = field(default_factory=list)


def _case(g, q, seed=None) -> dict:
    return {"graph": serialize_dag(g), "a": sorted(q.a_set), "b": sorted(q.b_set), "c": sorted(q.c_set), "seed": seed}


@pytest.fixture(scope="session")
def exhaustive_sweep() -> SweepSummary:
    """Every labeled DAG on four nodes x every singleton query x twenty seeds.

    Computed once; the acceptance tests read the tallies.
    """
    summary = SweepSummary()
    for g in all_labeled_dags(SWEEP_NODES):
        summary.graphs += 1
        for q in singleton_queries(g):
            summary.instances += 1
            separated = d_separated_reach(g, q).separated
            if separated != d_separated_moral(g, q).separated:
                summary.oracle_disagreements.append(_case(g, q))
            expected = Decision.INDEPENDENT if separated else Decision.DEPENDENT
            an_edges = ancestral_graph(g, q.members).edges
            allowed = {channel_key(u, v) for u, v in an_edges}

            for seed in SWEEP_SEEDS:
                params = SimulationParams(seed=seed)
                verdict, trace = run_query(g, q, params)
                summary.runs += 1
                if verdict.decision != expected:
                    summary.dstar_disagreements.append(_case(g, q, seed))

                counts = trace.per_channel_counts
                if not set(counts) <= allowed:
                    summary.confinement_violations.append(_case(g, q, seed))
                summary.max_raw_per_channel = max(summary.max_raw_per_channel, max(counts.values(), default=0))

                account = account_messages(trace, g, q)
                summary.measured_k = max(summary.measured_k, account.max_per_channel)
                if account.total_bits != BITS_PER_MESSAGE * account.total_messages:
                    summary.accounting_violations.append(_case(g, q, seed))
                if an_edges:
                    ratio = account.total_messages / len(an_edges)
                    summary.max_messages_per_edge = max(summary.max_messages_per_edge, ratio)
                elif account.total_messages:
                    summary.accounting_violations.append(_case(g, q, seed))

                for history in color_histories(trace).values():
                    if len(history) != len(set(history)) or len(history) > 5:
                        summary.history_violations.append(_case(g, q, seed))
                        break

                if verdict.decision == Decision.INDEPENDENT:
                    summary.yes_runs += 1
                    if not quiescence_report(trace, params).ok:
                        summary.quiescence_violations.append(_case(g, q, seed))
    return summary
