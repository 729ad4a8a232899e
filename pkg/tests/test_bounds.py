"""Tests for the clash-time bounds."""

import random

import pytest

from analysis.bounds import check_bounds
from analysis.modules import NotApplicableError
from engine.simulator import run_query
from graph.dag import load_dag, parse_dag
from graph.generators import random_dag, random_query
from models.schemas import DSepQuery, SchedulePolicy, SimulationParams
from oracles.reach import d_separated_reach


def _query(a, b, c=()):
    return DSepQuery(a_set=frozenset(a), b_set=frozenset(b), c_set=frozenset(c))


def test_collider_bounds_with_exact_delays(graph_path):
    g = load_dag(graph_path("collider.dag"))
    q = _query({"a"}, {"b"}, {"d"})
    params = SimulationParams(alpha=1.0, beta=1.0, schedule_policy=SchedulePolicy.ADVERSARIAL)
    _, trace = run_query(g, q, params)
    report = check_bounds(g, q, trace, params)

    # l_an_d = l_an = 2 (v is a hub), min l_ij = 2, module l_d + p_len = 4
    assert report.path_bound == pytest.approx(8.0)
    assert report.module_bound == pytest.approx(8.0)
    assert report.longest_path_bound == pytest.approx(8.0)
    assert report.minimal_module_edges == 3
    assert report.measured_clash_time <= report.module_bound
    assert report.satisfied


def test_case_study_bounds_hold_across_seeds(case_study, case_query):
    for seed in range(20):
        params = SimulationParams(alpha=0.5, beta=1.5, seed=seed)
        _, trace = run_query(case_study, case_query, params)
        report = check_bounds(case_study, case_query, trace, params)
        assert report.satisfied
        assert report.module_bound <= report.longest_path_bound


def test_bounds_not_applicable_to_independent_run():
    g = parse_dag("edge a v\nedge b v\n")
    q = _query({"a"}, {"b"})
    params = SimulationParams()
    _, trace = run_query(g, q, params)
    with pytest.raises(NotApplicableError):
        check_bounds(g, q, trace, params)


def test_bounds_on_random_dependent_instances():
    """Two hundred dependent instances on at most twelve nodes, random delay bounds."""
    rng = random.Random(2024)
    checked = 0
    while checked < 200:
        g = random_dag(rng.randint(3, 12), 0.25, rng)
        q = random_query(g, rng)
        if d_separated_reach(g, q).separated:
            continue
        params = SimulationParams(
            alpha=rng.uniform(0.1, 2.0),
            beta=rng.uniform(0.1, 2.0),
            seed=rng.randrange(2**31),
        )
        _, trace = run_query(g, q, params)
        report = check_bounds(g, q, trace, params)
        assert report.within_path_bound, report
        assert report.within_module_bound, report
        assert report.module_bound_tighter, report
        checked += 1
