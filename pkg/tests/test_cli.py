"""End-to-end tests for the dstar command line."""

import json
import os

import pytest

from dstar import main
from services import engine_provider
from tools.bounds import NOT_APPLICABLE_LINE


@pytest.fixture
def case_args(graph_path):
    return ["--graph", graph_path("case_study.dag"), "--a", "x1,x2", "--b", "y1,y2", "--c", "z"]


def test_query_case_study_is_dependent(capsys, case_args):
    code = main(["query", *case_args, "--seed", "3"])
    out = capsys.readouterr().out.splitlines()

    assert code == 0
    assert out[0] == "DEPENDENT"
    assert out[1].startswith("clash: node=")
    assert "confined: yes" in out[2]


def test_query_with_oracle_engine(capsys, graph_path):
    code = main(["query", "--graph", graph_path("chain.dag"), "--a", "a", "--b", "b", "--engine", "oracle-reach"])
    out = capsys.readouterr().out.splitlines()

    assert code == 0
    assert out[0] == "DEPENDENT"
    assert out[-1] == "witness: a - m - b"


def test_query_blocked_chain_independent(capsys, graph_path):
    code = main(["query", "--graph", graph_path("chain.dag"), "--a", "a", "--b", "b", "--c", "m"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "INDEPENDENT"
    assert out[1].startswith("equilibrium:")


def test_query_expectation_mismatch_exits_two(capsys, case_args):
    assert main(["query", *case_args, "--expect", "indep"]) == 2
    assert main(["query", *case_args, "--expect", "dep"]) == 0


def test_query_missing_graph_exits_one(capsys, tmp_path):
    code = main(["query", "--graph", str(tmp_path / "nope.dag"), "--a", "a", "--b", "b"])
    err = capsys.readouterr().err
    assert code == 1
    assert err.startswith("error: Cannot read graph file")
    assert "hint:" in err


def test_query_unknown_node_exits_one(capsys, graph_path):
    code = main(["query", "--graph", graph_path("chain.dag"), "--a", "a", "--b", "zz"])
    assert code == 1
    assert "zz" in capsys.readouterr().err


def test_query_overlapping_sets_exit_one(capsys, graph_path):
    code = main(["query", "--graph", graph_path("chain.dag"), "--a", "a", "--b", "a"])
    assert code == 1


def test_query_bad_init_exits_one(capsys, case_args):
    assert main(["query", *case_args, "--init", "central"]) == 1
    assert "--init" in capsys.readouterr().err


def test_query_cyclic_graph_exits_one(capsys, tmp_path):
    path = tmp_path / "cycle.dag"
    path.write_text("edge a b\nedge b a\n", encoding="utf-8")
    assert main(["query", "--graph", str(path), "--a", "a", "--b", "b"]) == 1
    assert "cycle" in capsys.readouterr().err


@pytest.mark.parametrize("command", ["query", "bounds"])
def test_non_utf8_graph_exits_one(capsys, tmp_path, command):
    path = tmp_path / "binary.dag"
    path.write_bytes(b"\xff\xfeedge a b\n")
    code = main([command, "--graph", str(path), "--a", "a", "--b", "b"])
    err = capsys.readouterr().err
    assert code == 1
    assert "not UTF-8" in err
    assert "engine" not in err


def test_query_concurrent_timeout_exits_one(capsys, monkeypatch, case_args):
    def too_slow(g, q, params):
        raise TimeoutError("concurrent run did not settle within 0.01s")

    monkeypatch.setitem(engine_provider._ENGINES, "dstar-concurrent", too_slow)
    code = main(["query", *case_args, "--engine", "dstar-concurrent"])
    err = capsys.readouterr().err
    assert code == 1
    assert "did not settle" in err
    assert "DSTAR_CONCURRENT_TIMEOUT" in err


def test_query_concurrent_rejects_central_init(capsys, case_args):
    code = main(["query", *case_args, "--engine", "dstar-concurrent", "--init", "central:t3"])
    err = capsys.readouterr().err
    assert code == 1
    assert "--init central" in err


def test_query_central_init_reports_control_messages(capsys, case_args):
    code = main(["query", *case_args, "--init", "central:t3", "--seed", "1"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "DEPENDENT"
    assert any(line.startswith("control messages:") for line in out)


def test_query_concurrent_engine(capsys, case_args):
    assert main(["query", *case_args, "--engine", "dstar-concurrent"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "DEPENDENT"


def test_trace_files_are_byte_identical(capsys, tmp_path, case_args):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    assert main(["query", *case_args, "--seed", "11", "--trace", str(first)]) == 0
    assert main(["query", *case_args, "--seed", "11", "--trace", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["verdict"] == "DEPENDENT"


def test_seed_falls_back_to_environment(capsys, monkeypatch, tmp_path, case_args):
    from_env = tmp_path / "env.json"
    explicit = tmp_path / "explicit.json"
    monkeypatch.setenv("DSTAR_SEED", "17")
    assert main(["query", *case_args, "--trace", str(from_env)]) == 0
    monkeypatch.delenv("DSTAR_SEED")
    assert main(["query", *case_args, "--seed", "17", "--trace", str(explicit)]) == 0
    assert from_env.read_bytes() == explicit.read_bytes()


def test_snapshots_start_with_initial_configuration(capsys, tmp_path, case_args):
    directory = tmp_path / "snaps"
    assert main(["query", *case_args, "--snapshots", str(directory)]) == 0
    files = sorted(os.listdir(directory))
    assert files[0] == "snapshot_0000.dot"
    first = (directory / files[0]).read_text()
    assert "t=0 step=" in first
    assert "fillcolor=green" in first


def test_query_writes_bound_report(capsys, tmp_path, case_args):
    report_path = tmp_path / "bounds.json"
    assert main(["query", *case_args, "--check-bounds", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["status"] == "success"
    assert report["satisfied"] is True
    assert report["module_bound"] <= report["path_bound"]


def test_bounds_command_on_collider(capsys, graph_path):
    code = main(["bounds", "--graph", graph_path("collider.dag"), "--a", "a", "--b", "b", "--c", "d"])
    out = capsys.readouterr().out
    assert code == 0
    assert "path bound" in out
    assert "VIOLATED" not in out


def test_bounds_command_not_applicable(capsys, graph_path, tmp_path):
    report_path = tmp_path / "na.json"
    code = main([
        "bounds", "--graph", graph_path("collider.dag"), "--a", "a", "--b", "b",
        "--check-bounds", str(report_path),
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == NOT_APPLICABLE_LINE
    assert json.loads(report_path.read_text())["status"] == "not_applicable"


def test_crosscheck_zero_trials_prints_nothing(capsys):
    assert main(["crosscheck", "--sizes", "3,4", "--trials", "0"]) == 0
    assert capsys.readouterr().out == ""


def test_crosscheck_random_sizes(capsys):
    assert main(["crosscheck", "--sizes", "3,4,5", "--trials", "30", "--seed", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert lines[1].split() == ["3", "30", "30", "0"]


def test_crosscheck_exhaustive_three_nodes(capsys):
    assert main(["crosscheck", "--sizes", "3", "--exhaustive"]) == 0
    row = capsys.readouterr().out.splitlines()[1].split()
    # 25 labeled DAGs x 12 singleton queries
    assert row == ["3", "300", "300", "0"]


def test_crosscheck_rejects_bad_sizes(capsys):
    assert main(["crosscheck", "--sizes", "1", "--trials", "5"]) == 1
    assert main(["crosscheck", "--sizes", "x", "--trials", "5"]) == 1
