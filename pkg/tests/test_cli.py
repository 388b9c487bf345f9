import json

import pytest

from whitlab.cli import main, read_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_volume_example(capsys):
    code, out, _ = run(capsys, "volume", "--p", "3", "--gamma", "1", "--enumerate")
    rep = json.loads(out)
    assert code == 0
    assert (rep["formula"], rep["enumerated"], rep["match"]) == ("1/6", "1/6", True)


def test_airy_exact_zero(capsys):
    code, out, _ = run(capsys, "airy", "--p", "5", "--va", "-2", "--vb", "-3", "--unit-a", "1", "--unit-b", "1")
    assert code == 0 and json.loads(out)["exact_zero"] is True


def test_verify_ip_vanishing(capsys):
    code, out, _ = run(capsys, "verify", "ip-vanishing", "--p", "5", "--n", "8", "--case", "lower",
                       "--gamma", "1", "--mmax", "40")
    lines = [json.loads(x) for x in out.splitlines()]
    summary = lines[-1]
    assert code == 0
    assert summary["summary"] and summary["passed"]
    assert summary["predicted_zero"] == summary["confirmed_zero"] == len(lines) - 1 > 0
    assert all(r["brute_force_zero"] for r in lines[:-1])


def test_property_failure_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "cubic", "--p", "3", "--va", "-1", "--vb", "-1")
    rep = json.loads(out)
    assert code == 1 and rep["match"] is False
    assert rep["closed_form"] != rep["brute_force"]


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "thresholds", "--n", "8", "--case", "U", "--param", "9")[0] == 2
    assert run(capsys, "whittaker", "--kind", "split", "--n", "7", "--vy", "0")[0] == 2
    assert run(capsys, "gauss", "--p", "5", "--A", "5")[0] == 2
    assert run(capsys, "verify", "no-such-suite")[0] == 2


def test_workers_env_must_be_integer(capsys, monkeypatch):
    monkeypatch.setenv("WHITLAB_WORKERS", "many")
    assert run(capsys, "volume", "--p", "3")[0] == 2


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# volume run\np = 5\ngamma = 1\n")
    assert read_config(str(cfg)) == {"p": "5", "gamma": "1"}
    code, out, _ = run(capsys, "volume", "--config", str(cfg))
    assert code == 0 and json.loads(out)["p"] == 5
    code, out, _ = run(capsys, "volume", "--config", str(cfg), "--p", "3")
    assert json.loads(out)["p"] == 3 and json.loads(out)["formula"] == "1/6"
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "volume", "--config", str(bad))[0] == 2


def test_reports_are_deterministic(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, first, _ = run(capsys, "verify", "substitution", "--seed", "3", "--output", str(path))
    assert code == 0
    _, second, _ = run(capsys, "verify", "substitution", "--seed", "3")
    assert first == second == path.read_text()
    assert "seconds" not in first


def test_table_mode(capsys):
    code, out, _ = run(capsys, "volume", "--p", "3", "--gamma", "1", "--table")
    assert code == 0
    assert any(line.split() == ["formula", "1/6"] for line in out.splitlines())


@pytest.mark.parametrize("argv", [
    ["gauss", "--p", "5", "--A", "2", "--rho", "3", "--B", "1/25"],
    ["whittaker", "--p", "5", "--n", "8", "--family", "Lower", "--gamma", "1", "--vy", "-6", "--unit-y", "2"],
    ["balanced", "--p", "5", "--n", "8", "--kind", "unramified", "--gamma", "2", "--vt", "0", "--unit-t", "3"],
    ["ip", "--p", "5", "--n", "8", "--case", "S", "--param", "1", "--tuple", "5,15,10,10", "--branch", "+"],
    ["thresholds", "--n", "8", "--case", "lower", "--gamma", "1"],
])
def test_subcommands_succeed(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    json.loads(out)
