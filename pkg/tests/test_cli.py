"""Command-line behaviour: outputs, exit codes, fixtures, determinism."""
import json
from pathlib import Path

import pytest

from lzbv import cli

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_defaults():
    cfg = cli.CliConfig(command="check")
    assert (cfg.seed, cfg.trials, cfg.dimension, cfg.max_degree, cfg.matrix_dim) == (42, 100, 2, 3, 1)


def test_check_default_run_passes(capsys):
    code, out, _ = run(capsys, "check", "--seed", 42, "--trials", 100)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(l.startswith("CHECK ") and " PASS " in l for l in lines)
    names = [l.split()[1] for l in lines]
    assert names == sorted(names)
    for required in ("stasheff_arity4", "bar_differential_len4", "deformed_leibniz",
                     "antisymmetric_eta_bracket_leibniz", "bracket_jacobi",
                     "control_n0_zeroed_detected", "control_koszul_flip_detected"):
        assert required in names


def test_check_json_is_byte_identical(capsys):
    _, a, _ = run(capsys, "check", "--trials", 8, "--json")
    _, b, _ = run(capsys, "check", "--trials", 8, "--json")
    assert a == b
    assert all(r["passed"] for r in json.loads(a))


def test_show_calibration(capsys):
    code, out, _ = run(capsys, "check", "--trials", 3, "--show-calibration")
    assert code == 0
    cal_lines = [l for l in out.splitlines() if l.startswith("CALIBRATION")]
    assert len(cal_lines) == 8
    assert "CALIBRATION pairing_zero = -1" in out


def test_heisenberg_fixture(capsys):
    code, out, _ = run(capsys, "heisenberg", FIXTURES / "sl2_ef.json")
    assert code == 0
    # k = 1 component is -2f
    assert "residual[0] = [0 0; -2 0]" in out
    assert "residual[1] = [0 -2; 0 0]" in out


def test_ym_maxwell_fixture(capsys):
    code, out, _ = run(capsys, "ym", FIXTURES / "maxwell_x2dx1.json")
    assert code == 0
    assert "mc_residual_zero = True" in out
    assert "CHECK recombination PASS" in out


def test_ym_json(capsys):
    code, out, _ = run(capsys, "ym", FIXTURES / "sl2_ef.json", "--json")
    data = json.loads(out)
    assert code == 0 and data["mc_residual_zero"] and data["recombination_holds"]


def test_gauge_fixture(capsys):
    code, out, _ = run(capsys, "gauge", FIXTURES / "maxwell_x2dx1.json")
    assert code == 0
    assert "CHECK gauge_covariance PASS" in out


def test_decompose_fixture(capsys):
    code, out, _ = run(capsys, "decompose", FIXTURES / "decompose_mixed.json")
    assert code == 0
    assert "CHECK roundtrip PASS" in out and "CHECK intertwining PASS" in out


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.name)
def test_every_fixture_meets_its_expectation(path, capsys):
    expect = json.loads(path.read_text())["expect"]
    for command, status in expect.items():
        code, _, _ = run(capsys, command, path)
        assert code == status, command


def write(tmp_path, data):
    p = tmp_path / "f.json"
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return p


def test_parse_errors(tmp_path, capsys):
    assert run(capsys, "ym", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "ym", write(tmp_path, "{not json"))[0] == 2
    assert run(capsys, "ym", write(tmp_path, {"fields": []}))[0] == 2
    bad_kind = {"dimension": 1, "fields": [{"kind": "spinor", "index": 0, "terms": []}]}
    assert run(capsys, "ym", write(tmp_path, bad_kind))[0] == 2
    decimal = {"dimension": 1, "fields": [{"kind": "vector", "index": 0,
                                           "terms": [{"exps": [1], "coeff": "0.5"}]}]}
    assert run(capsys, "ym", write(tmp_path, decimal))[0] == 2
    bad_exps = {"dimension": 2, "fields": [{"kind": "vector", "index": 0, "terms": [{"exps": [1]}]}]}
    assert run(capsys, "ym", write(tmp_path, bad_exps))[0] == 2
    no_gauge = {"dimension": 1, "fields": []}
    assert run(capsys, "gauge", write(tmp_path, no_gauge))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_check_failure_status(tmp_path, capsys):
    # a field with a hand-set v that does not solve the v-equation fails the recombination check
    data = {"dimension": 1, "fields": [{"kind": "vector", "index": 0, "terms": [{"exps": [1], "coeff": "1"}]},
                                       {"kind": "function", "slot": "v1", "terms": [{"exps": [0], "coeff": "3"}]}]}
    code, out, _ = run(capsys, "ym", write(tmp_path, data))
    assert code == 1
    assert "CHECK recombination FAIL" in out


def test_internal_breach_status(monkeypatch, tmp_path, capsys):
    def boom(cfg, out):
        raise RuntimeError("invariant broken")
    monkeypatch.setitem(cli.COMMANDS, "heisenberg", boom)
    code, _, err = run(capsys, "heisenberg", FIXTURES / "sl2_ef.json")
    assert code == 3
    assert "internal error" in err
