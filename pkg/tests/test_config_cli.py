"""Config round-trips and the CLI contract (exit codes, schemas, determinism)."""

import json

import pytest

from brownian_unicycle import d2_closed, NoiseParams
from brownian_unicycle.cli import main
from brownian_unicycle.config import (config_from_dict, dump_config,
                                      load_config)
from brownian_unicycle.exceptions import ConfigError

BASE_DOC = {
    "profile": {"kind": "constant", "mu0": 5.0, "theta0": 0.0, "s_max": 1.0},
    "noise": {"k_r": 0.01, "k_theta": 0.01},
    "sim": {"s_final": 1.0, "steps": 200, "trials": 150, "master_seed": 42},
    "quadrature": {"nodes_per_level": 16},
}


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(BASE_DOC), encoding="utf-8")
    return str(path)


@pytest.fixture
def ramp_config_path(tmp_path):
    doc = dict(BASE_DOC)
    doc["profile"] = {"kind": "polynomial", "coeffs": [0.0, 10.0],
                      "theta0": 0.0, "s_max": 1.0}
    path = tmp_path / "ramp.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# config loading


def test_config_round_trip(config_path):
    cfg = load_config(config_path)
    again = config_from_dict(dump_config(cfg))
    assert again == cfg


def test_config_defaults():
    cfg = config_from_dict({
        "profile": {"kind": "constant", "mu0": 1.0, "s_max": 2.0},
        "noise": {"k_r": 0.0, "k_theta": 0.0},
    })
    assert cfg.sim.steps == 10000
    assert cfg.sim.trials == 100000
    assert cfg.sim.s_final == 2.0
    assert cfg.settings.nodes_per_level == 24


def test_config_table_profile():
    cfg = config_from_dict({
        "profile": {"kind": "table", "samples": [[0.0, 1.0], [1.0, 2.0]],
                    "theta0": 0.1},
        "noise": {"k_r": 0.1, "k_theta": 0.1},
    })
    assert cfg.profile.kind == "table"
    assert cfg.profile.s_max == 1.0


@pytest.mark.parametrize("doc", [
    {},
    {"profile": {"kind": "spiral"}, "noise": {"k_r": 0, "k_theta": 0}},
    {"profile": {"kind": "constant", "mu0": 1.0, "s_max": 1.0},
     "noise": {"k_r": -1, "k_theta": 0}},
    {"profile": {"kind": "constant", "mu0": 1.0, "s_max": 1.0},
     "noise": {"k_r": 0, "k_theta": 0}, "sim": {"steps": 0}},
])
def test_bad_configs_raise(doc):
    with pytest.raises(ConfigError):
        config_from_dict(doc)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.json")


def test_load_config_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(path))


# ---------------------------------------------------------------------------
# exit codes


def test_exit_code_success(config_path, capsys):
    assert main(["--config", config_path, "moment", "1", "1", "0"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert set(record) == {"p", "q", "r", "value_re", "value_im",
                           "err_estimate", "terms", "wall_time"}
    assert record["value_re"] == pytest.approx(
        d2_closed(5.0, NoiseParams(0.01, 0.01), 1.0), rel=1e-6)


def test_exit_code_usage(config_path, capsys):
    assert main(["--config", config_path, "traj", "--", "-3"]) == 1
    capsys.readouterr()


def test_exit_code_missing_command():
    assert main([]) == 1


def test_exit_code_config(capsys):
    assert main(["--config", "/does/not/exist.json", "d2"]) == 2
    assert main(["d2"]) == 2
    capsys.readouterr()


def test_exit_code_envelope(config_path, capsys):
    assert main(["--config", config_path, "moment", "9", "9", "0"]) == 3
    capsys.readouterr()


def test_envelope_force_runs(tmp_path, capsys):
    doc = dict(BASE_DOC)
    doc["quadrature"] = {"nodes_per_level": 4, "max_dim_deterministic": 3,
                         "qmc_samples": 64}
    path = tmp_path / "force.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["--config", str(path), "--force", "moment", "5", "4", "0"]) == 0
    capsys.readouterr()


def test_closed_form_requires_constant(ramp_config_path, capsys):
    assert main(["--config", ramp_config_path, "--closed-form", "d2"]) == 1
    capsys.readouterr()


# ---------------------------------------------------------------------------
# command output


def test_moment_out_file_has_no_wall_time(config_path, tmp_path, capsys):
    out = tmp_path / "moment.json"
    assert main(["--config", config_path, "moment", "0", "0", "2",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    record = json.loads(out.read_text(encoding="utf-8"))
    assert "wall_time" not in record
    assert record["value_re"] == pytest.approx(0.01, rel=1e-12)


def test_d2_methods_agree(config_path, capsys):
    assert main(["--config", config_path, "d2"]) == 0
    quadrature = json.loads(capsys.readouterr().out)
    assert main(["--config", config_path, "--closed-form", "d2"]) == 0
    closed = json.loads(capsys.readouterr().out)
    assert quadrature["method"] == "quadrature"
    assert closed["method"] == "closed-form"
    assert quadrature["value"] == pytest.approx(closed["value"], rel=1e-8)


def test_d4_closed_form(config_path, capsys):
    assert main(["--config", config_path, "--closed-form", "d4"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["variance_d2"] == pytest.approx(0.0012, abs=1e-4)


def test_d4_quadrature_path(ramp_config_path, capsys):
    assert main(["--config", ramp_config_path, "d4"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["method"] == "quadrature"
    assert record["variance_d2"] == pytest.approx(0.0026, abs=2e-4)


def test_console_entry_point(config_path):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "brownian_unicycle", "--config", config_path,
         "moment", "0", "0", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    record = json.loads(proc.stdout)
    assert record["value_re"] == pytest.approx(0.01, rel=1e-12)


def test_simulate_json_and_per_trial_csv(config_path, tmp_path, capsys):
    per_trial = tmp_path / "trials.csv"
    assert main(["--config", config_path, "simulate",
                 "--per-trial", str(per_trial)]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["trials"] == 150
    assert "d2" in record["statistics"]["quantities"]
    lines = per_trial.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "trial_index,x,y,theta,d2"
    assert len(lines) == 151


def test_simulate_seed_override(config_path, capsys):
    assert main(["--config", config_path, "simulate"]) == 0
    base = json.loads(capsys.readouterr().out)
    assert main(["--config", config_path, "--seed", "99", "simulate"]) == 0
    reseeded = json.loads(capsys.readouterr().out)
    assert base["master_seed"] == 42
    assert reseeded["master_seed"] == 99
    assert base["statistics"] != reseeded["statistics"]


def test_traj_schema_and_determinism(config_path, tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(["--config", config_path, "traj", "2", "--out", str(out1)]) == 0
    capsys.readouterr()
    assert main(["--config", config_path, "traj", "2", "--out", str(out2)]) == 0
    capsys.readouterr()
    data1 = out1.read_bytes()
    assert data1 == out2.read_bytes()
    lines = data1.decode("utf-8").split("\n")
    assert lines[0] == "path_id,s,x,y,theta"
    assert "\r" not in data1.decode("utf-8")
    ids = {line.split(",")[0] for line in lines[1:] if line}
    assert ids == {"0", "1", "2"}
    # 3 paths, steps+1 rows each, plus header and trailing newline
    assert len(lines) == 1 + 3 * 201 + 1


def test_traj_deterministic_only(config_path, capsys):
    assert main(["--config", config_path, "traj", "0"]) == 0
    lines = capsys.readouterr().out.splitlines()
    ids = {line.split(",")[0] for line in lines[1:] if line}
    assert ids == {"0"}
    # Noise-free path obeys the circle identity within the trapezoid error.
    last = lines[-1].split(",")
    x, y = float(last[2]), float(last[3])
    import math
    expected = 2.0 / 25.0 * (1.0 - math.cos(5.0))
    assert x * x + y * y == pytest.approx(expected, abs=1e-5)


def test_reproduce_csv_schema_and_determinism(config_path, tmp_path, capsys):
    out1 = tmp_path / "t1.csv"
    out2 = tmp_path / "t2.csv"
    args = ["--config", config_path, "reproduce", "table1",
            "--trials", "50,100"]
    assert main(args + ["--out", str(out1)]) == 0
    capsys.readouterr()
    assert main(args + ["--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ("K,trials,mc_mean_d2,mc_var_d2,"
                        "analytic_mean_d2,analytic_var_d2,n_sigma_deviation")
    assert len(lines) == 1 + 2 * 2  # two K levels, two trial counts
    first = lines[1].split(",")
    assert float(first[4]) == pytest.approx(
        d2_closed(5.0, NoiseParams(0.01, 0.01), 1.0), rel=1e-12)


def test_reproduce_rejects_bad_trials(config_path, capsys):
    assert main(["--config", config_path, "reproduce", "table1",
                 "--trials", "10,abc"]) == 1
    capsys.readouterr()
