import csv
import json
from pathlib import Path

import pytest
import yaml

from swarmjump.cli import main
from swarmjump.config import ConfigError, build_config, read_config_file

FAST = [
    "--n-particles", "12", "--dim", "2", "--n-runs", "3", "--k-max", "25",
    "--seed", "123",
]


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_defaults_match_reference_settings(tmp_path):
    cfg_file = tmp_path / "empty.yaml"
    cfg_file.write_text("")
    cfg = build_config(read_config_file(cfg_file), {"objective": "ackley", "experiment": "batch"})
    assert cfg.n_particles == 200
    assert cfg.dt == 0.1
    assert cfg.lam == 1.0
    assert cfg.nu == 1.0
    assert cfg.alpha == 1e5
    assert cfg.k_max == 1000
    assert cfg.sigma == 0.75
    assert cfg.dim == 20
    assert cfg.n_runs == 100
    assert cfg.stall_tol == 1e-4 and cfg.stall_window == 500
    assert cfg.success_radius == 0.25


def test_cauchy_flips_sigma_default():
    cfg = build_config({}, {"noise": "cauchy"})
    assert cfg.sigma == 0.25
    cfg = build_config({"noise": "cauchy", "sigma": 0.6}, {})
    assert cfg.sigma == 0.6


def test_negative_dt_rejected_naming_field(tmp_path, capsys):
    code = main(["batch", "--objective", "ackley", "--dt", "-0.1",
                 "--out", str(tmp_path / "o")])
    assert code == 2
    assert "dt" in capsys.readouterr().err


def test_unknown_config_key_rejected(tmp_path, capsys):
    cfg_file = tmp_path / "bad.yaml"
    cfg_file.write_text("objectve: ackley\n")
    code = main(["batch", "--config", str(cfg_file), "--out", str(tmp_path / "o")])
    assert code == 2
    assert "objectve" in capsys.readouterr().err


def test_malformed_yaml_rejected(tmp_path, capsys):
    cfg_file = tmp_path / "broken.yaml"
    cfg_file.write_text("objective: [unclosed\n")
    code = main(["batch", "--config", str(cfg_file), "--out", str(tmp_path / "o")])
    assert code == 2
    assert "malformed" in capsys.readouterr().err


def test_lambda_alias_in_config_file(tmp_path):
    cfg_file = tmp_path / "alias.yaml"
    cfg_file.write_text("lambda: 2.5\n")
    cfg = build_config(read_config_file(cfg_file), {})
    assert cfg.lam == 2.5


def test_batch_writes_expected_artifacts(tmp_path):
    out = tmp_path / "run"
    code = main(["batch", "--objective", "schwefel220", *FAST, "--out", str(out)])
    assert code == 0
    rows = read_rows(out / "batch.csv")
    assert rows[0] == ["run", "seed", "stop_step", "linf_error", "fitness_gap", "success"]
    assert len(rows) == 1 + 3  # header + n_runs
    summary = json.loads((out / "summary.json").read_text())
    assert summary["n_runs"] == 3
    assert 0.0 <= summary["success_rate"] <= 1.0
    resolved = json.loads((out / "config.resolved.json").read_text())
    assert resolved["objective"] == "schwefel220"
    assert resolved["root_seed"] == 123


def test_reruns_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["batch", "--objective", "ackley", *FAST, "--out", str(out)]) == 0
    assert (a / "batch.csv").read_bytes() == (b / "batch.csv").read_bytes()
    assert (a / "summary.json").read_bytes() == (b / "summary.json").read_bytes()


def test_parallel_run_matches_serial(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["batch", "--objective", "ackley", *FAST, "--jobs", "1", "--out", str(a)]) == 0
    assert main(["batch", "--objective", "ackley", *FAST, "--jobs", "2", "--out", str(b)]) == 0
    assert (a / "batch.csv").read_bytes() == (b / "batch.csv").read_bytes()


def test_resolved_config_reproduces_run(tmp_path):
    a = tmp_path / "a"
    assert main(["batch", "--objective", "rastrigin", *FAST, "--out", str(a)]) == 0
    # the resolved echo is valid YAML (JSON subset) and reproduces the run
    replay_cfg = tmp_path / "replay.json"
    resolved = json.loads((a / "config.resolved.json").read_text())
    resolved["out_dir"] = str(tmp_path / "b")
    replay_cfg.write_text(json.dumps(resolved))
    assert main(["batch", "--config", str(replay_cfg)]) == 0
    assert (a / "batch.csv").read_bytes() == (tmp_path / "b" / "batch.csv").read_bytes()


def test_sweep_sigma_csv(tmp_path):
    out = tmp_path / "sweep"
    code = main(["sweep-sigma", "--objective", "ackley", *FAST,
                 "--sigmas", "0.2,0.8", "--out", str(out)])
    assert code == 0
    rows = read_rows(out / "sigma_sweep.csv")
    assert rows[0] == ["sigma", "success_rate", "mean_fitness_gap", "mean_linf_error"]
    assert len(rows) == 3
    assert [r[0] for r in rows[1:]] == ["0.2", "0.8"]


def test_cbo_limit_row_counts(tmp_path):
    out = tmp_path / "cbo"
    code = main(["cbo-limit", "--objective", "ackley", *FAST,
                 "--eps-values", "1,0.5,0.25,0.1",
                 "--sigma-tilde-grid", "0.5,1.0,1.5", "--out", str(out)])
    assert code == 0
    rows = read_rows(out / "cbo_limit.csv")[1:]
    scaled = [r for r in rows if r[3] == "scaled"]
    cbo = [r for r in rows if r[3] == "cbo"]
    assert len(scaled) == 4 * 3
    assert len(cbo) == 3
    assert all(r[0] == "0.0" for r in cbo)


def test_chaos_subcommand_defaults_to_projected_variant(tmp_path):
    out = tmp_path / "chaos"
    code = main(["chaos", "--objective", "ackley", "--dim", "2", "--alpha", "1",
                 "--sigma", "0.25", "--sigma0", "0.01", "--seed", "3",
                 "--n-values", "4,8", "--n-ref", "32", "--horizon", "0.5",
                 "--n-trials", "2", "--out", str(out)])
    assert code == 0
    resolved = json.loads((out / "config.resolved.json").read_text())
    assert resolved["variant"] == "projected_jump"
    rows = read_rows(out / "chaos.csv")
    assert rows[0] == ["N", "trial", "coupled_error"]
    assert len(rows) == 1 + 2 * 2  # header + |n_values| * n_trials
    summary = json.loads((out / "summary.json").read_text())
    assert len(summary["coupled_errors"]) == 2


def test_single_records_history(tmp_path):
    out = tmp_path / "single"
    code = main(["single", "--objective", "ackley", *FAST, "--out", str(out)])
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["experiment"] == "single"
    assert len(summary["consensus_history"]) == summary["stop_step"] + 1
    assert len(summary["final_consensus"]) == 2


def test_unwritable_output_dir_exits_3(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("i am a file")
    code = main(["batch", "--objective", "ackley", *FAST,
                 "--out", str(blocker / "nested")])
    assert code == 3


def test_chaos_variant_conflict_rejected(tmp_path, capsys):
    code = main(["chaos", "--objective", "ackley", "--variant", "jump",
                 "--out", str(tmp_path / "o")])
    assert code == 2
    assert "variant" in capsys.readouterr().err


def test_threads_env_cap(tmp_path, monkeypatch):
    from swarmjump.cli import resolve_jobs

    cfg = build_config({}, {"jobs": 8})
    monkeypatch.setenv("SWARM_JUMP_THREADS", "2")
    assert resolve_jobs(cfg) == 2
    monkeypatch.setenv("SWARM_JUMP_THREADS", "not-a-number")
    with pytest.raises(ConfigError):
        resolve_jobs(cfg)
    monkeypatch.delenv("SWARM_JUMP_THREADS")
    assert resolve_jobs(cfg) == 8


def test_success_in_unit_flag(tmp_path):
    out = tmp_path / "u"
    code = main(["batch", "--objective", "schwefel220", *FAST,
                 "--success-in-unit", "--out", str(out)])
    assert code == 0
    resolved = json.loads((out / "config.resolved.json").read_text())
    assert resolved["success_in_unit"] is True
