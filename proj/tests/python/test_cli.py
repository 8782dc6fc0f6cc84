import json
import os
import subprocess

import pytest

CLI = os.environ.get("FILAMENT_CLI", "filament")


def run(*args, env=None):
    full = {k: v for k, v in os.environ.items() if k != "FILAMENT_OUT_DIR"}
    full.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full, timeout=300)


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_simulate_psi_k_phase():
    p = run("simulate", "--init", "psi_k:2", "--sigma", "0", "--n-modes", "4", "--t-end", "1")
    assert p.returncode == 0, p.stderr
    recs = records(p.stdout)
    head = recs[0]
    assert head["record"] == "header" and head["version"] == "0.1.0"
    assert "convention" in head and head["config"]["init"] == "psi_k:2"
    phase = [r for r in recs if r["record"] == "psi_k_phase"][0]
    assert phase["error"] <= 1e-8


def test_out_dir_env(tmp_path):
    p = run("invariants", "--init", "two_mode:1:1:2", "--sigma", "1", env={"FILAMENT_OUT_DIR": str(tmp_path)})
    assert p.returncode == 0, p.stderr
    recs = records((tmp_path / "invariants.jsonl").read_text())
    inv = [r for r in recs if r["record"] == "invariants"][0]
    assert inv["E"] == pytest.approx(4.0)


def test_selftest_and_bench():
    assert run("selftest").returncode == 0
    p = run("bench", "--sizes", "8,32")
    assert p.returncode == 0, p.stdout
    assert "max_deviation" in p.stdout


@pytest.mark.parametrize(
    "args, code, kind",
    [
        (["simulate", "--init", "psi_k:0"], 1, "usage"),
        (["simulate", "--sigma", "3"], 1, "usage"),
        (["simulate", "--init", "file:/nonexistent/state.json"], 3, "io"),
        (["invariants", "--out", "/nonexistent/dir/out.jsonl"], 3, "io"),
        (["simulate", "--scheme", "midpoint", "--dt", "0.01", "--n-modes", "8",
          "--random-options", "p_norm=30"], 2, "step_failure"),
    ],
)
def test_exit_codes_and_error_records(args, code, kind):
    p = run(*args)
    assert p.returncode == code
    err = records(p.stderr)[-1]
    assert err["record"] == "error" and err["kind"] == kind
