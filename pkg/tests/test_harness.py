import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

import qmonogamy as qm
from qmonogamy import cli, harness


def write_family(tmp_path, name, n):
    path = tmp_path / f"{name}{n}.json"
    qm.write_state_file(path, qm.state_family(name, n))
    return path


# ---------------------------------------------------------------- measure


def test_measure_w3_dual_saturated(tmp_path):
    doc = harness.measure_from_file(write_family(tmp_path, "W", 3))
    checks = {c["name"]: c for c in doc["checks"]}
    assert checks["dual_monogamy"]["verdict"] == "saturated"
    assert abs(checks["dual_monogamy"]["lhs"] - 8 / 9) < 1e-9
    assert set(doc["pairs"]) == {"0,1", "0,2", "1,2"}
    ms = doc["pairs"]["0,1"]
    assert abs(ms["tangle"] - 4 / 9) < 1e-9


def test_measure_ghz4_discriminant_zero(tmp_path):
    doc = harness.measure_from_file(write_family(tmp_path, "GHZ", 4))
    assert abs(doc["discriminant"]["total"]) < 1e-9
    assert set(doc["discriminant"]["per_qubit"]) == {"1", "2", "3"}
    assert abs(doc["bipartition"]["tau1"] - 4) < 1e-12
    assert abs(doc["bipartition"]["tau2"] - 6) < 1e-12


def test_measure_rejects_non_normalized(tmp_path):
    path = tmp_path / "bad.json"
    doc = {"n_qubits": 1, "amplitudes": [[0.98, 0.0], [0.0, 0.0]]}
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="norm 0.98"):
        harness.measure_from_file(path)


def test_measure_csv_columns(tmp_path):
    doc = harness.measure_from_file(write_family(tmp_path, "W", 3))
    rows = list(csv.reader(io.StringIO(harness.measure_csv(doc))))
    assert rows[0] == harness.CSV_COLUMNS
    assert len(rows) == 1 + len(doc["checks"])
    assert all(len(r) == 6 for r in rows)


# ------------------------------------------------------------------- fuzz


def test_fuzz_small_campaign_clean():
    config = harness.RunConfig(command="fuzz", n_qubits=3, samples=300, seed=1)
    summary = harness.fuzz_campaign(config)
    assert summary.total_violations == 0
    eq = summary.checkers["three_qubit_equality"]
    assert eq.saturated == 300
    for stats in summary.checkers.values():
        assert stats.holds + stats.saturated + stats.violated == 300


def test_fuzz_rerun_byte_identical():
    config = harness.RunConfig(command="fuzz", n_qubits=4, samples=50, seed=9)
    first = harness.fuzz_campaign(config).to_json()
    second = harness.fuzz_campaign(config).to_json()
    assert first == second
    third = harness.fuzz_campaign(
        harness.RunConfig(command="fuzz", n_qubits=4, samples=50, seed=10)
    ).to_json()
    assert first != third


def test_fuzz_csv_shape():
    config = harness.RunConfig(command="fuzz", n_qubits=4, samples=20, seed=2)
    summary = harness.fuzz_campaign(config)
    rows = list(csv.reader(io.StringIO(summary.to_csv())))
    assert rows[0] == harness.CSV_COLUMNS
    assert len(rows) == 1 + len(summary.checkers)


def test_fuzz_validates_config():
    with pytest.raises(ValueError):
        harness.fuzz_campaign(harness.RunConfig(command="fuzz", n_qubits=2, samples=5))
    with pytest.raises(ValueError):
        harness.fuzz_campaign(harness.RunConfig(command="fuzz", n_qubits=4, samples=0))
    with pytest.raises(ValueError):
        harness.fuzz_campaign(
            harness.RunConfig(command="fuzz", n_qubits=4, samples=5, tolerance=0.0)
        )


def test_campaign_document_excludes_wall_time():
    config = harness.RunConfig(command="fuzz", n_qubits=3, samples=5, seed=0)
    summary = harness.fuzz_campaign(config)
    assert summary.wall_time_s > 0
    assert "wall_time" not in summary.to_json()


# ------------------------------------------------------------------- hunt


def test_hunt_requires_five_qubits():
    with pytest.raises(ValueError, match="5 qubits"):
        harness.hunt_campaign(
            harness.RunConfig(command="hunt", n_qubits=4, restarts=1, iterations=10)
        )


def test_hunt_min_respects_floor():
    config = harness.RunConfig(
        command="hunt", n_qubits=5, restarts=3, iterations=150, seed=4, mode="min"
    )
    summary = harness.hunt_campaign(config)
    assert summary.best_value >= -1 - 1e-9
    assert summary.floor == -1.0
    assert summary.ceiling == 2.0
    assert len(summary.per_restart) == 3
    assert min(summary.per_restart) == summary.best_value
    # the dumped state reproduces the reported value
    amps = np.array([complex(re, im) for re, im in summary.best_amplitudes])
    _, total = qm.state_discriminant(amps)
    assert abs(total - summary.best_value) < 1e-12


def test_hunt_max_from_w_start_stays_at_ceiling():
    config = harness.RunConfig(
        command="hunt",
        n_qubits=5,
        restarts=2,
        iterations=100,
        seed=4,
        mode="max",
        start_family="W",
    )
    summary = harness.hunt_campaign(config)
    assert summary.best_value <= 2.0 + 1e-9
    assert summary.best_value > 2.0 - 1e-6


def test_hunt_deterministic():
    config = harness.RunConfig(
        command="hunt", n_qubits=5, restarts=2, iterations=50, seed=11, mode="min"
    )
    a = harness.hunt_campaign(config).to_json()
    b = harness.hunt_campaign(config).to_json()
    assert a == b


# ----------------------------------------------------------------- family


def test_family_table_values():
    doc = harness.family_table(6)
    rows = {(r["family"], r["n_qubits"]): r for r in doc["rows"]}
    for n in range(3, 7):
        assert abs(rows[("W", n)]["discriminant"] - (n - 3)) < 1e-9
        assert abs(rows[("GHZ", n)]["discriminant"]) < 1e-9
        product = rows[("product", n)]
        assert abs(product["sum_tangle"]) < 1e-12
        assert abs(product["sum_tangle_assist"]) < 1e-12
        assert abs(product["s_lin_a"]) < 1e-12
    w4 = rows[("W", 4)]
    assert abs(w4["tau1"] - 3.0) < 1e-9
    assert "tau1" not in rows[("W", 3)]
    for row in doc["rows"]:
        assert "violated" not in row["verdicts"].values()


def test_family_csv_shape():
    doc = harness.family_table(4)
    rows = list(csv.reader(io.StringIO(harness.family_csv(doc))))
    assert rows[0][0] == "family"
    assert len(rows) == 1 + len(doc["rows"])


# -------------------------------------------------------------------- cli


def test_cli_measure_json(tmp_path, capsys):
    path = write_family(tmp_path, "W", 3)
    code = cli.main(["measure", "--state", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == harness.SCHEMA_MEASURE


def test_cli_measure_bad_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"n_qubits": 1, "amplitudes": [[0.98, 0.0], [0.0, 0.0]]}')
    code = cli.main(["measure", "--state", str(path)])
    err = capsys.readouterr().err
    assert code == 2
    assert "norm" in err


def test_cli_fuzz_writes_output(tmp_path, capsys):
    out_path = tmp_path / "campaign.json"
    code = cli.main(
        [
            "fuzz",
            "--qubits",
            "3",
            "--samples",
            "25",
            "--seed",
            "5",
            "--out",
            str(out_path),
        ]
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["schema"] == harness.SCHEMA_CAMPAIGN
    assert doc["total_violations"] == 0
    assert doc["samples"] == 25


def test_cli_seed_env_fallback(tmp_path, monkeypatch):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    monkeypatch.setenv("QML_SEED", "77")
    cli.main(["fuzz", "--qubits", "3", "--samples", "10", "--out", str(out_a)])
    monkeypatch.delenv("QML_SEED")
    cli.main(
        ["fuzz", "--qubits", "3", "--samples", "10", "--seed", "77", "--out", str(out_b)]
    )
    assert out_a.read_text() == out_b.read_text()


def test_cli_hunt_rejects_small_register(capsys):
    code = cli.main(["hunt", "--qubits", "4", "--restarts", "1", "--iters", "5"])
    assert code == 2
    assert "5 qubits" in capsys.readouterr().err


def test_cli_family_csv(capsys):
    code = cli.main(["family", "--max-qubits", "3", "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0].startswith("family,")


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qmonogamy.cli", "family", "--max-qubits", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == harness.SCHEMA_FAMILY


def test_cli_fuzz_exit_code_flags_violations(tmp_path, monkeypatch):
    # Exit status contract: nonzero exactly when some checker violated.
    def fake_campaign(config):
        summary = harness.CampaignSummary(
            schema=harness.SCHEMA_CAMPAIGN,
            command="fuzz",
            n_qubits=config.n_qubits,
            samples=config.samples,
            seed=config.seed,
            tolerance=config.tolerance,
            backend="python",
        )
        stats = harness.CheckerStats()
        stats.violated = 1
        stats.min_slack = -1e-3
        summary.checkers["ckw"] = stats
        return summary

    monkeypatch.setattr(harness, "fuzz_campaign", fake_campaign)
    code = cli.main(
        ["fuzz", "--qubits", "3", "--samples", "1", "--out", str(tmp_path / "x.json")]
    )
    assert code == 1
