import dataclasses
import json
import subprocess
import sys

import pytest

from niho13.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, main
from niho13.closed_form import PredictionRow, solve_quad_partition, correlation_table
from niho13.report import Verdict, VerifyConfig, match_predictions, verify
from niho13.sequences import cross_corr_distribution

from conftest import setup


def _observed_and_table(pni):
    ps, ctx = setup(*pni)
    return ps, cross_corr_distribution(ctx, ps.d), correlation_table(ps, solve_quad_partition(ctx))


@pytest.mark.parametrize("pni", [(7, 2, 0), (7, 2, 1), (13, 1, 0), (13, 3, 0), (7, 3, 2)])
def test_match_verified(pni):
    ps, obs, table = _observed_and_table(pni)
    assert match_predictions(obs, table, 1e-6 * ps.p ** (ps.n / 2)).verdict is Verdict.VERIFIED


def test_perturbed_frequency():
    ps, obs, table = _observed_and_table((13, 3, 0))
    r = table.rows[1]
    table.rows[1] = dataclasses.replace(r, frequency=r.frequency + 1)
    assert match_predictions(obs, table, 1e-3).verdict is Verdict.FREQUENCY_MISMATCH


def test_perturbed_value():
    ps, obs, table = _observed_and_table((13, 3, 0))
    r = table.rows[1]
    table.rows[1] = dataclasses.replace(r, value=r.value + 0.5)
    assert match_predictions(obs, table, 1e-3).verdict is Verdict.TOLERANCE_EXCEEDED


def test_extra_prediction():
    ps, obs, table = _observed_and_table((13, 3, 0))
    table.rows.append(PredictionRow("peak", 9, 10_000.0, 1))
    assert match_predictions(obs, table, 1e-3).verdict is Verdict.UNMATCHED_VALUE


def test_zero_frequency_rows_are_ignored():
    ps, obs, table = _observed_and_table((13, 3, 0))
    table.rows.append(PredictionRow("peak", 9, 10_000.0, 0))
    assert match_predictions(obs, table, 1e-3).verdict is Verdict.VERIFIED


def test_bad_tolerance():
    ps, obs, table = _observed_and_table((7, 2, 0))
    with pytest.raises(ValueError):
        match_predictions(obs, table, 0)


def test_verify_extended():
    ps, _ = setup(13, 3, 0)
    report, ok, timings = verify(ps, VerifyConfig(workers=1, extended=True, samples=12))
    assert ok and report["verdict"] == "Verified"
    assert set(report["checks"]) == {"correlation", "first_moment", "distinct_values", "code_weights",
                                     "cyclotomy", "periods", "partition", "triple_sum"}
    assert "field" in timings and "timings" not in report


def test_exit_codes(capsys):
    assert main(["verify", "--p", "7", "--n", "2", "--i", "1"]) == EXIT_OK
    assert main(["verify", "--p", "7", "--n", "1"]) == EXIT_INVALID
    assert main(["verify", "--p", "11", "--n", "2"]) == EXIT_INVALID
    assert main(["verify", "--p", "7", "--n", "9", "--max-q", "1000"]) == EXIT_INVALID
    assert main(["verify", "--p", "7", "--n", "2", "--tol", "1e-30"]) == EXIT_MISMATCH
    err = capsys.readouterr().err
    assert "GModThreeIsTwo" in err and "FieldTooLarge" in err


def test_json_is_deterministic_across_workers(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    base = ["verify", "--p", "13", "--n", "3", "--format", "json", "--all"]
    assert main(base + ["--workers", "1", "--out", str(a)]) == EXIT_OK
    assert main(base + ["--workers", "2", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["schema"] == 1 and data["params"]["d"] == "733"


@pytest.mark.parametrize("cmd", ["distribution", "periods", "cyclotomy", "quad", "code-weights", "emit-sequence"])
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_subcommands(cmd, fmt, capsys):
    assert main([cmd, "--p", "7", "--n", "2", "--format", fmt]) == EXIT_OK
    out = capsys.readouterr().out
    assert out
    if fmt == "json":
        assert json.loads(out)["command"] == cmd


def test_field_commands_accept_inadmissible_pairs(capsys):
    assert main(["cyclotomy", "--p", "31", "--n", "2"]) == EXIT_OK
    assert main(["periods", "--p", "7", "--n", "1", "--format", "json"]) == EXIT_OK
    assert main(["distribution", "--p", "31", "--n", "2"]) == EXIT_INVALID


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "niho13", "quad", "--p", "7", "--n", "5", "--format", "json"],
                         capture_output=True, text=True, check=True)
    data = json.loads(res.stdout)
    assert (data["u"], data["v"], data["E"], data["O"]) == (1, -3, "3376", "-4176")
