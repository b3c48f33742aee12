import json
from pathlib import Path

import pytest

from beurlab.commander import main


def test_list_prints_every_experiment(capsys):
    # Action
    code = main(["--list"])

    # Assert
    out = capsys.readouterr().out
    assert code == 0
    assert "popa-check" in out
    assert "riesz" in out


def test_missing_command_is_a_usage_error(capsys):
    # Assert
    assert main([]) == 2
    assert "a command is required" in capsys.readouterr().err


def test_unknown_command_is_a_usage_error(capsys):
    # Assert
    assert main(["no-such-experiment"]) == 2
    assert "Unknown experiment" in capsys.readouterr().err


def test_pass_writes_json_to_stdout(capsysbinary):
    # Action
    code = main(["beck", "--check", "lemma3", "--samples", "20", "--seed", "4"])

    # Assert
    payload = json.loads(capsysbinary.readouterr().out)
    assert code == 0
    assert payload["verdict"] == "pass"
    assert payload["seed"] == 4
    assert payload["schema_version"] == "1"
    assert payload["config"]["check"] == "lemma3"


def test_csv_report_written_to_file(tmp_path: Path, capsysbinary):
    # Setup
    out = tmp_path / "popa.csv"

    # Action
    code = main(["popa-check", "--samples", "100", "--pairs", "5", "--out", str(out), "--format", "csv"])

    # Assert
    assert code == 0
    assert capsysbinary.readouterr().out == b""
    data = out.read_bytes()
    assert data.startswith(b"suite,identity,samples,max_abs,max_scaled,passed\n")
    assert b"\r\n" not in data


def test_explicit_json_format_beats_config_file(tmp_path: Path, capsysbinary):
    # Setup
    config = tmp_path / "popa.cfg"
    config.write_text("samples = 100\npairs = 5\nformat = csv\n", encoding="utf-8")

    # Action
    code = main(["popa-check", "--config", str(config), "--format", "json"])

    # Assert
    assert code == 0
    payload = json.loads(capsysbinary.readouterr().out)
    assert payload["verdict"] == "pass"


def test_config_file_and_override(tmp_path: Path, capsysbinary):
    # Setup
    config = tmp_path / "tauberian.cfg"
    config.write_text("form = corollary3\ncount = 3\n", encoding="utf-8")

    # Action
    code = main(["tauberian", "--config", str(config), "--form", "corollary3", "--c", "2"])

    # Assert
    payload = json.loads(capsysbinary.readouterr().out)
    assert code == 0
    assert payload["config"]["form"] == "corollary3"


def test_fail_exits_with_one(capsysbinary):
    # Action
    code = main(["limit", "--count", "3", "--expected", "2*x"])

    # Assert
    assert code == 1
    assert json.loads(capsysbinary.readouterr().out)["verdict"] == "fail"


def test_aborted_exits_with_three(capsysbinary):
    # Action
    code = main(["tauberian", "--K", "box"])

    # Assert
    payload = json.loads(capsysbinary.readouterr().out)
    assert code == 3
    assert payload["verdict"] == "aborted"
    assert payload["rows"][0][0] == "WienerCheckFailureError"


def test_undecided_exits_with_zero_and_warns(capsysbinary):
    # Action
    code = main(["riesz", "--count", "1"])

    # Assert
    captured = capsysbinary.readouterr()
    assert code == 0
    assert json.loads(captured.out)["verdict"] == "undecided"
    assert b"verdict undecided" in captured.err


@pytest.mark.parametrize(
    "argv",
    [
        ["limit", "--tol", "0"],
        ["limit", "--count"],
        ["limit", "--phi", "power(2)"],
        ["beck", "--check", "nothing"],
    ],
)
def test_configuration_errors_exit_with_two(argv: list[str], capsys):
    # Assert
    assert main(argv) == 2
    assert "ERROR" in capsys.readouterr().err


def test_missing_config_file(tmp_path: Path):
    # Assert
    assert main(["limit", "--config", str(tmp_path / "absent.cfg")]) == 2


def test_unwritable_output(tmp_path: Path):
    # Assert
    assert main(["beck", "--check", "chain", "--out", str(tmp_path / "missing" / "r.json")]) == 2
