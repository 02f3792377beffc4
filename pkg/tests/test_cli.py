"""The command-line entry point: argument handling, output formats and
exit codes."""

import csv
import io
import json

import pytest

from tame_llc import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_formal_degree_ok(capsys):
    code, out, _ = run(["verify", "formal-degree", "--q", "3", "--e", "2",
                        "--f", "1", "--m", "0", "--r", "4"], capsys)
    assert code == cli.EXIT_OK
    assert "formal_degree: OK" in out


def test_verify_formal_degree_json_is_stable(capsys):
    argv = ["verify", "formal-degree", "--q", "3", "--e", "2", "--f", "1",
            "--r", "4", "--format", "json"]
    code, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert code == cli.EXIT_OK
    assert out1 == out2  # byte-identical without --timing
    payload = json.loads(out1)
    assert payload["params"] == {"p": 3, "a": 1, "q": 3, "e": 2, "f": 1,
                                 "m": 0, "r": 4, "n": 2}
    assert payload["timing_ms"] == 0
    assert payload["checks"][0]["status"] == "OK"


def test_invalid_parameters_exit_usage(capsys):
    code, _, err = run(["verify", "formal-degree", "--q", "3", "--e", "3",
                        "--f", "1", "--r", "2"], capsys)
    assert code == cli.EXIT_USAGE
    assert "invalid parameters" in err


def test_unsupported_root_number_reports_skip(capsys):
    code, out, _ = run(["verify", "root-number", "--q", "3", "--e", "2",
                        "--f", "1", "--r", "2"], capsys)
    assert code == cli.EXIT_INTERNAL
    assert "SKIP" in out


def test_root_number_ok_on_reference_tuple(capsys):
    code, out, _ = run(["verify", "root-number", "--q", "3", "--e", "1",
                        "--f", "2", "--r", "3"], capsys)
    assert code == cli.EXIT_OK
    assert "root_number: OK" in out


def test_factors_report(capsys):
    code, out, _ = run(["factors", "--q", "3", "--e", "2", "--f", "1",
                        "--r", "3"], capsys)
    assert code == cli.EXIT_OK
    for name in ("adjoint_L", "adjoint_conductor", "gamma0_abs",
                 "centralizer_order", "dim_delta"):
        assert name in out


def test_sweep_csv_output(capsys):
    code, out, _ = run(["sweep", "--q", "3", "--max-n", "2", "--r", "2..3",
                        "--format", "csv"], capsys)
    assert code == cli.EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["p", "a", "q", "e", "f", "m", "r", "n",
                       "check", "method", "value", "status"]
    assert all(row[11] == "OK" for row in rows[1:])


def test_sweep_writes_to_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(["sweep", "--q", "3", "--max-n", "2", "--r", "2",
                        "--format", "json", "--out", str(target)], capsys)
    assert code == cli.EXIT_OK
    assert out == ""
    payload = json.loads(target.read_text())
    assert isinstance(payload, list) and payload


def test_parse_int_list_forms():
    assert cli._parse_int_list("3,5") == [3, 5]
    assert cli._parse_int_list("2..4") == [2, 3, 4]
    assert cli._parse_int_list("2..3,7") == [2, 3, 7]


def test_missing_subcommand_is_a_usage_error(capsys):
    code = cli.main([])
    capsys.readouterr()
    assert code == cli.EXIT_USAGE
