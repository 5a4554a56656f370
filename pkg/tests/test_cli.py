"""Command-line interface: subcommands, formats, exit codes, determinism."""

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from besselsum import cli
from besselsum.errors import BudgetError


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    return header, [dict(zip(header, row)) for row in body]


class TestTabulate:
    def test_grid_and_agreement(self, capsys):
        code, out, err = run_cli(
            ["tabulate", "--x-min", "0.5", "--x-max", "20", "--count", "10",
             "--spacing", "log"], capsys)
        assert code == 0
        header, body = parse_csv(out)
        assert header == list(cli.TABULATE_COLUMNS)
        assert len(body) == 10
        assert float(body[0]["x"]) == pytest.approx(0.5)
        assert float(body[-1]["x"]) == pytest.approx(20.0)
        for row in body:
            assert row["status"] == "ok"
            gap = abs(float(row["p_direct"]) - float(row["p_closed"]))
            assert gap <= 1e-8
            # error columns must cover the observed gap
            assert gap <= float(row["p_direct_err"]) + float(row["p_closed_err"])

    def test_far_point_shows_halved_asymptote(self, capsys):
        code, out, err = run_cli(
            ["tabulate", "--x-min", "100", "--x-max", "100", "--count", "1"],
            capsys)
        assert code == 0
        _, body = parse_csv(out)
        assert len(body) == 1
        ratio = float(body[0]["q"]) / float(body[0]["q_asymptotic"])
        assert 0.47 <= ratio <= 0.53

    def test_json_format(self, capsys):
        code, out, err = run_cli(
            ["tabulate", "--count", "3", "--x-max", "5", "--format", "json"],
            capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["schema_version"] == 1
        assert payload["command"] == "tabulate"
        assert payload["config"]["count"] == 3
        assert len(payload["rows"]) == 3
        assert set(payload["rows"][0]) == set(cli.TABULATE_COLUMNS)

    def test_linear_spacing(self, capsys):
        code, out, err = run_cli(
            ["tabulate", "--x-min", "1", "--x-max", "3", "--count", "3",
             "--spacing", "linear"], capsys)
        assert code == 0
        _, body = parse_csv(out)
        assert [float(r["x"]) for r in body] == [1.0, 2.0, 3.0]

    def test_misconfiguration_exits_2(self, capsys):
        for argv in (
            ["tabulate", "--x-min", "0"],
            ["tabulate", "--x-min", "5", "--x-max", "1"],
            ["tabulate", "--count", "0"],
        ):
            code, out, err = run_cli(argv, capsys)
            assert code == 2
            assert "besselsum:" in err

    def test_budget_failure_exits_3(self, capsys, monkeypatch):
        def explode(*args, **kwargs):
            raise BudgetError("forced", achieved=1.0, budget=0.0)

        monkeypatch.setattr(cli, "p_direct", explode)
        code, out, err = run_cli(
            ["tabulate", "--x-min", "1", "--x-max", "1", "--count", "1"],
            capsys)
        assert code == 3
        _, body = parse_csv(out)
        assert body[0]["status"] == "budget(p_direct)"
        assert body[0]["p_direct"] == "nan"


class TestVerify:
    def test_default_run_reports_known_failure(self, capsys):
        code, out, err = run_cli(["verify", "--format", "json"], capsys)
        assert code == 1
        payload = json.loads(out)
        findings = payload["findings"]
        assert [f["name"] for f in findings] == list(cli._verify.check_names())
        failing = [f["name"] for f in findings if not f["passed"]]
        assert failing == ["q_asymptote"]
        by_name = {f["name"]: f for f in findings}
        # the paired check at half amplitude passes
        assert by_name["q_asymptote_halved"]["passed"]
        # the normalization finding is reported explicitly
        assert "-G/(2 sqrt(pi))" in by_name["mellin_identity"]["details"]
        for f in findings:
            assert f["passed"] == (f["residual"] <= f["tolerance"])

    def test_runs_are_byte_identical(self, capsys):
        code1, out1, _ = run_cli(["verify"], capsys)
        code2, out2, _ = run_cli(["verify"], capsys)
        assert (code1, out1) == (code2, out2)

    def test_tolerance_override(self, capsys):
        code, out, err = run_cli(
            ["verify", "--tol", "main_theorem=1e-15", "--format", "json"],
            capsys)
        assert code == 1
        payload = json.loads(out)
        by_name = {f["name"]: f for f in payload["findings"]}
        assert by_name["main_theorem"]["tolerance"] == 1e-15
        assert not by_name["main_theorem"]["passed"]

    def test_unknown_tolerance_key_exits_2(self, capsys):
        code, out, err = run_cli(["verify", "--tol", "sparkles=1e-3"], capsys)
        assert code == 2
        assert "sparkles" in err

    def test_malformed_tolerance_exits_2(self, capsys):
        for bad in ("main_theorem", "main_theorem=abc", "=1e-3"):
            code, out, err = run_cli(["verify", "--tol", bad], capsys)
            assert code == 2


class TestGreens:
    def test_record(self, capsys):
        code, out, err = run_cli(
            ["greens", "--r", "1.0", "--m", "1.0"], capsys)
        assert code == 0
        header, body = parse_csv(out)
        assert header == ["r", "m", "closed_form", "quadrature",
                          "abs_difference", "radial_integral"]
        row = body[0]
        closed = float(row["closed_form"])
        assert closed == pytest.approx(-0.010884115930953881, abs=1e-12)
        assert float(row["abs_difference"]) <= 1e-6 * abs(closed)
        assert row["radial_integral"] == ""

    def test_product_symmetry(self, capsys):
        _, out1, _ = run_cli(["greens", "--r", "0.5", "--m", "2.0"], capsys)
        _, out2, _ = run_cli(["greens", "--r", "2.0", "--m", "0.5"], capsys)
        row1 = parse_csv(out1)[1][0]
        row2 = parse_csv(out2)[1][0]
        assert row1["closed_form"] == row2["closed_form"]

    def test_radial_flag(self, capsys):
        code, out, err = run_cli(
            ["greens", "--r", "1.0", "--m", "1.0", "--radial", "--format",
             "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        value = payload["rows"][0]["radial_integral"]
        assert value == pytest.approx(-1.0 / 6.0, abs=1e-4)

    def test_tiny_product_exits_2(self, capsys):
        code, out, err = run_cli(
            ["greens", "--r", "1e-9", "--m", "1.0"], capsys)
        assert code == 2
        assert "mr" in err

    def test_nonpositive_exits_2(self, capsys):
        code, out, err = run_cli(
            ["greens", "--r", "-1.0", "--m", "1.0"], capsys)
        assert code == 2


class TestCoeffs:
    def test_minimal_listing(self, capsys):
        code, out, err = run_cli(["coeffs", "--l-max", "0"], capsys)
        assert code == 0
        assert out == "B[0,0,0] = 1\n"

    def test_text_listing(self, capsys):
        code, out, err = run_cli(["coeffs", "--l-max", "3"], capsys)
        assert code == 0
        assert out.splitlines() == [
            "B[0,0,0] = 1",
            "B[0,0,2] = f",
            "B[0,1,3] = 2*f(1,0)",
            "B[1,0,3] = 2*f(0,1)",
        ]

    def test_json_terms(self, capsys):
        code, out, err = run_cli(
            ["coeffs", "--l-max", "4", "--format", "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        by_index = {(r["i"], r["j"], r["l"]): r for r in payload["rows"]}
        assert by_index[(0, 0, 4)]["polynomial"] == "f^2 + 4*f(1,1)"
        assert by_index[(0, 0, 4)]["terms"] == [
            {"generators": [[0, 0], [0, 0]], "coefficient": 1},
            {"generators": [[1, 1]], "coefficient": 4},
        ]

    def test_csv_format(self, capsys):
        code, out, err = run_cli(
            ["coeffs", "--l-max", "2", "--format", "csv"], capsys)
        assert code == 0
        header, body = parse_csv(out)
        assert header == ["i", "j", "l", "polynomial"]
        assert body[0]["polynomial"] == "1"

    def test_out_of_range_exits_2(self, capsys):
        code, out, err = run_cli(["coeffs", "--l-max", "9"], capsys)
        assert code == 2
        code, out, err = run_cli(["coeffs", "--l-max", "-1"], capsys)
        assert code == 2


class TestOutputFile:
    def test_out_writes_file(self, tmp_path, capsys):
        target = tmp_path / "coeffs.json"
        code, out, err = run_cli(
            ["coeffs", "--l-max", "2", "--format", "json", "--out",
             str(target)], capsys)
        assert code == 0
        assert out == ""
        payload = json.loads(target.read_text(encoding="utf-8"))
        assert payload["command"] == "coeffs"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "besselsum.cli", "coeffs", "--l-max", "0"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout == "B[0,0,0] = 1\n"
