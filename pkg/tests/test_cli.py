from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hstrata.cli import main, run_verify


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.rstrip("\n"), captured.err


@pytest.fixture
def diagram_file(tmp_path):
    def write(text, name="diagram.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


class TestDim:
    def test_all_black(self, capsys, diagram_file):
        path = diagram_file("##\n##")
        code, out, _ = run_cli(capsys, "dim", path)
        assert code == 0
        assert "dimension: 0" in out
        assert "tau: [1,2,3,4]" in out
        assert "agree: True" in out

    def test_white_over_black(self, capsys, diagram_file):
        path = diagram_file(".\n#")
        code, out, _ = run_cli(capsys, "dim", path)
        assert code == 0
        assert "dimension: 1" in out
        assert "kernel_dim: 1" in out

    def test_all_white_2x2_json(self, capsys, diagram_file):
        path = diagram_file("..\n..")
        code, out, _ = run_cli(capsys, "dim", path, "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["dimension"] == 2
        assert report["kernel_dim"] == 2
        assert report["boundary_kernel_dim"] == 2
        assert report["agree"] is True
        assert report["status"] == "ok"
        assert report["cauchon"] is True

    def test_non_cauchon_warns_but_succeeds(self, capsys, diagram_file):
        path = diagram_file("..\n.#")
        code, out, _ = run_cli(capsys, "dim", path)
        assert code == 0
        assert "warning:" in out
        assert "not Cauchon" in out

    def test_parse_failure_exits_nonzero(self, capsys, diagram_file):
        path = diagram_file("..\n.")
        code, out, err = run_cli(capsys, "dim", path)
        assert code == 2
        assert "error" in err

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "dim", "/nonexistent/diagram.txt")
        assert code == 2
        assert "error" in err

    def test_stdin(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO("#\n."))
        code, out, _ = run_cli(capsys, "dim", "-")
        assert code == 0
        assert "dimension: 1" in out

    def test_csv_has_header_row(self, capsys, diagram_file):
        path = diagram_file("..\n..")
        code, out, _ = run_cli(capsys, "dim", path, "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 2
        assert "kernel_dim" in lines[0].split(",")


class TestCount:
    def test_formula_default(self, capsys):
        code, out, _ = run_cli(capsys, "count", "2", "2")
        assert code == 0
        assert "agree: True" in out

    def test_all_methods_agree(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "count", "2", "2",
            "--method", "formula", "--method", "enum", "--method", "series",
            "--format", "json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["agree"] is True
        for meth in ("formula", "enum", "series"):
            assert report["counts"][meth] == {"0": "5", "1": "7", "2": "2"}
            assert report["totals"][meth] == "14"

    def test_formula_3x3(self, capsys):
        code, out, _ = run_cli(capsys, "count", "3", "3", "--format", "json")
        report = json.loads(out)
        assert report["counts"]["formula"]["0"] == "70"
        assert report["totals"]["formula"] == "230"

    def test_csv_rows(self, capsys):
        code, out, _ = run_cli(capsys, "count", "2", "1", "--format", "csv")
        lines = out.splitlines()
        assert lines[0] == "dimension,formula"
        assert lines[1] == "0,2"
        assert lines[2] == "1,2"
        assert lines[3] == "total,4"

    def test_enum_respects_cell_limit(self, capsys):
        code, _, err = run_cli(capsys, "count", "6", "5", "--method", "enum")
        assert code == 2
        assert "closed-form" in err

    def test_rejects_nonpositive(self, capsys):
        code, _, err = run_cli(capsys, "count", "0", "2")
        assert code == 2


class TestVerify:
    def test_single_cell(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--max-cells", "1")
        assert code == 0
        assert "verified 2 diagrams" in out
        assert "status: ok" in out

    def test_default_scale_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["status"] == "ok"
        assert report["failures"] == 0
        assert report["max_cells"] == 9
        for check in report["checks"].values():
            assert check["failures"] == 0
            assert check["checked"] > 0

    def test_injected_fault_fails(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--max-cells", "4", "--inject-fault", "--format", "json"
        )
        assert code == 1
        report = json.loads(out)
        assert report["status"] == "fail"
        assert report["failures"] >= 1

    def test_run_verify_counts(self):
        report = run_verify(2)
        # shapes 1x1, 1x2, 2x1: 2 + 4 + 4 diagrams
        assert report["diagrams"] == 10
        assert report["shapes"] == 3
        assert report["status"] == "ok"

    def test_cap_enforced(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--max-cells", "30")
        assert code == 2


class TestAsymptotics:
    def test_limit_and_gap(self, capsys):
        code, out, _ = run_cli(
            capsys, "asymptotics", "2", "0", "--n-max", "10", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["limit"] == "3/8"
        last = report["rows"][-1]
        assert last["n"] == 10
        assert abs(Fraction(last["ratio"]) - Fraction(3, 8)) < Fraction(1, 100)

    def test_limit_values(self, capsys):
        for m, d, limit in [("1", "0", "1/2"), ("2", "1", "1/2")]:
            code, out, _ = run_cli(capsys, "asymptotics", m, d, "--format", "json")
            assert json.loads(out)["limit"] == limit

    def test_gap_eventually_monotone(self, capsys):
        code, out, _ = run_cli(
            capsys, "asymptotics", "2", "0", "--n-max", "20", "--format", "json"
        )
        rows = json.loads(out)["rows"]
        gaps = [Fraction(row["gap"]) for row in rows]
        assert all(gaps[i + 1] < gaps[i] for i in range(3, len(gaps) - 1))

    def test_domain_checks(self, capsys):
        code, _, err = run_cli(capsys, "asymptotics", "2", "3")
        assert code == 2
        code, _, err = run_cli(capsys, "asymptotics", "2", "1", "--n-max", "0")
        assert code == 2


class TestLookup:
    def test_rotation_is_all_black(self, capsys):
        code, out, _ = run_cli(capsys, "lookup", "[3,4,1,2]", "2", "2")
        assert code == 0
        assert "##\n##" in out

    def test_identity_is_all_white(self, capsys):
        code, out, _ = run_cli(capsys, "lookup", "[1,2,3,4]", "2", "2")
        assert code == 0
        assert "..\n.." in out

    def test_not_found(self, capsys):
        code, out, _ = run_cli(capsys, "lookup", "[4,3,2,1]", "2", "2")
        assert code == 0
        assert "not-found" in out

    def test_malformed_permutation(self, capsys):
        code, _, err = run_cli(capsys, "lookup", "[1,1,2]", "2", "1")
        assert code == 2
        assert "error" in err


class TestCoeffs:
    def test_golden_row(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "2", "0", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["coeffs"] == {"3": "3/4", "2": "-1/2", "1": "1/2", "-1": "-1/4"}

    def test_text_formula(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "2", "2")
        assert code == 0
        assert "1/4*3^n" in out

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "3", "3", "--format", "csv")
        lines = out.splitlines()
        assert lines[0] == "k,coefficient"
        assert "4,1/8" in lines


class TestFormatConsistency:
    def test_count_renders_identical_numbers(self, capsys):
        code, text_out, _ = run_cli(capsys, "count", "2", "2", "--method", "enum")
        code, json_out, _ = run_cli(
            capsys, "count", "2", "2", "--method", "enum", "--format", "json"
        )
        code, csv_out, _ = run_cli(
            capsys, "count", "2", "2", "--method", "enum", "--format", "csv"
        )
        report = json.loads(json_out)
        counts = report["counts"]["enum"]
        for d, c in counts.items():
            assert f"{d},{c}" in csv_out.splitlines()
        for c in counts.values():
            assert c in text_out
        assert report["totals"]["enum"] == "14"
        assert "total,14" in csv_out
        assert "14" in text_out

    def test_dim_renders_identical_numbers(self, capsys, tmp_path):
        import csv
        import io

        path = tmp_path / "d.txt"
        path.write_text("#.##\n...#\n#..#")
        _, text_out, _ = run_cli(capsys, "dim", str(path))
        _, json_out, _ = run_cli(capsys, "dim", str(path), "--format", "json")
        _, csv_out, _ = run_cli(capsys, "dim", str(path), "--format", "csv")
        report = json.loads(json_out)
        header, values = csv.reader(io.StringIO(csv_out))
        record = dict(zip(header, values))
        for key in ("sigma", "tau", "odd_cycles", "kernel_dim", "dimension"):
            assert str(report[key]) == record[key]
            assert f"{key}: {report[key]}" in text_out


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hstrata", "count", "2", "2", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["totals"]["formula"] == "14"
