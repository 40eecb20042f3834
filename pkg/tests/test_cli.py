import json
from fractions import Fraction

import pytest

from spanLattice.cli import build_parser, main
from spanLattice.io import load_market
from spanLattice.options import Portfolio


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestReplicate:
    def test_exact_replication(self, capsys, market_file, tmp_path):
        market = market_file()
        out_path = tmp_path / "portfolio.json"
        code, out, _ = run(
            capsys, "replicate", "--market", str(market), "--asset", "f", "--claim", "g",
            "--exact", "--out", str(out_path),
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "success"
        assert payload["residual"] == "0"

        loaded = load_market(market)
        space = loaded.space(exact=True)
        portfolio = Portfolio.load(out_path, space)
        assert portfolio.evaluate().tolist() == [5, Fraction(1, 2), 0, 7, 1]

    def test_constant_asset_cannot_span(self, capsys, market_file):
        code, out, _ = run(capsys, "replicate", "--market", str(market_file()), "--asset", "flat", "--claim", "g")
        assert code == 1
        payload = json.loads(out)
        assert payload["status"] == "failure"
        assert payload["reason"] == "spanning"
        assert payload["residual"] > 0

    def test_unknown_claim(self, capsys, market_file):
        code, _, err = run(capsys, "replicate", "--market", str(market_file()), "--asset", "f", "--claim", "zz")
        assert code == 2
        assert "Unknown payoff" in err


class TestSpanAndMeasure:
    def test_span(self, capsys, market_file):
        code, out, _ = run(capsys, "span", "--market", str(market_file()), "--asset", "h", "--exact")
        assert code == 0
        payload = json.loads(out)
        assert payload["dimension"] == 3
        assert payload["blocks"] == [[0, 1], [2, 3], [4]]
        assert len(payload["basis"]) == 3

    def test_measurable_claim(self, capsys, market_file):
        code, out, _ = run(capsys, "measure", "--market", str(market_file()), "--claim", "g_h", "--algebra-from", "h")
        assert code == 0
        payload = json.loads(out)
        assert payload["is_measurable"] and payload["via_components"]

    def test_non_measurable_claim(self, capsys, market_file):
        code, out, _ = run(
            capsys, "measure", "--market", str(market_file()), "--claim", "g_bad", "--algebra-from", "h, flat",
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["reason"] == "measurability"
        assert payload["block"] == [0, 1]
        assert payload["algebra_from"] == ["h", "flat"]


class TestCounterexample:
    def test_tables(self, capsys, tmp_path):
        out_dir = tmp_path / "tables"
        code, out, _ = run(capsys, "counterexample", "--rows", "10", "--cols", "10", "--out", str(out_dir))
        assert code == 0
        payload = json.loads(out)
        assert payload["exact"] is True
        assert payload["max_row_limit_residual"] == "0"
        assert payload["obstruction_bounds"][:3] == ["1/2", "1", "3/2"]
        names = {p.name for p in out_dir.iterdir()}
        assert {"u.csv", "v.csv", "e.csv", "y1.csv", "y10.csv", "row_limit_residuals.csv", "obstruction_bounds.csv"} <= names

    def test_wide_truncation_writes_every_y(self, capsys, tmp_path):
        out_dir = tmp_path / "wide"
        code, out, _ = run(capsys, "counterexample", "--rows", "3", "--cols", "8", "--out", str(out_dir))
        assert code == 0
        assert json.loads(out)["obstruction_bounds"] == ["1/2", "1", "3/2"]
        names = {p.name for p in out_dir.iterdir()}
        assert "y7.csv" in names
        assert "y8.csv" not in names

    def test_output_is_deterministic(self, capsys, tmp_path):
        outputs = []
        for name in ("a", "b"):
            out_dir = tmp_path / name
            _, out, _ = run(capsys, "counterexample", "--rows", "6", "--cols", "6", "--out", str(out_dir))
            outputs.append((out, (out_dir / "obstruction_bounds.csv").read_text()))
        assert outputs[0] == outputs[1]

    def test_exact_and_float_are_exclusive(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["counterexample", "--rows", "3", "--cols", "3", "--exact", "--float"])


class TestApprox:
    def test_stage_table(self, capsys, market_file, tmp_path):
        csv_path = tmp_path / "stages.csv"
        code, out, _ = run(
            capsys, "approx", "--market", str(market_file()), "--claim", "g_h", "--asset", "h",
            "--levels", "3", "--out", str(csv_path),
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "level,error,envelope,s0,s1,s2,s3,s4"
        assert len(lines) == 4
        assert csv_path.read_text() == out

    def test_non_measurable_claim(self, capsys, market_file):
        code, out, _ = run(
            capsys, "approx", "--market", str(market_file()), "--claim", "g_bad", "--asset", "h", "--levels", "2",
        )
        assert code == 1
        assert json.loads(out)["reason"] == "measurability"


def test_bad_market_exit_code(capsys, market_file):
    path = market_file(
        {"format_version": 1, "states": ["a", "b"], "probs": [0.2, 0.2], "assets": {"f": [1, 2]}, "claims": {}}
    )
    code, _, err = run(capsys, "span", "--market", str(path), "--asset", "f")
    assert code == 2
    assert "sum to" in err


def test_missing_market_file(capsys, tmp_path):
    code, _, _ = run(capsys, "span", "--market", str(tmp_path / "absent.json"), "--asset", "f")
    assert code == 2
