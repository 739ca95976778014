"""
命令列介面測試
"""
import io
import json
import logging

import pandas as pd
import pytest

from ks_bias_tool import __version__
from ks_bias_tool.cli.main import app


def invoke_json(runner, *args):
    result = runner.invoke(app, [*args, "--format", "json"])
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def invoke_csv(runner, *args):
    result = runner.invoke(app, [*args, "--format", "csv"])
    assert result.exit_code == 0, result.output
    return pd.read_csv(io.StringIO(result.stdout))


class TestNullCommands:
    def test_pvalue(self, runner):
        data = invoke_json(runner, "pvalue", "--n", "50", "--m", "50", "--d", "0.26")
        assert data["parameters"]["d"]["fraction"] == "13/50"
        assert float(data["results"]["p_value"]["decimal"]) == pytest.approx(0.0678, abs=5e-4)
        assert data["provenance"]["version"] == __version__

    def test_alpha_ladder(self, runner):
        results = invoke_json(runner, "alpha-ladder", "--n", "10", "--m", "11")["results"]
        assert results["alpha1"]["fraction"] == "1/176358"
        assert results["k"] == 11
        assert results["verified"] is True
        assert "alpha3" not in results

    def test_alpha_ladder_table(self, runner):
        result = runner.invoke(app, ["alpha-ladder", "--n", "5", "--m", "3"])
        assert result.exit_code == 0
        assert "1/7" in result.stdout

    def test_null_dist_csv(self, runner):
        frame = invoke_csv(runner, "null-dist", "--n", "3", "--m", "3")
        assert list(frame["numerator"]) == [3, 6, 9]
        assert frame["count"].sum() == 20
        assert frame["tail.fraction"].iloc[0] == "1"

    def test_threshold(self, runner):
        results = invoke_json(runner, "threshold", "--n", "50", "--m", "50", "--alpha", "0.05")["results"]
        assert results["threshold"]["fraction"] == "7/25"
        assert results["never_rejects"] is False

    def test_stat_from_files(self, runner, tmp_path):
        x_file, y_file = tmp_path / "x.txt", tmp_path / "y.txt"
        x_file.write_text("1\n2\n3\n", encoding="utf-8")
        y_file.write_text("4\n5\n6\n", encoding="utf-8")
        results = invoke_json(runner, "stat", str(x_file), str(y_file))["results"]
        assert results["statistic"]["fraction"] == "1"
        assert results["p_value"]["fraction"] == "1/10"
        assert results["cross_sample_ties"] is False

    def test_stat_beyond_exact_size_limit(self, runner, tmp_path, caplog):
        x_file, y_file = tmp_path / "x.txt", tmp_path / "y.txt"
        x_file.write_text("".join(f"{i}\n" for i in range(600)), encoding="utf-8")
        y_file.write_text("".join(f"{1000 + i}\n" for i in range(10)), encoding="utf-8")
        with caplog.at_level(logging.WARNING, logger="ks_bias_tool"):
            results = invoke_json(runner, "stat", str(x_file), str(y_file))["results"]
        assert results["n"] == 600
        assert results["statistic"]["fraction"] == "1"
        assert results["numerator"] == 6000
        assert results["p_value"] is None
        assert any(record.levelno == logging.WARNING for record in caplog.records)


class TestBiasCommands:
    def test_biased_alt(self, runner):
        results = invoke_json(runner, "biased-alt", "--n", "10", "--m", "11", "--rank", "2")["results"]
        assert results["theta"]["fraction"] == "9/8"
        assert results["alternative"] == "odds-power(theta=9/8)"

    def test_reject_prob_degenerate_default(self, runner):
        results = invoke_json(runner, "reject-prob", "--n", "3", "--m", "2", "--rank", "2")["results"]
        assert results["exact"]["fraction"] == "1/2"
        assert results["uniform_probability"]["fraction"] == "3/5"

    def test_reject_prob_theta(self, runner):
        results = invoke_json(runner, "reject-prob", "--n", "5", "--m", "3", "--rank", "2", "--theta", "1")["results"]
        assert results["probability"] == pytest.approx(1 / 7, rel=1e-10)
        assert results["exact"] is None

    def test_bias_verdict(self, runner):
        data = invoke_json(runner, "bias-verdict", "--n", "10", "--m", "11")
        assert data["results"]["verdict"] == "biased"
        assert data["parameters"]["theta"]["fraction"] == "9/10"

    def test_scan_independent_of_workers(self, runner):
        args = ["scan", "--n", "7", "--m", "5", "--rank", "2", "--points", "5", "--format", "csv"]
        sequential = runner.invoke(app, args)
        parallel = runner.invoke(app, ["--workers", "3", *args])
        assert sequential.exit_code == parallel.exit_code == 0
        assert sequential.stdout == parallel.stdout
        frame = pd.read_csv(io.StringIO(sequential.stdout))
        assert list(frame.columns) == ["theta", "probability", "quadrature_error"]
        assert len(frame) == 5

    def test_non_nesting(self, runner):
        rows = invoke_json(runner, "non-nesting")["results"]["rows"]
        assert [(row["verdict_alpha1"], row["verdict_alpha2"]) for row in rows] == [
            ("biased", "not-biased-against-this-G"),
            ("not-biased-against-this-G", "biased"),
        ]

    def test_figure1_csv(self, runner):
        frame = invoke_csv(runner, "figure1")
        assert len(frame) == 303
        assert sorted(frame["m"].unique()) == [20, 55, 100]
        assert (frame.loc[frame["x"] == 0.5, "G"] == 0.5).all()


class TestSimulationCommands:
    def test_power_is_reproducible(self, runner):
        args = ["power", "--n", "10", "--m", "11", "--reps", "2000", "--seed", "7", "--format", "json"]
        first = runner.invoke(app, args)
        second = runner.invoke(app, args)
        assert first.exit_code == 0, first.output
        assert first.stdout == second.stdout
        data = json.loads(first.stdout)
        assert data["parameters"]["seed"] == 7
        assert data["provenance"]["replicates"] == 2000

    def test_power_requires_seed(self, runner):
        result = runner.invoke(app, ["power", "--n", "10", "--m", "11"])
        assert result.exit_code == 2

    def test_mc_tail(self, runner):
        results = invoke_json(
            runner, "mc-tail", "--n", "5", "--m", "3", "--rank", "2", "--theta", "1", "--reps", "2000", "--seed", "3"
        )["results"]
        assert results["level"]["fraction"] == "1/7"
        assert 0 < results["probability"] < 0.3

    def test_table1_is_byte_identical(self, runner):
        args = ["table1", "--reps", "200", "--seed", "42", "--format", "csv"]
        first = runner.invoke(app, args)
        second = runner.invoke(app, args)
        assert first.exit_code == 0, first.output
        assert first.stdout_bytes == second.stdout_bytes

    @pytest.mark.slow
    def test_table1(self, runner):
        frame = invoke_csv(runner, "table1", "--reps", "500", "--seed", "42")
        assert len(frame) == 20
        assert "within_band" in frame.columns


class TestErrorsAndHelp:
    def test_domain_error(self, runner):
        result = runner.invoke(app, ["pvalue", "--n", "0", "--m", "5", "--d", "0.5"])
        assert result.exit_code == 3
        assert "error[domain]" in result.output

    def test_conflicting_alternatives(self, runner):
        result = runner.invoke(app, ["reject-prob", "--n", "5", "--m", "3", "--theta", "2", "--limit", "point-mass-half"])
        assert result.exit_code == 3

    def test_invalid_tolerance(self, runner):
        result = runner.invoke(app, ["reject-prob", "--n", "5", "--m", "3", "--tol", "0"])
        assert result.exit_code == 3

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(app, ["stat", str(tmp_path / "a.txt"), str(tmp_path / "b.txt")])
        assert result.exit_code == 4
        assert "error[input]" in result.output

    def test_usage_error(self, runner):
        assert runner.invoke(app, ["pvalue", "--n", "abc", "--m", "5", "--d", "0.5"]).exit_code == 2

    def test_help_shows_defaults(self, runner):
        reject_help = runner.invoke(app, ["reject-prob", "--help"])
        assert reject_help.exit_code == 0
        assert "1e-12" in reject_help.stdout
        assert "10000" in runner.invoke(app, ["power", "--help"]).stdout

    def test_version(self, runner):
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout

    @pytest.mark.slow
    def test_verify(self, runner):
        result = runner.invoke(app, ["verify", "--reps", "20000", "--format", "json"])
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)["results"]["passed"] is True
