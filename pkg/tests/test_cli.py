"""End-to-end tests of the command-line interface.

Commands run in-process through main(argv); outputs are parsed back from
captured stdout or --out files.  Covers value correctness, exit codes,
output formats, reproducibility, and worker-count independence.
"""

import json
import math

import pytest

from mlfourier import cli
from mlfourier.errors import AccuracyError, ConvergenceError


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    lines = [ln for ln in text.strip().splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [
        {k: float(v) for k, v in zip(header, ln.split(","))}
        for ln in lines[1:]
    ]
    return header, rows


class TestEvalMl:
    def test_exponential_point(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval-ml", "--alpha", "1", "--beta", "1",
            "--z", "-1+0i", "--no-timestamp",
        )
        assert code == 0
        header, rows = csv_rows(out)
        assert header == ["xi", "re", "im", "abs", "est_error"]
        assert len(rows) == 1
        assert abs(rows[0]["re"] - math.exp(-1)) < 1e-9
        assert abs(rows[0]["im"]) < 1e-12

    def test_value_at_origin(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval-ml", "--alpha", "0.5", "--beta", "1.3",
            "--z", "0+0i", "--no-timestamp",
        )
        assert code == 0
        _, rows = csv_rows(out)
        assert abs(rows[0]["re"] - 1 / math.gamma(1.3)) < 1e-12

    def test_repeatable_z(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval-ml", "--alpha", "0.8", "--z", "1+1i", "--z", "-2+0i",
            "--no-timestamp",
        )
        assert code == 0
        _, rows = csv_rows(out)
        assert len(rows) == 2

    def test_alpha_validation_names_the_range(self, capsys):
        code, _, err = run_cli(capsys, "eval-ml", "--alpha", "2.5")
        assert code == 2
        assert "0 < alpha < 2" in err

    def test_unparseable_z(self, capsys):
        code, _, err = run_cli(
            capsys, "eval-ml", "--alpha", "1", "--z", "not-a-number"
        )
        assert code == 2
        assert "error:" in err


class TestEvalBessel:
    def test_matches_reference_values(self, capsys):
        from scipy.special import jv

        code, out, _ = run_cli(
            capsys,
            "eval-bessel", "--order", "0",
            "--xi-min", "1", "--xi-max", "4", "--xi-points", "3",
            "--no-timestamp",
        )
        assert code == 0
        _, rows = csv_rows(out)
        assert [r["xi"] for r in rows] == [1.0, 2.0, 4.0]
        for row in rows:
            assert abs(row["re"] - jv(0, row["xi"])) < 1e-10

    def test_scaled_kernel(self, capsys):
        from scipy.special import jv

        code, out, _ = run_cli(
            capsys,
            "eval-bessel", "--scaled", "--dim", "2",
            "--xi-min", "0.5", "--xi-max", "2", "--xi-points", "3",
            "--no-timestamp",
        )
        assert code == 0
        _, rows = csv_rows(out)
        for row in rows:
            r = row["xi"]
            assert abs(row["re"] - jv(0, 2 * math.pi * r) * r) < 1e-10

    def test_grid_validation(self, capsys):
        code, _, err = run_cli(
            capsys, "eval-bessel", "--xi-points", "0"
        )
        assert code == 2
        assert "at least 1 point" in err
        code, _, err = run_cli(
            capsys, "eval-bessel", "--xi-min", "0"
        )
        assert code == 2


class TestTransform:
    GAUSS = (
        "transform", "--alpha", "1", "--beta", "1", "--sigma", "2",
        "--dim", "1", "--xi-min", "1", "--xi-points", "1", "--no-timestamp",
    )

    def test_gaussian_point(self, capsys):
        code, out, _ = run_cli(capsys, *self.GAUSS)
        assert code == 0
        _, rows = csv_rows(out)
        want = math.sqrt(math.pi) * math.exp(-math.pi ** 2)
        assert abs(rows[0]["abs"] - want) < 1e-6 * want

    def test_strategies_agree(self, capsys):
        _, out_a, _ = run_cli(capsys, *self.GAUSS)
        _, out_b, _ = run_cli(capsys, *self.GAUSS, "--strategy", "direct")
        _, rows_a = csv_rows(out_a)
        _, rows_b = csv_rows(out_b)
        a, b = rows_a[0]["abs"], rows_b[0]["abs"]
        assert abs(a - b) < 1e-6 * a

    def test_json_payload_shape_and_roundtrip(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "transform", "--alpha", "1", "--beta", "1", "--sigma", "2",
            "--dim", "1", "--xi-min", "0.5", "--xi-max", "1",
            "--xi-points", "2", "--format", "json", "--no-timestamp",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1
        assert payload["params"]["strategy"] == "BesselExpansionAccelerated"
        assert len(payload["records"]) == 2
        assert payload["records"][0]["xi_mag"] == 0.5
        redumped = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        assert redumped == out

    def test_estimated_error_positive(self, capsys):
        _, out, _ = run_cli(capsys, *self.GAUSS)
        _, rows = csv_rows(out)
        assert rows[0]["est_error"] > 0


class TestVerifyAsymptotics:
    def test_small_regime_power_law(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify-asymptotics", "--regime", "small",
            "--alpha", "0.8", "--beta", "1", "--sigma", "0.7", "--dim", "1",
            "--no-timestamp",
        )
        assert code == 0
        payload = json.loads(out)
        small = payload["report"]["small"]
        assert small["small_xi_law"] == "power"
        assert abs(small["fit"]["slope"] + 0.3) < 0.05
        assert small["constants_matched"] is True

    def test_large_regime_reports_mismatch(self, capsys):
        # computed tail decays faster than the stated law; the command
        # surfaces that as the law-mismatch exit code
        code, _, err = run_cli(
            capsys,
            "verify-asymptotics", "--regime", "large",
            "--alpha", "0.8", "--beta", "1", "--sigma", "0.7", "--dim", "1",
        )
        assert code == 4
        assert "slope" in err

    def test_out_of_scope_sigma(self, capsys):
        code, _, err = run_cli(
            capsys,
            "verify-asymptotics", "--sigma", "0.9", "--dim", "3",
        )
        assert code == 2

    def test_explicit_grid_is_used(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify-asymptotics", "--regime", "small",
            "--alpha", "0.8", "--beta", "1", "--sigma", "0.7", "--dim", "1",
            "--xi-min", "1e-4", "--xi-max", "1e-2", "--xi-points", "8",
            "--no-timestamp",
        )
        assert code == 0
        assert json.loads(out)["report"]["small"]["fit"]["points"] == 8

    def test_malformed_grid(self, capsys):
        base = (
            "verify-asymptotics", "--sigma", "0.7", "--dim", "1",
        )
        code, _, err = run_cli(capsys, *base, "--xi-points", "3")
        assert code == 2
        assert "6 grid points" in err or "together" in err
        code, _, err = run_cli(
            capsys, *base,
            "--xi-min", "1e-3", "--xi-max", "1e-2",
        )
        assert code == 2
        code, _, err = run_cli(
            capsys, *base,
            "--xi-min", "0", "--xi-max", "1e-2", "--xi-points", "8",
        )
        assert code == 2


class TestLpRegionCommand:
    def test_bounded_region(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "lp-region", "--dim", "3", "--sigma", "2", "--no-timestamp",
        )
        assert code == 0
        payload = json.loads(out)
        t3 = payload["theorem3"]
        assert t3 == {
            "lower": 1.0,
            "upper": 3.0,
            "lower_open": True,
            "upper_open": True,
            "source": "FullTheorem",
        }
        hy = payload["hausdorff_young"]
        assert hy["lower"] == 2.0
        assert hy["upper"] == 3.0
        assert hy["upper_open"] is True

    def test_unbounded_closed_region(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "lp-region", "--dim", "2", "--sigma", "5", "--no-timestamp",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["theorem3"]["upper"] == "inf"
        assert payload["theorem3"]["upper_open"] is False
        assert payload["hausdorff_young"]["upper"] == "inf"
        assert payload["hausdorff_young"]["upper_open"] is False

    def test_no_hausdorff_young(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "lp-region", "--dim", "3", "--sigma", "1.2", "--no-timestamp",
        )
        assert code == 0
        assert json.loads(out)["hausdorff_young"] is None

    def test_out_of_scope(self, capsys):
        code, _, err = run_cli(
            capsys, "lp-region", "--dim", "3", "--sigma", "1"
        )
        assert code == 2
        assert "sigma" in err


class TestIbpCheck:
    ARGS = (
        "ibp-check", "--alpha", "0.8", "--beta", "1", "--sigma", "1",
        "--dim", "1", "--xi", "1", "--ell", "0", "--ibp-order", "1",
        "--no-timestamp",
    )

    def test_identity_within_threshold(self, capsys):
        code, out, _ = run_cli(capsys, *self.ARGS)
        assert code == 0
        payload = json.loads(out)
        assert payload["worst"] < 1e-5
        assert payload["checks"][0]["ibp_order"] == 1

    def test_threshold_violation_exit_code(self, capsys):
        code, out, _ = run_cli(capsys, *self.ARGS, "--threshold", "1e-16")
        assert code == 4

    def test_order_gate(self, capsys):
        code, _, err = run_cli(capsys, *self.ARGS[:-1], "--ibp-order", "7")
        assert code == 2


class TestOutputPlumbing:
    def test_timestamp_lines(self, capsys):
        _, out, _ = run_cli(
            capsys, "eval-bessel", "--xi-points", "2", "--xi-max", "2"
        )
        assert out.splitlines()[0].startswith("# timestamp: ")
        _, out, _ = run_cli(
            capsys,
            "lp-region", "--dim", "1", "--sigma", "0.7",
        )
        assert "timestamp" in json.loads(out)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "grid.csv"
        code, out, _ = run_cli(
            capsys,
            "eval-bessel", "--xi-points", "2", "--xi-max", "2",
            "--no-timestamp", "--out", str(target),
        )
        assert code == 0
        assert out == ""
        header, rows = csv_rows(target.read_text())
        assert header[0] == "xi" and len(rows) == 2

    def test_byte_identical_reruns(self, capsys):
        args = (
            "transform", "--alpha", "1", "--beta", "1", "--sigma", "2",
            "--dim", "1", "--xi-min", "0.5", "--xi-max", "2",
            "--xi-points", "3", "--no-timestamp",
        )
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_worker_count_independence(self, capsys, monkeypatch):
        args = (
            "eval-bessel", "--order", "1.5", "--xi-min", "0.3",
            "--xi-max", "30", "--xi-points", "12", "--no-timestamp",
        )
        outputs = []
        for setting in (None, "1", "4", "0"):
            if setting is None:
                monkeypatch.delenv("MLF_THREADS", raising=False)
            else:
                monkeypatch.setenv("MLF_THREADS", setting)
            _, out, _ = run_cli(capsys, *args)
            outputs.append(out)
        assert len(set(outputs)) == 1

    def test_invalid_worker_count(self, capsys, monkeypatch):
        for bad in ("abc", "-2"):
            monkeypatch.setenv("MLF_THREADS", bad)
            code, _, err = run_cli(
                capsys, "eval-bessel", "--xi-points", "3"
            )
            assert code == 2
            assert "MLF_THREADS" in err


class TestExitCodeMapping:
    def test_convergence_failure_maps_to_three(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise ConvergenceError("acceleration stagnated")

        monkeypatch.setattr(cli, "ml_eval", boom)
        code, _, err = run_cli(capsys, "eval-ml", "--alpha", "1")
        assert code == 3
        assert "stagnated" in err

    def test_accuracy_failure_maps_to_three(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise AccuracyError("target accuracy unreachable")

        monkeypatch.setattr(cli, "ml_eval", boom)
        code, _, err = run_cli(capsys, "eval-ml", "--alpha", "1")
        assert code == 3
