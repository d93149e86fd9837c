import json

import pytest

from betahalton import cli
from betahalton.process import _discrepancy, _sequence
from betahalton.structure.point_set import HaltonConfig

from tests.conftest import get_system


def run(capsys, *argv):
    status = cli.main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestGen:
    def test_fibonacci_csv(self, capsys):
        status, out, __ = run(capsys, "gen", "--coeffs", "1,1", "--count", "5", "--format", "csv")

        lines = out.splitlines()
        assert status == 0
        assert len(lines) == 5
        assert lines[0] == "0.618033988749895"

    def test_two_dimensional_with_header(self, capsys):
        status, out, __ = run(
            capsys, "gen", "--coeffs", "1,1", "--coeffs", "2", "--count", "3", "--header"
        )

        lines = out.splitlines()
        assert status == 0
        assert lines[0] == "dim=2 generator=beta-halton[(1,1);(2)]"
        assert lines[1].split(",")[1] == "0.5"

    def test_jsonl(self, capsys):
        status, out, __ = run(
            capsys, "gen", "--coeffs", "2", "--count", "2", "--format", "jsonl", "--include-zero"
        )

        records = [json.loads(line) for line in out.splitlines()]
        assert status == 0
        assert records == [{"index": 0, "point": [0.0]}, {"index": 1, "point": [0.5]}]

    def test_from_stored_config(self, capsys, user_home):
        status, out, __ = run(capsys, "gen", "--config", "fibonacci", "--count", "7")

        assert status == 0
        assert len(out.splitlines()) == 7

    def test_deterministic(self, capsys):
        argv = ("gen", "--coeffs", "1,0,1", "--coeffs", "2", "--count", "50", "--precision", "17")

        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_not_unit_interval(self, capsys):
        status, out, err = run(capsys, "gen", "--coeffs", "2,1", "--count", "5")

        assert status == 1
        assert out == ""
        assert "Supported forms" in err

    def test_needs_systems(self, capsys):
        assert run(capsys, "gen", "--count", "5")[0] == 1

    def test_bad_precision(self, capsys):
        assert run(capsys, "gen", "--coeffs", "1,1", "--precision", "30")[0] == 1

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit):
            cli.main(["plot"])


class TestReports:
    def test_classify_composite(self, capsys):
        status, out, __ = run(capsys, "classify", "--coeffs", "1,0,1,1")

        assert status == 0
        assert out == "CompositeCase a'=(1,0) a''=(1,1) equivalent to (1,1)\n"

    def test_classify_jsonl(self, capsys):
        __, out, __ = run(capsys, "classify", "--coeffs", "1,2", "--format", "jsonl")

        record = json.loads(out)
        assert record["tag"] == "BAdicEquivalentCase"
        assert record["equivalent_base"] == 2

    def test_classify_rejected(self, capsys):
        status, out, __ = run(capsys, "classify", "--coeffs", "2,1")

        assert status == 0
        assert out == "NotUnitIntervalOrNotDense\n"

    def test_verify_measure(self, capsys):
        status, out, __ = run(capsys, "verify-measure", "--coeffs", "1,0,1", "--depth", "8")

        assert status == 0
        assert "max_deviation < 1e-10" in out.splitlines()

    def test_spectrum(self, capsys):
        status, out, __ = run(
            capsys, "spectrum", "--coeffs", "2", "--c", "1", "--m", "3", "--l", "0", "--n-max", "5"
        )

        assert status == 0
        assert out.splitlines() == ["0,0.125", "1,0.25", "2,0.5", "3,0.0", "4,0.0", "5,0.0"]

    def test_check_compat(self, capsys):
        status, out, __ = run(capsys, "check-compat", "--coeffs", "2", "--coeffs", "4")

        assert status == 0
        assert out.splitlines()[-1] == "status=FAIL"

    def test_check_compat_outside_hypotheses(self, capsys):
        status, __, err = run(capsys, "check-compat", "--coeffs", "1,0,1", "--coeffs", "2")

        assert status == 1
        assert "outside the compatibility hypotheses" in err

    def test_integrate(self, capsys):
        status, out, __ = run(
            capsys, "integrate", "--coeffs", "1,1", "--f-id", "mean", "--count", "500",
            "--format", "jsonl",
        )

        record = json.loads(out)
        assert status == 0
        assert record["N"] == 500
        assert record["error"] <= record["kh_bound"] + 1e-12

    def test_integrate_unknown_function(self, capsys):
        assert run(capsys, "integrate", "--coeffs", "1,1", "--f-id", "cosine")[0] == 1

    def test_orbit_from_origin(self, capsys):
        status, out, __ = run(capsys, "orbit", "--coeffs", "1,1", "--count", "3")

        assert status == 0
        assert out.splitlines() == ["0", "0.618033988749895", "0.381966011250105"]

    def test_orbit_seed_is_reproducible(self, capsys):
        argv = ("orbit", "--coeffs", "1,1", "--seed", "3", "--count", "4")

        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_configs_list(self, capsys, user_home):
        status, out, __ = run(capsys, "configs", "list")

        assert status == 0
        assert "fibonacci" in out.splitlines()


class TestDiscrepancyRoundTrip:
    def test_csv_round_trip(self, capsys, tmp_path):
        __, out, __ = run(
            capsys, "gen", "--coeffs", "1,1", "--coeffs", "2", "--count", "300",
            "--precision", "17", "--header",
        )
        path = tmp_path / "points.csv"
        path.write_text(out)

        status, out, __ = run(
            capsys, "discrepancy", "--input", str(path), "--format", "jsonl"
        )

        cfg = HaltonConfig((get_system((1, 1)), get_system((2,))))
        expected = _discrepancy.star_discrepancy(_sequence.generate_point_set(cfg, 300))

        assert status == 0
        assert json.loads(out)["d_star"] == pytest.approx(expected.d_star, abs=1e-12)

    def test_generated_directly(self, capsys):
        status, out, __ = run(capsys, "discrepancy", "--coeffs", "2", "--count", "3")

        assert status == 0
        assert out == "N=3 s=1 method=exact_1d d_star=0.25\n"

    def test_missing_input(self, capsys, tmp_path):
        assert run(capsys, "discrepancy", "--input", str(tmp_path / "nope.csv"))[0] == 1

    def test_over_budget(self, capsys):
        status, __, err = run(
            capsys, "discrepancy", "--coeffs", "1,1", "--coeffs", "2", "--count", "100",
            "--work-budget", "10",
        )

        assert status == 1
        assert "work budget" in err


class TestConfigWorkBudget:
    @pytest.fixture
    def tight_config(self, user_home, tmp_path):
        path = tmp_path / "tight.yaml"
        path.write_text(
            "systems:\n  - coeffs: [1, 1]\n  - coeffs: [2]\ncount: 100\nwork_budget: 10\n"
        )
        return str(path)

    def test_discrepancy_budget_from_config(self, capsys, tight_config):
        status, __, err = run(capsys, "discrepancy", "--config", tight_config)

        assert status == 1
        assert "work budget of 10" in err

    def test_flag_overrides_config(self, capsys, tight_config):
        status, out, __ = run(
            capsys, "discrepancy", "--config", tight_config, "--work-budget", "100000"
        )

        assert status == 0
        assert out.startswith("N=100 s=2 method=exact_grid")

    def test_input_file_uses_config_budget(self, capsys, tight_config, tmp_path):
        __, out, __ = run(capsys, "gen", "--config", tight_config)
        path = tmp_path / "points.csv"
        path.write_text(out)

        status, __, err = run(
            capsys, "discrepancy", "--input", str(path), "--config", tight_config
        )

        assert status == 1
        assert "work budget of 10" in err

    def test_integrate_omits_bound(self, capsys, tight_config):
        status, out, __ = run(
            capsys, "integrate", "--config", tight_config, "--f-id", "mean",
            "--format", "jsonl",
        )

        record = json.loads(out)
        assert status == 0
        assert record["N"] == 100
        assert record["kh_bound"] is None
