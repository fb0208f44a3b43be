import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

import tailbounds.cli as cli
from tailbounds.errors import NoWitness, OracleViolation
from tailbounds.mixture import from_json_obj, mixture_mean, mixture_tail
from tailbounds.oracles import OracleReport

GOLDEN = Path(__file__).parent / "golden"
SQRT3 = math.sqrt(3.0)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "tailbounds", *args],
        capture_output=True,
        text=True,
    )


def golden_text(name, actual):
    """Compare against the stored file; regenerate with TB_REGOLD=1."""
    import os

    path = GOLDEN / name
    if os.environ.get("TB_REGOLD"):
        path.write_text(actual, encoding="utf-8")
    assert actual == path.read_text(encoding="utf-8")


class TestBoundCommand:
    def test_one_sided_json_golden(self):
        p = run_cli("bound", "--class", "all", "--one-sided", "--v", "1", "--json")
        assert p.returncode == 0
        golden_text("bound_all_onesided_v1.json", p.stdout)
        obj = json.loads(p.stdout)
        assert list(obj) == ["class", "u", "v", "value", "regime", "theorem", "conditions_ok"]
        assert obj["u"] is None and obj["value"] == 0.5

    def test_two_sided_json_golden(self):
        p = run_cli("bound", "--class", "unimodal", "--u", "4", "--v", "2", "--json")
        assert p.returncode == 0
        golden_text("bound_unimodal_u4_v2.json", p.stdout)
        obj = json.loads(p.stdout)
        assert obj["value"] == pytest.approx(4.0 / 45.0, rel=1e-15)
        assert obj["regime"] == "thm10.cap"

    def test_invalid_interval_exit_2(self):
        p = run_cli("bound", "--class", "all", "--u", "-1", "--v", "2")
        assert p.returncode == 2
        assert "error:" in p.stderr

    def test_missing_side_exit_2(self):
        p = run_cli("bound", "--class", "all", "--v", "2")
        assert p.returncode == 2

    def test_out_of_range_exit_3_with_fallback(self):
        p = run_cli("bound", "--class", "unimodal", "--u", "1", "--v", "1")
        assert p.returncode == 3
        assert "not sharp for requested class" in p.stderr
        assert "1.0" in p.stderr  # the class-all fallback value at u=v=1

    def test_class_query_exit_4(self):
        p = run_cli("bound", "--class", "concave", "--u", "4", "--v", "2")
        assert p.returncode == 4


class TestCapabilityCommand:
    def test_golden_json(self):
        lim = repr(2.0 * SQRT3)
        p = run_cli("capability", "--lsl", "-" + lim, "--usl", lim,
                    "--mean", "0", "--sd", "1", "--json")
        assert p.returncode == 0
        golden_text("capability_pm2sqrt3.json", p.stdout)
        obj = json.loads(p.stdout)
        rows = {r["class"]: r for r in obj["rows"]}
        assert abs(rows["unimodal"]["value"] - 1.0 / 27.0) <= 1e-12
        assert rows["unimodal"]["ppm"] == 37037

    def test_from_data_file(self, tmp_path):
        data = tmp_path / "x.csv"
        data.write_text("thickness\n9.0\n10.0\n11.0\n", encoding="utf-8")
        p = run_cli("capability", "--lsl", "4", "--usl", "16",
                    "--data", str(data), "--column", "thickness", "--json")
        assert p.returncode == 0
        obj = json.loads(p.stdout)
        assert obj["mean"] == 10.0 and obj["n"] == 3
        assert obj["u"] == obj["v"] == 6.0

    def test_malformed_csv_exit_5_with_line(self, tmp_path):
        data = tmp_path / "x.csv"
        data.write_text("thickness\n9.0\nbad\n", encoding="utf-8")
        p = run_cli("capability", "--lsl", "4", "--usl", "16",
                    "--data", str(data), "--column", "thickness")
        assert p.returncode == 5
        assert "line 3" in p.stderr

    def test_single_row_exit_2(self, tmp_path):
        data = tmp_path / "x.csv"
        data.write_text("thickness\n9.0\n", encoding="utf-8")
        p = run_cli("capability", "--lsl", "4", "--usl", "16",
                    "--data", str(data), "--column", "thickness")
        assert p.returncode == 2

    def test_mean_outside_limits_exit_2(self):
        p = run_cli("capability", "--lsl", "1", "--usl", "2", "--mean", "5", "--sd", "1")
        assert p.returncode == 2


class TestVerifyCommand:
    def test_lp(self):
        p = run_cli("verify", "--class", "symmetric", "--u", "3", "--v", "2",
                    "--oracle", "lp", "--json")
        assert p.returncode == 0
        obj = json.loads(p.stdout)
        assert obj["ok"] is True
        (rep,) = obj["reports"]
        assert rep["oracle"] == "lp"
        assert abs(rep["gap"]) <= 1e-12

    def test_grid_one_sided(self):
        p = run_cli("verify", "--class", "unimodal", "--v", "2", "--oracle", "grid", "--json")
        assert p.returncode == 0
        obj = json.loads(p.stdout)
        (rep,) = obj["reports"]
        assert rep["oracle"] == "grid"
        assert 0.0 <= rep["gap"] <= 1e-3

    def test_mc(self):
        p = run_cli("verify", "--class", "all", "--v", "2", "--oracle", "mc",
                    "--mc-n", "1000000", "--seed", "7", "--json")
        assert p.returncode == 0
        obj = json.loads(p.stdout)
        mc = [c for c in obj["checks"] if c["check"] == "monte_carlo_within_4se"]
        assert mc and mc[0]["ok"]
        assert abs(mc[0]["value"] - 0.2) <= 4.0 * math.sqrt(0.2 * 0.8 / 1e6)

    def test_oracle_class_mismatch_exit_4(self):
        p = run_cli("verify", "--class", "all", "--v", "2", "--oracle", "lp")
        assert p.returncode == 4

    def test_all_applicable_oracles_run(self):
        p = run_cli("verify", "--class", "symmetric", "--u", "3", "--v", "2",
                    "--mc-n", "20000", "--json")
        assert p.returncode == 0
        obj = json.loads(p.stdout)
        assert [r["oracle"] for r in obj["reports"]] == ["lp", "atoms"]
        names = {c["check"] for c in obj["checks"]}
        assert {"mean_zero", "variance_one", "symmetric",
                "tail_attains_bound", "monte_carlo_within_4se"} <= names


class TestSweepCommand:
    def test_one_sided_golden(self, tmp_path):
        out = tmp_path / "sweep.csv"
        p = run_cli("sweep", "--class", "all", "--v-from", "1", "--v-to", "3",
                    "--v-steps", "3", "--u-mode", "inf", "--out", str(out))
        assert p.returncode == 0
        golden_text("sweep_all_inf.csv", out.read_text(encoding="utf-8"))
        rows = out.read_text().strip().splitlines()
        assert rows[0] == "class,u,v,value,regime"
        values = [float(r.split(",")[3]) for r in rows[1:]]
        assert values == [0.5, 0.2, 0.1]

    def test_ratio_mode(self):
        p = run_cli("sweep", "--class", "unimodal", "--v-from", "2", "--v-to", "2",
                    "--v-steps", "1", "--u-mode", "ratio:1.2")
        assert p.returncode == 0
        line = p.stdout.strip().splitlines()[1]
        cls, u, v, value, regime = line.split(",")
        assert float(u) == pytest.approx(2.4)
        assert float(value) == pytest.approx((4.0 / 9.0) * 4.16 / 19.36, rel=1e-12)
        assert regime == "thm10.mid"

    def test_equal_mode_and_out_of_range_rows(self):
        p = run_cli("sweep", "--class", "sym-unimodal", "--v-from", "1", "--v-to", "2",
                    "--v-steps", "2")
        assert p.returncode == 0
        rows = p.stdout.strip().splitlines()[1:]
        first = rows[0].split(",")
        assert first[3] == "" and first[4] == "out-of-range"
        second = rows[1].split(",")
        assert float(second[3]) == pytest.approx(1.0 / 9.0, rel=1e-12)

    def test_bad_range_exit_2(self):
        p = run_cli("sweep", "--class", "all", "--v-from", "3", "--v-to", "1", "--v-steps", "2")
        assert p.returncode == 2

    def test_bad_ratio_exit_2(self):
        p = run_cli("sweep", "--class", "all", "--v-from", "1", "--v-to", "2",
                    "--v-steps", "2", "--u-mode", "ratio:abc")
        assert p.returncode == 2

    def test_unwritable_out_exit_5(self):
        p = run_cli("sweep", "--class", "all", "--v-from", "1", "--v-to", "2",
                    "--v-steps", "2", "--out", "/nonexistent/dir/x.csv")
        assert p.returncode == 5


class TestTable1Command:
    def test_golden_v2(self):
        p = run_cli("table1", "--v", "2")
        assert p.returncode == 0
        golden_text("table1_v2.txt", p.stdout)

    def test_cells_at_v2(self):
        p = run_cli("table1", "--v", "2", "--json")
        obj = json.loads(p.stdout)
        rows = {r["class"]: r for r in obj["rows"]}
        assert rows["all"]["one_sided"] == pytest.approx(0.2)
        assert rows["all"]["absolute"] == pytest.approx(0.25)
        assert rows["all"]["two_sided"] == pytest.approx(0.25)
        su = rows["symmetric unimodal"]
        assert su["one_sided"] == pytest.approx(1.0 / 18.0)
        assert su["absolute"] == pytest.approx(1.0 / 9.0)
        assert su["two_sided"] == pytest.approx(1.0 / 9.0)

    def test_auc_value(self):
        p = run_cli("table1", "--v", repr(2.0 * SQRT3), "--json")
        obj = json.loads(p.stdout)
        rows = {r["class"]: r for r in obj["rows"]}
        assert rows["unimodal"]["one_sided"] == pytest.approx(4.0 / 117.0, rel=1e-15)

    def test_range_gates_at_v1(self):
        p = run_cli("table1", "--v", "1")
        assert p.returncode == 0
        golden_text("table1_v1.txt", p.stdout)
        assert "n/a(range)" in p.stdout

    def test_asymmetric_third_column(self):
        p = run_cli("table1", "--v", "2", "--u", "3", "--json")
        rows = {r["class"]: r for r in json.loads(p.stdout)["rows"]}
        assert rows["all"]["two_sided"] == pytest.approx(0.2)
        assert rows["symmetric"]["two_sided"] == pytest.approx(0.125)
        assert rows["unimodal"]["two_sided"] == pytest.approx(4.0 / 45.0)
        assert rows["symmetric unimodal"]["two_sided"] == pytest.approx(16.0 / 225.0)
        # the one-sided and absolute columns depend on v only
        assert rows["all"]["one_sided"] == pytest.approx(0.2)


class TestExtremalCommand:
    def test_json_golden(self):
        p = run_cli("extremal", "--class", "all", "--one-sided", "--v", "2", "--emit", "json")
        assert p.returncode == 0
        golden_text("extremal_all_onesided_v2.json", p.stdout)
        obj = json.loads(p.stdout)
        assert obj == {"atoms": [{"x": 2.0, "mass": 0.2}, {"x": -0.5, "mass": 0.8}],
                       "segments": []}

    def test_json_round_trip_preserves_functionals(self):
        p = run_cli("extremal", "--class", "unimodal", "--u", "2.2", "--v", "2", "--emit", "json")
        d = from_json_obj(json.loads(p.stdout))
        from tailbounds import DistributionClass, IntervalSpec, extremal_for

        w = extremal_for(DistributionClass.UNIMODAL, IntervalSpec.two_sided(2.2, 2.0))
        assert mixture_tail(d, 2.2, 2.0) == mixture_tail(w.distribution, 2.2, 2.0)
        assert mixture_mean(d) == mixture_mean(w.distribution)

    def test_samples_reproducible(self):
        a = run_cli("extremal", "--class", "unimodal", "--one-sided", "--v", "2",
                    "--emit", "samples", "--n", "50", "--seed", "11")
        b = run_cli("extremal", "--class", "unimodal", "--one-sided", "--v", "2",
                    "--emit", "samples", "--n", "50", "--seed", "11")
        assert a.returncode == 0 and a.stdout == b.stdout
        assert len(a.stdout.strip().splitlines()) == 50


class TestConfigAndDigits:
    def test_digits_flag(self):
        p = run_cli("--digits", "6", "bound", "--class", "all", "--one-sided",
                    "--v", "3", "--json")
        assert json.loads(p.stdout)["value"] == 0.1

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"digits": 5}), encoding="utf-8")
        p = run_cli("--config", str(cfg), "bound", "--class", "unimodal",
                    "--u", "4", "--v", "2", "--json")
        assert json.loads(p.stdout)["value"] == pytest.approx(0.088889, rel=1e-6)

    def test_unknown_config_key_exit_5(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"bogus": 1}), encoding="utf-8")
        p = run_cli("--config", str(cfg), "bound", "--class", "all",
                    "--one-sided", "--v", "1")
        assert p.returncode == 5

    def test_config_env_var(self, tmp_path, monkeypatch, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"digits": 3}), encoding="utf-8")
        monkeypatch.setenv("TAILBOUNDS_CONFIG", str(cfg))
        assert cli.main(["bound", "--class", "all", "--one-sided",
                         "--v", "3", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["value"] == 0.1


class TestExitCodeMapping:
    """Codes 6 and 7 cannot be reached with correct formulas, so the
    mapping is exercised by substituting failing collaborators."""

    def test_no_witness_exit_7(self, monkeypatch):
        def boom(*a, **k):
            raise NoWitness("no attaining distribution")

        monkeypatch.setattr(cli, "extremal_for", boom)
        code = cli.main(["extremal", "--class", "all", "--one-sided", "--v", "2"])
        assert code == 7

    def test_oracle_violation_exit_6(self, monkeypatch):
        def bad_oracle(u, v):
            return OracleReport("lp", None, None, 0.9, (0.0, 0.0), 0.125)

        monkeypatch.setattr(cli, "symmetric_lp_oracle", bad_oracle)
        code = cli.main(["verify", "--class", "symmetric", "--u", "3", "--v", "2",
                         "--oracle", "lp"])
        assert code == 6

    def test_witness_check_failure_exit_6(self, monkeypatch, capsys):
        monkeypatch.setattr(cli, "_witness_checks",
                            lambda w, cfg: [("mean_zero", False, 0.5)])
        code = cli.main(["verify", "--class", "all", "--one-sided", "--v", "2",
                         "--oracle", "mc", "--mc-n", "1000"])
        assert code == 6
