import json
import subprocess
import sys

import numpy as np
import pytest

from stability_lab.linalg import dump_matrix
from stability_lab.zoo import voiculescu


def run_cli(*argv, env=None):
    return subprocess.run(
        [sys.executable, "-m", "stability_lab", *argv],
        capture_output=True,
        text=True,
        env=env,
    )


class TestWind:
    def test_family_p2(self):
        proc = run_cli("wind", "--family", "p2", "--n", "10")
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(proc.stdout)
        assert payload["wind"] == -2
        assert payload["method"] == "spectral"

    def test_family_surface(self):
        proc = run_cli("wind", "--family", "surface", "--g", "1", "--n", "16", "--method", "sampled")
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["wind"] == 1

    def test_usage_error_on_bad_parameters(self):
        proc = run_cli("wind", "--family", "bs_mm", "--m", "2", "--n", "3")
        assert proc.returncode == 1

    def test_math_error_on_singular_curve(self):
        proc = run_cli("wind", "--family", "p6", "--n", "4")
        assert proc.returncode == 2
        assert "SingularCurveError" in proc.stderr

    def test_presentation_file_source(self, tmp_path):
        pres = tmp_path / "pres.txt"
        pres.write_text("gens: a b\nrel: [a,b]\n", encoding="utf-8")
        om, sh = voiculescu(9)
        ma = tmp_path / "a.cmatrix"
        mb = tmp_path / "b.cmatrix"
        ma.write_text(dump_matrix(om), encoding="utf-8")
        mb.write_text(dump_matrix(sh), encoding="utf-8")
        proc = run_cli(
            "wind", "--presentation", str(pres), "--relator", "0",
            "--matrices", str(ma), str(mb),
        )
        assert proc.returncode == 0, proc.stderr
        assert json.loads(proc.stdout)["wind"] == 1

    def test_unknown_flag_is_usage_error(self):
        proc = run_cli("wind", "--no-such-flag")
        assert proc.returncode == 1


class TestCertify:
    def test_p2_thirteen(self):
        proc = run_cli("certify", "--family", "p2", "--n", "13", "--cross-check")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["verdict"] == "certified_far"
        assert payload["radius_num"] == 1 and payload["radius_den"] == 12
        assert payload["method"] == "spectral+sampled"

    def test_p2_twelve(self):
        proc = run_cli("certify", "--family", "p2", "--n", "12")
        assert json.loads(proc.stdout)["verdict"] == "inconclusive"

    def test_identity_family(self):
        proc = run_cli("certify", "--family", "identity", "--n", "6")
        payload = json.loads(proc.stdout)
        assert payload["verdict"] == "inconclusive"
        assert payload["wind"] == 0


class TestCrystal:
    def test_text_table(self):
        proc = run_cli("crystal")
        assert proc.returncode == 0
        lines = [ln for ln in proc.stdout.splitlines() if ln and not ln.startswith(("name", "-"))]
        assert len(lines) == 17
        assert sum("stable_certified" in ln for ln in lines) == 12

    def test_json_table(self):
        proc = run_cli("crystal", "--format", "json")
        payload = json.loads(proc.stdout)
        assert len(payload) == 17
        certified = {row["name"] for row in payload if row["verdict"] == "stable_certified"}
        assert len(certified) == 12
        pg = next(row for row in payload if row["name"] == "pg")
        assert pg["torsion"]["k1_a1"] == [2]
        assert pg["cond_i"] is True and pg["cond_ii"] is True


class TestSweep:
    def test_csv_shape_and_exit(self):
        proc = run_cli("sweep", "--family", "p2", "--n-start", "3", "--n-end", "6")
        assert proc.returncode == 0
        lines = proc.stdout.strip().splitlines()
        assert lines[0] == "# stability-lab v1"
        assert lines[1].startswith("family,n,dim,defect,wind_spectral,wind_sampled,verdict,gap,error")
        assert len(lines) == 2 + 4

    def test_partial_failure_exit_three(self):
        proc = run_cli("sweep", "--family", "p6", "--n-start", "3", "--n-end", "5")
        assert proc.returncode == 3
        rows = proc.stdout.strip().splitlines()[2:]
        assert "SingularCurveError" in rows[1]  # n = 4
        assert rows[0].split(",")[4] == "6"  # n = 3 winds +6
        assert rows[2].split(",")[4] == "-12"

    def test_json_format(self):
        proc = run_cli("sweep", "--family", "nilpotent", "--M", "1",
                       "--n-start", "3", "--n-end", "9", "--n-step", "2",
                       "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["schema"] == "stability-lab v1"
        assert [row["wind_spectral"] for row in payload["rows"]] == [-1, -1, -1, -1]
        for row in payload["rows"]:
            assert row["defect"] == pytest.approx(2 * np.sin(np.pi / row["n"]), abs=1e-12)

    def test_bs23_gap_column(self):
        proc = run_cli("sweep", "--family", "bs23", "--n-start", "2", "--n-end", "6",
                       "--format", "json")
        assert proc.returncode == 0
        rows = json.loads(proc.stdout)["rows"]
        assert all(row["gap"] >= 1.732050 for row in rows)
        defects = [row["defect"] for row in rows]
        assert defects == sorted(defects, reverse=True)
        assert all(row["wind_spectral"] is None for row in rows)

    def test_methods_subset(self):
        proc = run_cli("sweep", "--family", "p3", "--n-start", "3", "--n-end", "4",
                       "--methods", "spectral", "--format", "json")
        rows = json.loads(proc.stdout)["rows"]
        assert all(row["wind_sampled"] is None for row in rows)
        assert all(row["wind_spectral"] == -3 for row in rows)

    def test_config_file(self, tmp_path):
        conf = tmp_path / "sweep.cfg"
        conf.write_text(
            "[sweep]\nfamily = p2\nn_start = 3\nn_end = 5\nformat = json\n",
            encoding="utf-8",
        )
        proc = run_cli("sweep", "--config", str(conf))
        assert proc.returncode == 0, proc.stderr
        rows = json.loads(proc.stdout)["rows"]
        assert [row["n"] for row in rows] == [3, 4, 5]

    def test_flags_override_config(self, tmp_path):
        conf = tmp_path / "sweep.cfg"
        conf.write_text("family = p2\nn_start = 3\nn_end = 20\n", encoding="utf-8")
        proc = run_cli("sweep", "--config", str(conf), "--n-end", "4")
        assert proc.returncode == 0
        assert len(proc.stdout.strip().splitlines()) == 2 + 2

    def test_output_file_and_parallel_identical(self, tmp_path):
        # serial vs 8-way pool: byte-identical files
        out1 = tmp_path / "serial.csv"
        out8 = tmp_path / "parallel.csv"
        proc = run_cli("sweep", "--family", "p2", "--n-start", "3", "--n-end", "14",
                       "--output", str(out1), "--parallelism", "1")
        assert proc.returncode == 0
        proc = run_cli("sweep", "--family", "p2", "--n-start", "3", "--n-end", "14",
                       "--output", str(out8), "--parallelism", "8")
        assert proc.returncode == 0
        assert out1.read_bytes() == out8.read_bytes()

    def test_empty_range_usage_error(self):
        proc = run_cli("sweep", "--family", "p2", "--n-start", "5", "--n-end", "4")
        assert proc.returncode == 1


class TestInduce:
    def test_exact_input_zero_defect(self, tmp_path):
        om, _ = voiculescu(6)
        rep = tmp_path / "rep.txt"
        rep.write_text("gens: h\n" + dump_matrix(om), encoding="utf-8")
        action = tmp_path / "action.txt"
        action.write_text("index: 2\nact: t 1 -> 2 ; e\nact: t 2 -> 1 ; h\n", encoding="utf-8")
        proc = run_cli("induce", "--rep", str(rep), "--action", str(action),
                       "--g", "t", "--gp", "t")
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(proc.stdout)
        assert payload["index"] == 2 and payload["dim"] == 12
        assert payload["defect"] < 1e-10

    def test_missing_file_usage_error(self, tmp_path):
        proc = run_cli("induce", "--rep", str(tmp_path / "nope.txt"),
                       "--action", str(tmp_path / "nope2.txt"), "--g", "t", "--gp", "t")
        assert proc.returncode == 1


class TestParse:
    def test_report(self, tmp_path):
        pres = tmp_path / "pres.txt"
        pres.write_text("gens: a b\nrel: [a,b]\nrel: a b^2 a^-1 b^-3\n", encoding="utf-8")
        proc = run_cli("parse", str(pres))
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["generators"] == ["a", "b"]
        first, second = payload["relators"]
        assert first["homogeneous"] is True and first["length"] == 4
        assert second["homogeneous"] is False
        assert second["exponent_sums"] == {"a": 0, "b": -1}

    def test_syntax_error_exit_one(self, tmp_path):
        pres = tmp_path / "pres.txt"
        pres.write_text("gens: a\nrel: a q\n", encoding="utf-8")
        proc = run_cli("parse", str(pres))
        assert proc.returncode == 1


class TestDeterminism:
    def test_repeated_runs_byte_identical(self):
        a = run_cli("certify", "--family", "p4", "--n", "9", "--cross-check")
        b = run_cli("certify", "--family", "p4", "--n", "9", "--cross-check")
        assert a.stdout == b.stdout

    def test_float_formatting_17_digits(self):
        proc = run_cli("certify", "--family", "p2", "--n", "13")
        defect = json.loads(proc.stdout)["defect"]
        assert defect == pytest.approx(2 * np.sin(np.pi / 13), abs=1e-15)
        assert "0.47863132857511603" in proc.stdout
