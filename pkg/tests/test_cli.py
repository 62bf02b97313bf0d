"""End-to-end tests of the command-line interface.

Each command runs through ``main(argv)`` against a temp directory; outputs
are parsed back and checked, including manifest round-trips.
"""

import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

from qtiming.cli import main

SIGMA_PHI = 3.7e-4  # rad/fs, equals the CLI's 3.7e11 rad/s input


def run(tmp_path, *argv):
    return main([*argv, "--out-dir", str(tmp_path)])


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return header, rows


class TestWidth:
    def test_transition_width_is_sqrt_two_of_asymptote(self, tmp_path, capsys):
        # At the exact (real-valued) transition the ratio is sqrt(2) to
        # float precision; rounding N to the nearest integer costs ~3e-5.
        code = run(tmp_path, "width", "--sigma-phi", "3.7e11",
                   "--n", "7304.601899196491", "--B", "500", "--json")
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        ratio = payload["sigma_quantum_fs"] / payload["asymptotic_width_fs"]
        assert ratio == pytest.approx(math.sqrt(2.0), rel=1e-9)

        code = run(tmp_path, "width", "--sigma-phi", "3.7e11", "--n", "7305",
                   "--B", "500", "--json")
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        ratio = payload["sigma_quantum_fs"] / payload["asymptotic_width_fs"]
        assert ratio == pytest.approx(math.sqrt(2.0), rel=1e-4)

    def test_single_photon_no_dispersion_gives_packet_width(self, tmp_path, capsys):
        code = run(tmp_path, "width", "--sigma-phi", "3.7e11", "--n", "1", "--B", "0", "--json")
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["sigma_quantum_fs"] == pytest.approx(
            1.0 / (math.sqrt(2.0) * SIGMA_PHI), rel=1e-12
        )

    def test_correlated_state_reports_sum_variable(self, tmp_path, capsys):
        code = run(tmp_path, "width", "--sigma-phi", "3.7e11", "--n", "4",
                   "--B", "500", "--state", "corr", "--json")
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["variable"] == "sum"

    def test_conflicting_media_flags_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            run(tmp_path, "width", "--sigma-phi", "3.7e11", "--n", "1",
                "--B", "500", "--path1", "silica:1cm")
        assert excinfo.value.code == 1

    def test_missing_media_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            run(tmp_path, "width", "--sigma-phi", "3.7e11", "--n", "1")
        assert excinfo.value.code == 1

    def test_writes_manifest_and_report(self, tmp_path, capsys):
        run(tmp_path, "width", "--sigma-phi", "3.7e11", "--n", "2", "--B", "100")
        manifest = json.loads((tmp_path / "width_manifest.json").read_text())
        assert manifest["schema"] == "qtiming.run-manifest/1"
        assert manifest["parameters"]["n"] == 2.0
        assert all(Path(p).exists() for p in manifest["outputs"])


class TestScan:
    def test_single_point_range(self, tmp_path):
        assert run(tmp_path, "scan", "--sigma-phi", "3.7e11", "--B", "0",
                   "--n-min", "5", "--n-max", "5", "--n-points", "1") == 0
        header, rows = read_csv(tmp_path / "scan.csv")
        assert header == ["N", "p_quantum", "p_classical"]
        assert len(rows) == 1
        assert rows[0][0] == 5.0

    def test_dispersion_free_columns_follow_power_laws(self, tmp_path):
        assert run(tmp_path, "scan", "--sigma-phi", "3.7e11", "--B", "0",
                   "--n-min", "1", "--n-max", "1e4", "--n-points", "5") == 0
        _, rows = read_csv(tmp_path / "scan.csv")
        data = np.array(rows)
        n, p_q, p_c = data.T
        assert np.allclose(p_q, p_q[0] / n, rtol=1e-12)          # 1/N
        assert np.allclose(p_c, p_c[0] / np.sqrt(n), rtol=1e-12)  # 1/sqrt(N)
        assert np.all(p_q[n > 1] < p_c[n > 1])

    def test_preset_pins_parameters(self, tmp_path):
        assert run(tmp_path, "scan", "--preset", "fig2") == 0
        _, rows = read_csv(tmp_path / "scan.csv")
        assert len(rows) == 121
        assert rows[0][0] == 1.0
        assert rows[-1][0] == pytest.approx(1e6)
        manifest = json.loads((tmp_path / "scan_manifest.json").read_text())
        assert manifest["parameters"]["sigma_phi_rad_per_s"] == 3.7e11
        assert manifest["parameters"]["path1"] == ["silica:400cm"]

    def test_empty_range_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            run(tmp_path, "scan", "--sigma-phi", "3.7e11", "--B", "0",
                "--n-min", "10", "--n-max", "1")
        assert excinfo.value.code == 1

    def test_rerun_from_manifest_parameters_is_byte_identical(self, tmp_path):
        run(tmp_path, "scan", "--preset", "fig2")
        first = (tmp_path / "scan.csv").read_bytes()
        params = json.loads((tmp_path / "scan_manifest.json").read_text())["parameters"]
        argv = ["scan", "--sigma-phi", repr(params["sigma_phi_rad_per_s"]),
                "--n-min", repr(params["n_min"]), "--n-max", repr(params["n_max"]),
                "--n-points", str(params["n_points"]), "--out", params["out"]]
        for segment in params["path1"]:
            argv += ["--path1", segment]
        for segment in params["path2"]:
            argv += ["--path2", segment]
        second_dir = tmp_path / "again"
        assert main([*argv, "--out-dir", str(second_dir)]) == 0
        assert (second_dir / "scan.csv").read_bytes() == first


class TestSurface:
    def test_preset_grid_shape_and_clipping(self, tmp_path):
        assert run(tmp_path, "surface", "--preset", "fig3") == 0
        header, rows = read_csv(tmp_path / "surface.csv")
        assert header == ["N", "x_cm", "R", "R_raw"]
        assert len(rows) == 33 * 41
        data = np.array(rows)
        clipped, raw = data[:, 2], data[:, 3]
        assert np.all(clipped >= 1.0)
        below = raw < 1.0
        assert np.all(clipped[below] == 1.0)
        assert np.all(clipped[~below] == raw[~below])

    def test_zero_distance_column_is_quantum_advantage(self, tmp_path):
        assert run(tmp_path, "surface", "--sigma-phi", "3.7e11", "--beta", "250",
                   "--n-min", "1", "--n-max", "100", "--n-points", "3",
                   "--x-min", "0", "--x-max", "10", "--x-points", "2") == 0
        _, rows = read_csv(tmp_path / "surface.csv")
        for n, x, _, raw in rows:
            if x == 0.0:
                assert raw == pytest.approx(1.0 / math.sqrt(2.0 * n), rel=1e-12)

    def test_clip_choices_differ_only_below_unity(self, tmp_path):
        args = ["surface", "--sigma-phi", "3.7e11", "--beta", "250",
                "--n-min", "1", "--n-max", "1e4", "--n-points", "5",
                "--x-min", "0", "--x-max", "200", "--x-points", "5"]
        run(tmp_path, *args, "--out", "off.csv")
        run(tmp_path, *args, "--out", "on.csv", "--clip", "unity")
        _, off_rows = read_csv(tmp_path / "off.csv")
        _, on_rows = read_csv(tmp_path / "on.csv")
        for off, on in zip(off_rows, on_rows):
            assert off[3] == on[3]
            if off[3] >= 1.0:
                assert off[2] == on[2]
            else:
                assert on[2] == 1.0


class TestTransition:
    def test_one_centimetre_preset(self, tmp_path, capsys):
        assert run(tmp_path, "transition", "--preset", "ntrans-1cm", "--json") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["transition_photon_number"] == pytest.approx(7.3e3, rel=0.02)
        assert payload["equivalent_silica_total_cm"] == pytest.approx(2.0)

    def test_explicit_gdd(self, tmp_path, capsys):
        assert run(tmp_path, "transition", "--sigma-phi", "3.7e11",
                   "--B", "36523", "--json") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["transition_photon_number"] == pytest.approx(100.0, rel=1e-4)

    def test_cancelled_dispersion_exits_with_domain_error(self, tmp_path, capsys):
        code = run(tmp_path, "transition", "--sigma-phi", "3.7e11", "--B", "0")
        assert code == 2
        assert "fully cancelled" in capsys.readouterr().err


class TestMedia:
    def test_edlen_air(self, tmp_path, capsys):
        assert run(tmp_path, "media", "--material", "air", "--formula", "edlen",
                   "--wavelength", "800", "--temperature", "15", "--json") == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["beta_fs2_per_cm"] / 0.106 - 1.0) < 0.05
        assert payload["n_minus_1"] == pytest.approx(2.7504e-4, rel=1e-3)

    def test_owens_air_with_humidity(self, tmp_path, capsys):
        assert run(tmp_path, "media", "--material", "air", "--formula", "owens",
                   "--rh", "0.2", "--json") == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["beta_fs2_per_cm"] / 0.103 - 1.0) < 0.05

    def test_silica_from_catalog(self, tmp_path, capsys):
        assert run(tmp_path, "media", "--material", "silica", "--json") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["beta_fs2_per_cm"] == 250.0

    def test_out_of_range_wavelength_is_domain_error(self, tmp_path):
        assert run(tmp_path, "media", "--material", "air", "--wavelength", "200") == 2

    def test_unknown_material_is_domain_error(self, tmp_path):
        assert run(tmp_path, "media", "--material", "diamond") == 2


class TestVerify:
    def test_montecarlo_suite_passes_and_is_deterministic(self, tmp_path, capsys):
        assert run(tmp_path, "verify", "--suite", "montecarlo", "--seed", "42") == 0
        first = json.loads((tmp_path / "verification_report.json").read_text())
        assert run(tmp_path, "verify", "--suite", "montecarlo", "--seed", "42") == 0
        second = json.loads((tmp_path / "verification_report.json").read_text())
        assert first["cases"] == second["cases"]
        assert first["passed"] is True

    def test_tiny_budget_surfaces_convergence_failure(self, tmp_path, capsys):
        code = run(tmp_path, "verify", "--suite", "quadrature", "--max-points", "120")
        assert code == 3
        report = json.loads((tmp_path / "verification_report.json").read_text())
        assert report["passed"] is False
        assert any("error" in case for case in report["cases"])

    def test_report_lines_printed(self, tmp_path, capsys):
        run(tmp_path, "verify", "--suite", "montecarlo", "--seed", "1")
        out = capsys.readouterr().out
        assert "[pass]" in out


class TestManifests:
    def test_manifest_matches_schema(self, tmp_path):
        import jsonschema
        from importlib import resources

        run(tmp_path, "scan", "--sigma-phi", "3.7e11", "--B", "0",
            "--n-min", "1", "--n-max", "10", "--n-points", "2")
        manifest = json.loads((tmp_path / "scan_manifest.json").read_text())
        schema = json.loads(
            (resources.files("qtiming") / "data" / "manifest.schema.json").read_text()
        )
        jsonschema.validate(manifest, schema)

    def test_out_dir_environment_variable(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QTIMING_OUT_DIR", str(tmp_path))
        assert main(["scan", "--sigma-phi", "3.7e11", "--B", "0",
                     "--n-min", "1", "--n-max", "10", "--n-points", "2"]) == 0
        assert (tmp_path / "scan.csv").exists()

    def test_csv_is_crlf_terminated(self, tmp_path):
        run(tmp_path, "scan", "--sigma-phi", "3.7e11", "--B", "0",
            "--n-min", "1", "--n-max", "10", "--n-points", "2")
        raw = (tmp_path / "scan.csv").read_bytes()
        assert b"\r\n" in raw
