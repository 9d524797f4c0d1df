"""Command-line interface: outputs, exit codes, manifests, determinism."""

import math

import pytest

from spacsim.cli import main
from spacsim.io import csv_round_trips, load_manifest, read_csv

PRESET_PHI = repr(7 * math.pi / 9)


def run(*argv) -> int:
    return main(list(argv))


def column(header, rows, name):
    idx = header.index(name)
    return [row[idx] for row in rows]


class TestFigCommands:
    def test_fig1a_zero_coupling_baseline(self, tmp_path):
        out = tmp_path / "fig1a.csv"
        assert run("fig1a", "--s-max", "0", "--out", str(out)) == 0
        header, rows = read_csv(out)
        assert header[:2] == ["phi", "s"]
        assert len(rows) == 4  # one row per default angle
        # initial state carries no ordinary squeezing at unit amplitude
        preset_row = next(r for r in rows if abs(r[0] - 7 * math.pi / 9) < 1e-12)
        assert preset_row[header.index("s_os")] >= -1e-9
        assert preset_row[header.index("fidelity")] == pytest.approx(1.0, abs=1e-12)
        assert csv_round_trips(out)
        assert load_manifest(str(out) + ".manifest")["command"] == "fig1a"

    def test_fig1b_sweeps_amplitude(self, tmp_path):
        out = tmp_path / "fig1b.csv"
        assert run("fig1b", "--r-max", "1", "--r-step", "0.5", "--phis", PRESET_PHI, "--out", str(out)) == 0
        header, rows = read_csv(out)
        assert header[1] == "r"
        assert [r[1] for r in rows] == [0.0, 0.5, 1.0]

    def test_fig3_fidelity_columns_decrease_in_coupling(self, tmp_path):
        out = tmp_path / "fig3.csv"
        assert run("fig3", "--r-step", "0.25", "--out", str(out)) == 0
        header, rows = read_csv(out)
        assert header == ["r", "fidelity_s0.5", "fidelity_s1.0", "fidelity_s2.0", "fidelity_s3.0"]
        at_r1 = next(r for r in rows if r[0] == 1.0)
        assert at_r1[1] > at_r1[2] > at_r1[3] > at_r1[4]
        assert csv_round_trips(out)


class TestWignerCommand:
    def test_single_photon_panel_dip(self, tmp_path):
        out = tmp_path / "w00.csv"
        assert run(
            "wigner", "--r", "0", "--s", "0",
            "--x-min", "-2", "--x-max", "2", "--p-min", "-2", "--p-max", "2",
            "--grid-step", "0.05", "--out", str(out),
        ) == 0
        header, rows = read_csv(out)
        assert header == ["x", "p", "w"]
        lowest = min(rows, key=lambda row: row[2])
        assert lowest[2] == pytest.approx(-2 / math.pi, abs=1e-6)
        assert (lowest[0], lowest[1]) == (0.0, 0.0)
        assert csv_round_trips(out)

    def test_displaced_panel_peak_away_from_origin(self, tmp_path):
        out = tmp_path / "w10.csv"
        assert run(
            "wigner", "--r", "1", "--s", "0",
            "--x-min", "-2", "--x-max", "2", "--p-min", "-2", "--p-max", "2",
            "--grid-step", "0.1", "--out", str(out),
        ) == 0
        _, rows = read_csv(out)
        x, p, _ = max(rows, key=lambda row: row[2])
        peak = complex(x, p)
        alpha = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
        # the peak sits just outside alpha along the alpha direction
        assert abs(peak) > 0.5
        assert abs(peak - alpha) < 1.0
        assert abs(math.atan2(p, x) - math.pi / 4) < 0.2

    def test_strong_coupling_panel_shows_interference(self, tmp_path):
        out = tmp_path / "w12.csv"
        assert run(
            "wigner", "--r", "1", "--s", "2",
            "--x-min", "-3", "--x-max", "3", "--p-min", "-3", "--p-max", "3",
            "--grid-step", "0.1", "--out", str(out),
        ) == 0
        _, rows = read_csv(out)
        alpha = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
        fringe = [
            row for row in rows
            if row[2] < -0.01 and abs(complex(row[0], row[1]) - alpha / 2) > 1.0
        ]
        assert fringe, "expected negative interference away from the initial dip"

    def test_printed_backend(self, tmp_path):
        out = tmp_path / "wp.csv"
        assert run(
            "wigner", "--backend", "printed", "--r", "0", "--s", "0",
            "--x-min", "-1", "--x-max", "1", "--p-min", "-1", "--p-max", "1",
            "--grid-step", "0.5", "--out", str(out),
        ) == 0
        _, rows = read_csv(out)
        centre = next(r for r in rows if r[0] == 0.0 and r[1] == 0.0)
        assert centre[2] == pytest.approx(-4 / math.pi, abs=1e-12)


class TestAuditCommand:
    def test_summary_and_forced_points(self, tmp_path, capsys):
        out = tmp_path / "audit.csv"
        assert run(
            "audit", "--r-values", "0,1", "--s-values", "0,0.5",
            "--wigner-step", "1.5", "--out", str(out),
        ) == 0
        printed = capsys.readouterr().out
        for q in ("n_mean", "m_a", "m_a2", "m_a2d2", "m_a4", "kappa_sq", "wigner"):
            assert f"quantity={q} " in printed
        header, rows = read_csv(out)
        k_rows = [r for r in rows if r[0] == "kappa_sq" and r[header.index("s")] == 0.0]
        assert k_rows
        for row in k_rows:
            ratio = row[header.index("printed_re")] / row[header.index("oracle_re")]
            assert ratio == pytest.approx(1.0, abs=1e-6)
        assert csv_round_trips(out)
        summary = load_manifest(str(out) + ".manifest")["summary"]
        assert set(summary) == {"n_mean", "m_a", "m_a2", "m_a2d2", "m_a4", "kappa_sq", "wigner"}

    def test_quantity_subset(self, tmp_path, capsys):
        out = tmp_path / "audit_w.csv"
        assert run(
            "audit", "--quantities", "wigner", "--r-values", "1", "--s-values", "0.5",
            "--wigner-step", "1.0", "--out", str(out),
        ) == 0
        _, rows = read_csv(out)
        assert all(r[0] == "wigner" for r in rows)


class TestPointCommand:
    def parse(self, text):
        pairs = dict(line.split("=", 1) for line in text.strip().splitlines())
        return pairs

    def test_zero_coupling_fidelity(self, capsys):
        assert run("point", "--s", "0") == 0
        values = self.parse(capsys.readouterr().out)
        assert float(values["fidelity_to_initial"]) == 1.0

    def test_single_photon_limit(self, capsys):
        assert run("point", "--r", "0", "--s", "0") == 0
        values = self.parse(capsys.readouterr().out)
        assert float(values["n_mean"]) == pytest.approx(1.0, abs=1e-12)

    def test_preset_has_negative_ass_witness(self, capsys):
        assert run("point") == 0
        values = self.parse(capsys.readouterr().out)
        assert float(values["s_ass"]) < 0

    def test_env_var_steers_truncation(self, capsys, monkeypatch):
        monkeypatch.setenv("SPACS_TRUNC", "96")
        assert run("point", "--s", "0") == 0
        values = self.parse(capsys.readouterr().out)
        assert values["trunc"] == "96"


class TestExitCodes:
    def test_unknown_flag(self, capsys):
        assert run("fig1a", "--bogus") == 2

    def test_degenerate_postselection(self, capsys):
        assert run("point", "--phi", repr(math.pi)) == 2

    def test_negative_amplitude(self, capsys):
        assert run("point", "--r", "-1") == 2

    def test_tiny_truncation_is_numerical_failure(self, tmp_path, capsys):
        out = tmp_path / "never.csv"
        code = run("fig1a", "--r", "2", "--trunc", "16", "--s-max", "0", "--out", str(out))
        assert code == 3
        assert not out.exists()
        message = capsys.readouterr().err
        assert "phi=" in message and "s=" in message  # names the failing row


class TestDeterminism:
    def test_sweep_serial_vs_parallel_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run("fig1a", "--s-max", "1", "--s-step", "0.05", "--workers", "1", "--out", str(a)) == 0
        assert run("fig1a", "--s-max", "1", "--s-step", "0.05", "--workers", "4", "--out", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_grid_serial_vs_parallel_bytes(self, tmp_path):
        a, b = tmp_path / "wa.csv", tmp_path / "wb.csv"
        common = ["wigner", "--x-min", "-2", "--x-max", "2", "--p-min", "-2", "--p-max", "2", "--grid-step", "0.1"]
        assert run(*common, "--workers", "1", "--out", str(a)) == 0
        assert run(*common, "--workers", "3", "--out", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_rerun_from_manifest_reproduces_bytes(self, tmp_path):
        first = tmp_path / "first.csv"
        again = tmp_path / "again.csv"
        assert run("fig1b", "--r-max", "0.5", "--r-step", "0.25", "--out", str(first)) == 0
        assert run("rerun", str(first) + ".manifest", "--out", str(again)) == 0
        assert first.read_bytes() == again.read_bytes()
