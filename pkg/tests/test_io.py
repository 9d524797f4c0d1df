"""Serialisation: round-trip formatting, atomicity, grid type, manifests."""

import json
import math

import numpy as np
import pytest

from spacsim.io import (
    WignerGrid,
    csv_round_trips,
    fmt,
    load_manifest,
    manifest_argv,
    manifest_path,
    read_csv,
    write_csv,
    write_manifest,
)


class TestFormatting:
    @pytest.mark.parametrize("value", [0.0, 1.0, 0.1, 2 / 3, math.pi, 1e-300, -4.0, float("nan")])
    def test_shortest_round_trip(self, value):
        text = fmt(value)
        assert len(text.replace("-", "").replace(".", "").replace("e", "")) <= 18
        back = float(text)
        assert back == value or (math.isnan(back) and math.isnan(value))


class TestCsv:
    def test_write_read_round_trip(self, tmp_path):
        path = tmp_path / "table.csv"
        rows = [[0.1, 2 / 3, float("nan")], [1e-17, -math.pi, 4.0]]
        write_csv(path, ["a", "b", "c"], rows)
        header, back = read_csv(path)
        assert header == ["a", "b", "c"]
        assert back[1] == rows[1]
        assert math.isnan(back[0][2])
        assert csv_round_trips(path)

    def test_line_endings_and_encoding(self, tmp_path):
        path = tmp_path / "t.csv"
        write_csv(path, ["x"], [[1.5]])
        raw = path.read_bytes()
        assert b"\r" not in raw
        assert raw == b"x\n1.5\n"

    def test_string_labels_survive(self, tmp_path):
        path = tmp_path / "t.csv"
        write_csv(path, ["name", "v"], [["m_a", 0.25]])
        _, rows = read_csv(path)
        assert rows[0] == ["m_a", 0.25]
        assert csv_round_trips(path)


class TestWignerGrid:
    def test_shape_consistency_enforced(self):
        with pytest.raises(ValueError):
            WignerGrid(x_min=0, x_max=1, p_min=0, p_max=1, step=0.5, values=np.zeros((2, 3)))

    def test_rows_orientation(self):
        values = np.arange(9.0).reshape(3, 3)
        grid = WignerGrid(x_min=-1, x_max=1, p_min=-1, p_max=1, step=1.0, values=values)
        rows = grid.rows()
        assert rows[0] == [-1.0, -1.0, 0.0]
        assert rows[1] == [-1.0, 0.0, 1.0]   # p varies fastest
        assert rows[3] == [0.0, -1.0, 3.0]

    def test_bound_check(self):
        inside = np.full((2, 2), 0.6)
        outside = np.full((2, 2), 0.7)
        grid = WignerGrid(x_min=0, x_max=1, p_min=0, p_max=1, step=1.0, values=inside)
        assert grid.within_bounds()
        grid = WignerGrid(x_min=0, x_max=1, p_min=0, p_max=1, step=1.0, values=outside)
        assert not grid.within_bounds()


class TestManifest:
    def test_round_trip_and_argv(self, tmp_path):
        out = tmp_path / "run.csv"
        config = {"r": 1.0, "s_max": 0.5, "phis": [0.5, 2 / 3], "trunc": 128, "backend": "oracle"}
        write_manifest(out, "fig1a", config, "0.1.0")
        manifest = load_manifest(manifest_path(out))
        assert manifest["command"] == "fig1a"
        assert manifest["config"] == config
        argv = manifest_argv(manifest, out_override=str(tmp_path / "again.csv"))
        assert argv[0] == "fig1a"
        assert "--phis" in argv and "0.5,0.6666666666666666" in argv
        assert argv[-2:] == ["--out", str(tmp_path / "again.csv")]

    def test_manifest_is_json_with_timestamp(self, tmp_path):
        out = tmp_path / "run.csv"
        write_manifest(out, "point", {"r": 0.0}, "0.1.0")
        payload = json.loads(manifest_path(out).read_text())
        assert payload["tool"] == "spacsim"
        assert "created" in payload
