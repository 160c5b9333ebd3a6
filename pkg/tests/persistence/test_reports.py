from __future__ import annotations

import json
from typing import TYPE_CHECKING

import numpy as np
import pytest
from nbubble.asymptotics import fit_coefficients
from nbubble.errors import FormatError
from nbubble.moser import sharpness_sweep
from nbubble.persistence import (
    SWEEP_COLUMNS,
    dumps_json,
    read_json,
    read_sweep_csv,
    write_json,
    write_moser_csv,
    write_sweep_csv,
)

if TYPE_CHECKING:
    from pathlib import Path

    from nbubble.asymptotics import SweepResult


class TestJson:
    def test_non_finite_become_null(self) -> None:
        text = dumps_json({"a": float("nan"), "b": np.float64(1.5), "c": float("inf")})
        assert json.loads(text) == {"a": None, "b": 1.5, "c": None}

    def test_arrays_and_integers(self) -> None:
        payload = {"values": np.array([1.0, np.nan]), "count": np.int64(3), "ok": True}
        assert json.loads(dumps_json(payload)) == {"values": [1.0, None], "count": 3, "ok": True}

    def test_write_and_read(self, tmp_path: Path) -> None:
        path = write_json(tmp_path / "summary.json", {"gamma": 0.25, "fitted": float("nan")})
        assert path.read_text(encoding="utf-8").endswith("}\n")
        assert read_json(path) == {"gamma": 0.25, "fitted": None}

    def test_malformed(self, tmp_path: Path) -> None:
        path = tmp_path / "config.json"
        path.write_text('{\n  "d": 0.1,\n  oops\n}\n', encoding="utf-8")
        with pytest.raises(FormatError) as exc:
            read_json(path, "config")
        assert exc.value.kind == "config"
        assert exc.value.line == 3

    def test_not_an_object(self, tmp_path: Path) -> None:
        path = tmp_path / "list.json"
        path.write_text("[1, 2]\n", encoding="utf-8")
        with pytest.raises(FormatError, match="expected a JSON object"):
            read_json(path)


class TestSweepCsv:
    def test_round_trip(self, tmp_path: Path, sweep_result: SweepResult) -> None:
        path = write_sweep_csv(tmp_path / "sweep.csv", sweep_result)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert len(lines) == 3

        table = read_sweep_csv(path)
        assert len(table) == 2
        assert table["d"].tolist() == [0.1, 0.05]
        assert table["m_d"].tolist() == sweep_result.m_d.tolist()
        assert table["maxima_count"].tolist() == [-1.0, -1.0]
        assert np.all(np.isnan(table["mu1"]))

    def test_refit_from_disk(self, tmp_path: Path, sweep_result: SweepResult) -> None:
        table = read_sweep_csv(write_sweep_csv(tmp_path / "sweep.csv", sweep_result))
        fitted = fit_coefficients(table["d"], table["M_test"], table["t0"], 0.6 * np.pi)
        assert fitted.fitted_gamma_coeff == pytest.approx(0.0, abs=1e-9)

    def test_bad_header(self, tmp_path: Path) -> None:
        path = tmp_path / "sweep.csv"
        path.write_text("d,m_d\n0.1,0.2\n", encoding="utf-8")
        with pytest.raises(FormatError) as exc:
            read_sweep_csv(path)
        assert exc.value.line == 1

    def test_bad_rows(self, tmp_path: Path, sweep_result: SweepResult) -> None:
        path = write_sweep_csv(tmp_path / "sweep.csv", sweep_result)
        lines = path.read_text(encoding="utf-8").splitlines()
        path.write_text("\n".join([*lines, "1,2,3"]) + "\n", encoding="utf-8")
        with pytest.raises(FormatError) as exc:
            read_sweep_csv(path)
        assert exc.value.line == 4

        path.write_text(lines[0] + "\n", encoding="utf-8")
        with pytest.raises(FormatError, match="no rows"):
            read_sweep_csv(path)


class TestMoserCsv:
    def test_rows(self, tmp_path: Path) -> None:
        table = sharpness_sweep([2 * np.pi], [1e-2, 1e-3, 1e-4, 1e-5])
        path = write_moser_csv(tmp_path / "moser.csv", table)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "alpha,eps,value,classification"
        assert len(lines) == 5
        alpha, eps, value, classification = lines[1].split(",")
        assert float(alpha) == 2 * np.pi
        assert float(eps) == 1e-2
        assert float(value) == table.values[0, 0]
        assert classification == str(table.classifications[0])
