"""Parsing and validation of the upstream file formats."""

import numpy as np
import pytest

from figscripts.tables import (
    FigureDataError,
    FigureSpec,
    infer_spin_count,
    load_table,
    resolve_bounds,
    sidecar_for,
)


class TestLoadTable:
    def test_reads_schema(self, three_spin_csv):
        table = load_table(three_spin_csv)
        assert table.columns[0] == "D_tau"
        assert table.has("J_0") and table.has("J_2") and table.has("FQ_lower")
        assert table.rows.shape == (61, 6)
        assert float(table.column("J_0")[0]) == 1.0

    def test_blank_cells_become_nan(self, tmp_path):
        path = tmp_path / "sweep.csv"
        path.write_text("N,T_kelvin,b,avg_max_entangled,peak_fq\n3,,0.5,1.0,2.0\n")
        table = load_table(path)
        assert np.isnan(table.column("T_kelvin")[0])
        assert table.column("b")[0] == 0.5

    def test_missing_file(self, tmp_path):
        with pytest.raises(FigureDataError, match="no such file"):
            load_table(tmp_path / "absent.csv")

    def test_header_only_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("D_tau,J_0\n")
        with pytest.raises(FigureDataError, match="no data rows"):
            load_table(path)

    def test_zero_byte_file(self, tmp_path):
        path = tmp_path / "zero.csv"
        path.write_text("")
        with pytest.raises(FigureDataError, match="empty"):
            load_table(path)

    def test_ragged_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n3\n")
        with pytest.raises(FigureDataError, match="expected 2 fields"):
            load_table(path)

    def test_non_numeric_cell(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,oops\n")
        with pytest.raises(FigureDataError):
            load_table(path)

    def test_missing_column_lookup(self, three_spin_csv):
        table = load_table(three_spin_csv)
        with pytest.raises(FigureDataError, match="missing column"):
            table.column("J_99")


class TestSpinCountInference:
    def test_sidecar_wins_over_filename(self, three_spin_csv):
        assert infer_spin_count(three_spin_csv) == 3

    def test_filename_fallback(self, tmp_path):
        path = tmp_path / "sim_N7_b0.1.csv"
        path.write_text("D_tau\n0\n")
        assert infer_spin_count(path) == 7

    def test_override_wins(self, three_spin_csv):
        assert infer_spin_count(three_spin_csv, override=5) == 5

    def test_unknown_raises(self, tmp_path):
        path = tmp_path / "mystery.csv"
        path.write_text("D_tau\n0\n")
        with pytest.raises(FigureDataError, match="spin count"):
            infer_spin_count(path)

    def test_sidecar_contents(self, three_spin_csv):
        meta = sidecar_for(three_spin_csv)
        assert meta["n"] == 3 and meta["command"] == "simulate"


class TestResolveBounds:
    def test_from_file(self, bound_table_csv):
        assert resolve_bounds(101, (19, 46), bound_table_csv) == {19: 1841, 46: 4313}

    def test_k_out_of_range(self, bound_table_csv):
        with pytest.raises(ValueError, match="outside"):
            resolve_bounds(101, (0,), bound_table_csv)
        with pytest.raises(ValueError, match="outside"):
            resolve_bounds(101, (101,), bound_table_csv)

    def test_k_absent_from_table(self, bound_table_csv):
        with pytest.raises(FigureDataError, match="no entry"):
            resolve_bounds(101, (20,), bound_table_csv)

    def test_not_a_bound_table(self, three_spin_csv):
        with pytest.raises(FigureDataError, match="not a bound table"):
            resolve_bounds(3, (1,), three_spin_csv)

    def test_via_installed_tool(self):
        # the default route shells out to the primary component
        assert resolve_bounds(101, (19, 46), None) == {19: 1841, 46: 4313}


class TestFigureSpec:
    def test_unknown_kind(self, tmp_path):
        with pytest.raises(ValueError, match="unknown figure kind"):
            FigureSpec(kind="pie", inputs=(tmp_path / "a.csv",), out=tmp_path / "o.png")

    def test_requires_input(self, tmp_path):
        with pytest.raises(ValueError, match="at least one"):
            FigureSpec(kind="sweep", inputs=(), out=tmp_path / "o.png")

    def test_single_input_kinds(self, tmp_path):
        files = (tmp_path / "a.csv", tmp_path / "b.csv")
        with pytest.raises(ValueError, match="exactly one"):
            FigureSpec(kind="coherences", inputs=files, out=tmp_path / "o.png")

    def test_bounds_only_for_fisher(self, tmp_path):
        with pytest.raises(ValueError, match="only apply"):
            FigureSpec(
                kind="coherences",
                inputs=(tmp_path / "a.csv",),
                out=tmp_path / "o.png",
                bounds=(19,),
            )
