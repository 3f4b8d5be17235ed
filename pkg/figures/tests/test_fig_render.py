"""Figure construction and deterministic output."""

import numpy as np
import pytest

from figscripts.render import build_figure, render
from figscripts.tables import FigureDataError, FigureSpec

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def close(fig):
    import matplotlib.pyplot as plt

    plt.close(fig)


class TestCoherences:
    def test_curves_match_input(self, three_spin_csv, tmp_path):
        spec = FigureSpec(kind="coherences", inputs=(three_spin_csv,), out=tmp_path / "f.png")
        fig, ax = build_figure(spec)
        labels = [line.get_label() for line in ax.get_lines()]
        assert labels == ["$J_{0}$", "$J_{2}$"]
        y0 = ax.get_lines()[0].get_ydata()
        assert y0[0] == pytest.approx(1.0)
        assert ax.get_xlabel() and ax.get_ylabel()
        close(fig)

    def test_no_intensity_columns(self, tmp_path):
        path = tmp_path / "bare.csv"
        path.write_text("D_tau,M2\n0,0\n1,1\n")
        spec = FigureSpec(kind="coherences", inputs=(path,), out=tmp_path / "f.png")
        with pytest.raises(FigureDataError, match="no J_n columns"):
            build_figure(spec)


class TestFisherBounds:
    def test_horizontal_lines_at_table_values(self, large_csv, bound_table_csv, tmp_path):
        spec = FigureSpec(
            kind="fisher-bounds",
            inputs=(large_csv,),
            out=tmp_path / "f.png",
            bounds=(19, 46),
            bound_table=bound_table_csv,
        )
        fig, ax = build_figure(spec)
        lines = ax.get_lines()
        flat = [
            line for line in lines
            if len(set(np.asarray(line.get_ydata(), dtype=float))) == 1
        ]
        levels = sorted(float(line.get_ydata()[0]) for line in flat)
        assert levels == [1841.0, 4313.0]
        # the data curve must actually cross into the strip between the lines
        curve = next(line for line in lines if line not in flat)
        y = np.asarray(curve.get_ydata(), dtype=float)
        assert ((y > 1841.0) & (y < 4313.0)).any()
        close(fig)

    def test_without_bounds_draws_curve_only(self, large_csv, tmp_path):
        spec = FigureSpec(kind="fisher-bounds", inputs=(large_csv,), out=tmp_path / "f.png")
        fig, ax = build_figure(spec)
        assert len(ax.get_lines()) == 1
        close(fig)

    def test_missing_fisher_column(self, tmp_path):
        path = tmp_path / "bare.csv"
        path.write_text("D_tau,J_0\n0,1\n1,0.9\n")
        spec = FigureSpec(kind="fisher-bounds", inputs=(path,), out=tmp_path / "f.png")
        with pytest.raises(FigureDataError, match="FQ_lower"):
            build_figure(spec)


class TestSweep:
    def test_one_curve_per_size(self, sweep_csv, tmp_path):
        spec = FigureSpec(kind="sweep", inputs=(sweep_csv,), out=tmp_path / "f.png")
        fig, ax = build_figure(spec)
        labels = [line.get_label() for line in ax.get_lines()]
        assert labels == ["$N = 51$", "$N = 101$"]
        assert ax.get_xscale() == "log"
        close(fig)

    def test_multiple_inputs_merge(self, sweep_csv, tmp_path):
        # splitting the same rows across two files must not change the figure
        text = sweep_csv.read_text().splitlines()
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        a.write_text("\n".join(text[:4]) + "\n")
        b.write_text("\n".join([text[0]] + text[4:]) + "\n")
        merged = FigureSpec(kind="sweep", inputs=(a, b), out=tmp_path / "m.png")
        single = FigureSpec(kind="sweep", inputs=(sweep_csv,), out=tmp_path / "s.png")
        fig_m, ax_m = build_figure(merged)
        fig_s, ax_s = build_figure(single)
        for lm, ls in zip(ax_m.get_lines(), ax_s.get_lines()):
            assert np.array_equal(lm.get_xdata(), ls.get_xdata())
            assert np.array_equal(lm.get_ydata(), ls.get_ydata())
        close(fig_m)
        close(fig_s)

    def test_b_axis_when_kelvin_absent(self, tmp_path):
        path = tmp_path / "sweep.csv"
        path.write_text(
            "N,T_kelvin,b,avg_max_entangled,peak_fq\n"
            "3,,0.2,1.0,3.0\n3,,0.4,1.5,4.0\n"
        )
        spec = FigureSpec(kind="sweep", inputs=(path,), out=tmp_path / "f.png")
        fig, ax = build_figure(spec)
        assert "b" in ax.get_xlabel()
        close(fig)


class TestRenderOutput:
    def test_writes_png(self, three_spin_csv, tmp_path):
        out = tmp_path / "fig" / "coherences.png"
        spec = FigureSpec(kind="coherences", inputs=(three_spin_csv,), out=out)
        assert render(spec) == out
        data = out.read_bytes()
        assert data.startswith(PNG_MAGIC)
        assert len(data) > 1000

    def test_rerender_is_byte_identical(self, large_csv, bound_table_csv, tmp_path):
        outs = [tmp_path / "one.png", tmp_path / "two.png"]
        for out in outs:
            spec = FigureSpec(
                kind="fisher-bounds",
                inputs=(large_csv,),
                out=out,
                bounds=(19, 46),
                bound_table=bound_table_csv,
            )
            render(spec)
        assert outs[0].read_bytes() == outs[1].read_bytes()

    def test_svg_output_supported(self, three_spin_csv, tmp_path):
        out = tmp_path / "fig.svg"
        spec = FigureSpec(kind="coherences", inputs=(three_spin_csv,), out=out)
        render(spec)
        body = out.read_text()
        assert body.lstrip().startswith("<?xml")
