import json
import math

import numpy as np
import pytest

from questions import figures
from questions.figures import FigureData, FigureSpec, figure_data, read_figure, render


def data(name, step=0.05):
    return figure_data(FigureSpec(name, step))


class TestSpec:
    @pytest.mark.parametrize("name", figures.FIGURES)
    def test_columns_match_schema(self, name):
        fig = data(name, 0.25)
        assert fig.columns == figures.SCHEMAS[name]
        assert fig.data.shape[1] == len(fig.columns)

    @pytest.mark.parametrize("step", [0.0, 5e-5, 0.3, -0.1])
    def test_step_range(self, step):
        with pytest.raises(ValueError):
            FigureSpec("fig2_2", step)

    def test_unknown(self):
        with pytest.raises(ValueError):
            FigureSpec("fig9_9")
        with pytest.raises(ValueError):
            FigureSpec("fig2_2", 0.1, "xml")

    def test_grid_size(self):
        assert len(data("fig2_2", 0.25)) == 25
        assert len(data("fig7_4", 0.25)) == 5 * len(figures.PB_LINES)
        assert len(data("fig7_2", 0.25)) == 2 * 5 * len(figures.PB_LINES)


class TestContent:
    def test_fig2_2_half(self):
        fig = data("fig2_2", 0.1)
        half = np.isclose(fig.column("pa"), 0.5)
        np.testing.assert_allclose(fig.column("x_tilde")[half], 0.5 * fig.column("pb")[half],
                                   atol=1e-12)
        np.testing.assert_allclose(fig.column("x_indep"), fig.column("pa") * fig.column("pb"))

    def test_fig2_3_max(self):
        fig = data("fig2_3", 0.01)
        peak = float(np.max(np.abs(fig.column("discrepancy"))))
        assert peak == pytest.approx(0.0674, abs=5e-4)
        np.testing.assert_allclose(fig.column("global_max_abs"), peak)

    def test_fig2_4_limit(self):
        fig = data("fig2_4", 0.1)
        a, b = fig.column("pa"), fig.column("pb")
        lim = fig.column("limit_p_not_b")
        edge = (a == 0.0) & (b > 0.0) & (b < 1.0)
        np.testing.assert_allclose(lim[edge], 1.0 - b[edge], atol=1e-12)
        np.testing.assert_allclose(fig.column("p_b_given_a")[edge], 1.0 - b[edge], atol=1e-12)
        free = (a == 0.0) & ((b == 0.0) | (b == 1.0))
        assert np.all(np.isnan(lim[free]))
        assert np.all(fig.column("constrained")[free] == 0.0)
        inner = a > 0.0
        np.testing.assert_allclose(fig.column("p_b_given_a")[np.isclose(a, 1.0)],
                                   b[np.isclose(a, 1.0)], atol=1e-12)
        assert np.all(fig.column("constrained")[inner] == 1.0)

    def test_fig7_1_bounds(self):
        fig = data("fig7_1", 0.02)
        re, im = fig.column("re"), fig.column("im")
        assert re.min() >= -1.0 - 1e-12 and re.max() <= 1.0 + 1e-12
        assert im.min() == pytest.approx(-math.sqrt(3), abs=1e-9)
        assert im.max() == pytest.approx(-math.sqrt(1.5), abs=1e-9)

    def test_fig7_2_panels(self):
        fig = data("fig7_2", 0.1)
        panel = fig.column("panel")
        assert set(panel) == {0.0, 1.0}
        f = figures.fold(0.4, -0.2)
        assert f == pytest.approx(-0.2 - 0.4j)
        folded = fig.data[panel == 0.0]
        assert np.all(folded[:, 4] <= 1e-15)

    def test_fig7_3_gaps(self):
        fig = data("fig7_3", 0.1)
        np.testing.assert_allclose(fig.column("gap_a"), 2 * fig.column("pa") - 1)
        np.testing.assert_allclose(fig.column("Y"),
                                   fig.column("gap_a") * fig.column("gap_b") * fig.column("S"),
                                   atol=1e-15)

    def test_fig7_4_corners(self):
        fig = data("fig7_4", 0.25)
        corner = (fig.column("pa") == 0.0) & (fig.column("pb_line") == 0.0)
        assert fig.column("T")[corner][0] == pytest.approx(-1.0)


class TestSerialization:
    def test_csv_header_and_lf(self):
        text = render(FigureSpec("fig2_2", 0.25))
        assert text.splitlines()[0] == "pa,pb,x_tilde,x_indep"
        assert "\r" not in text
        assert text.endswith("\n")

    def test_csv_roundtrip(self, tmp_path):
        spec = FigureSpec("fig7_3", 0.1)
        path = figures.write_figure(spec, tmp_path / "f.csv")
        back = read_figure(path)
        fig = figure_data(spec)
        assert back.columns == fig.columns
        np.testing.assert_allclose(back.data, fig.data, rtol=1e-11, atol=1e-12)

    def test_json_roundtrip_nan(self, tmp_path):
        spec = FigureSpec("fig2_4", 0.25, "json")
        path = figures.write_figure(spec, tmp_path / "f.json")
        obj = json.loads(path.read_text())
        assert obj["columns"] == list(figures.SCHEMAS["fig2_4"])
        assert any(v is None for row in obj["rows"] for v in row)
        back = read_figure(path)
        np.testing.assert_allclose(back.data, figure_data(spec).data, rtol=1e-11, equal_nan=True)

    def test_format_value(self):
        assert figures.format_value(math.nan) == "nan"
        assert figures.format_value(0.12299828119582076) == "0.122998281196"

    def test_nan_in_csv(self):
        fig = FigureData(("a",), np.array([[math.nan]]))
        assert figures.to_csv(fig) == "a\nnan\n"
