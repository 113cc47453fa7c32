"""Figure data as tables: CSV or JSON, no rendering.

Every figure is a list of named columns and a list of rows.  CSV is written
with a header row, LF line endings and 12 significant digits; NaN is written
as ``nan``.  JSON is one object ``{"columns": [...], "rows": [[...], ...]}``
with null for NaN.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .tilde import UNCONSTRAINED, discrepancy_grid, tilde_conditional, tilde_grid

MIN_STEP = 1e-4
MAX_STEP = 0.25
PB_LINES = tuple(round(0.1 * k, 10) for k in range(11))

SCHEMAS: dict[str, tuple[str, ...]] = {
    # tilde surface next to the independence surface
    "fig2_2": ("pa", "pb", "x_tilde", "x_indep"),
    # discrepancy x - pa*pb; global_max_abs repeats the grid maximum of |discrepancy|
    "fig2_3": ("pa", "pb", "discrepancy", "global_max_abs"),
    # P(B|A) with the pa -> 0 limit P(notB) appended as its own columns
    "fig2_4": ("pa", "pb", "p_b_given_a", "limit_p_not_b", "constrained"),
    # V in the complex plane over the whole square
    "fig7_1": ("pa", "pb", "re", "im"),
    # panel 0: folded gap square, panel 1: V; one line per P(B) in 0, 0.1, ..., 1
    "fig7_2": ("panel", "pb_line", "pa", "re", "im"),
    # every stage of the pipeline
    "fig7_3": ("pa", "pb", "gap_a", "gap_b", "T", "S", "Y", "U_im", "re_V", "im_V"),
    # T against S along the constant-P(B) lines
    "fig7_4": ("pb_line", "pa", "T", "S"),
}
FIGURES = tuple(SCHEMAS)
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class FigureSpec:
    name: str
    grid_step: float = 0.01
    output_format: str = "csv"

    def __post_init__(self):
        if self.name not in SCHEMAS:
            raise ValueError(f"unknown figure {self.name!r}; choose from {', '.join(FIGURES)}")
        if not (MIN_STEP <= self.grid_step <= MAX_STEP):
            raise ValueError(f"grid_step must lie in [{MIN_STEP}, {MAX_STEP}]")
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    @property
    def columns(self) -> tuple[str, ...]:
        return SCHEMAS[self.name]


@dataclass(frozen=True)
class FigureData:
    columns: tuple[str, ...]
    data: np.ndarray  # shape (rows, columns), float

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def __len__(self) -> int:
        return self.data.shape[0]


def _axis(step: float) -> np.ndarray:
    n = int(round(1.0 / step)) + 1
    return np.linspace(0.0, 1.0, n)


def _square(step: float) -> tuple[np.ndarray, np.ndarray]:
    g = _axis(step)
    a, b = np.meshgrid(g, g, indexing="ij")
    return a.ravel(), b.ravel()


def fold(gap_a, gap_b) -> np.ndarray:
    """Fold gap(A?) + i gap(B?) along both diagonals of the gap square."""
    s = np.abs(np.asarray(gap_a) + np.asarray(gap_b))
    d = np.abs(np.asarray(gap_a) - np.asarray(gap_b))
    return 0.5 * (s - d) - 0.5j * (s + d)


def _fig2_2(step):
    a, b = _square(step)
    x = tilde_grid(a, b)["x"]
    return np.column_stack([a, b, x, a * b])


def _fig2_3(step):
    grid, disc = discrepancy_grid(step)
    a, b = np.meshgrid(grid, grid, indexing="ij")
    peak = float(np.max(np.abs(disc)))
    d = disc.ravel()
    return np.column_stack([a.ravel(), b.ravel(), d, np.full(d.shape, peak)])


def _fig2_4(step):
    a, b = _square(step)
    x = tilde_grid(a, b)["x"]
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(a > 0.0, x / np.where(a > 0.0, a, 1.0), np.nan)
    limit = np.empty_like(a)
    constrained = np.ones_like(a)
    for i in np.flatnonzero(a == 0.0):
        v = tilde_conditional(0.0, float(b[i]))
        if v is UNCONSTRAINED:
            limit[i] = np.nan
            constrained[i] = 0.0
        else:
            limit[i] = v
            cond[i] = v
    interior = a != 0.0
    limit[interior] = 1.0 - b[interior]
    return np.column_stack([a, b, np.clip(cond, 0.0, 1.0), limit, constrained])


def _fig7_1(step):
    a, b = _square(step)
    v = tilde_grid(a, b)["V"]
    return np.column_stack([a, b, v.real, v.imag])


def _fig7_2(step):
    pa = _axis(step)
    rows = []
    for pb in PB_LINES:
        b = np.full_like(pa, pb)
        f = fold(2 * pa - 1, 2 * b - 1)
        v = tilde_grid(pa, b)["V"]
        rows.append(np.column_stack([np.zeros_like(pa), b, pa, f.real, f.imag]))
        rows.append(np.column_stack([np.ones_like(pa), b, pa, v.real, v.imag]))
    return np.vstack(rows)


def _fig7_3(step):
    a, b = _square(step)
    g = tilde_grid(a, b)
    return np.column_stack([a, b, 2 * a - 1, 2 * b - 1, g["T"], g["S"], g["Y"],
                            g["U"].imag, g["V"].real, g["V"].imag])


def _fig7_4(step):
    pa = _axis(step)
    rows = []
    for pb in PB_LINES:
        b = np.full_like(pa, pb)
        g = tilde_grid(pa, b)
        rows.append(np.column_stack([b, pa, g["T"], g["S"]]))
    return np.vstack(rows)


_BUILDERS = {
    "fig2_2": _fig2_2,
    "fig2_3": _fig2_3,
    "fig2_4": _fig2_4,
    "fig7_1": _fig7_1,
    "fig7_2": _fig7_2,
    "fig7_3": _fig7_3,
    "fig7_4": _fig7_4,
}


def figure_data(spec: FigureSpec) -> FigureData:
    data = np.asarray(_BUILDERS[spec.name](spec.grid_step), dtype=float)
    return FigureData(spec.columns, data)


def format_value(v: float) -> str:
    if math.isnan(v):
        return "nan"
    return "%.12g" % v


def to_csv(fig: FigureData) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fig.columns)
    for row in fig.data:
        w.writerow([format_value(v) for v in row])
    return buf.getvalue()


def to_json(fig: FigureData) -> str:
    rows = [[None if math.isnan(v) else float(format_value(v)) for v in row] for row in fig.data]
    return json.dumps({"columns": list(fig.columns), "rows": rows}, allow_nan=False)


def render(spec: FigureSpec) -> str:
    fig = figure_data(spec)
    return to_csv(fig) if spec.output_format == "csv" else to_json(fig)


def write_figure(spec: FigureSpec, out_path) -> Path:
    path = Path(out_path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render(spec))
    return path


def read_figure(path) -> FigureData:
    """Parse a CSV or JSON figure file back into columns and a float array."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        data = np.array([[np.nan if v is None else v for v in r] for r in obj["rows"]], dtype=float)
        return FigureData(tuple(obj["columns"]), data.reshape(-1, len(obj["columns"])))
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    data = np.array([[float(v) for v in r] for r in reader], dtype=float)
    return FigureData(header, data.reshape(-1, len(header)))
