"""The tilde relation between two propositions.

Given P(A) = a and P(B) = b, the four-term information balance
``i(A,B) + i(A,notB) + i(notA,B) + i(notA,notB) = 0`` is the quartic

    x (a - x)(b - x)(1 - a - b + x) = a^2 b^2 (1 - a)^2 (1 - b)^2

in x = P(AB).  One admissible root is independence, x = ab.  The other is
the tilde relation, computed here through the gap-based pipeline
T, S, Y, U, V, and checked against a sign-scan/bisection oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .worlds import WorldDistribution

ORACLE_POINTS = 10_000
ORACLE_XTOL = 1e-14


class _Unconstrained:
    """Marker for P(B|A) when the tilde relation leaves it free."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unconstrained"

    def __bool__(self) -> bool:
        return False


UNCONSTRAINED = _Unconstrained()


@dataclass(frozen=True)
class TildeEvaluation:
    pa: float
    pb: float
    gap_a: float
    gap_b: float
    T: float
    S: float
    Y: float
    U: complex
    V: complex
    x: float

    @property
    def discrepancy(self) -> float:
        return self.x - self.pa * self.pb

    @property
    def p_b_given_a(self) -> float:
        return self.x / self.pa if self.pa > 0 else math.nan


@dataclass(frozen=True)
class QuarticRoots:
    pa: float
    pb: float
    roots: tuple[float, ...]
    residuals: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.roots)


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} = {value!r} is outside [0, 1]")
    return value


def _check_disc(disc: np.ndarray) -> None:
    worst = float(np.max(disc)) if np.size(disc) else -1.0
    if worst > kernels.DISC_CLAMP:
        raise ArithmeticError(f"T^3 + Y^2 = {worst!r} is positive beyond fp noise")


def tilde_grid(pa, pb):
    """Vectorized pipeline over broadcast arrays.

    Returns a dict of arrays with keys ``T, S, Y, U, V, x`` (``U`` is the
    imaginary magnitude times 1j), shaped like the broadcast inputs.
    """
    pa, pb = np.broadcast_arrays(np.asarray(pa, dtype=float), np.asarray(pb, dtype=float))
    if np.any((pa < 0) | (pa > 1) | (pb < 0) | (pb > 1)) or not (
        np.all(np.isfinite(pa)) and np.all(np.isfinite(pb))
    ):
        raise ValueError("probabilities must lie in [0, 1]")
    shape = pa.shape
    fa = np.ascontiguousarray(pa.ravel())
    fb = np.ascontiguousarray(pb.ravel())
    t, s, y, disc, v, x = kernels.tilde_pipeline(fa, fb)
    _check_disc(disc)
    u = 1j * np.sqrt(np.where(disc < 0.0, -disc, 0.0))
    return {
        "T": t.reshape(shape),
        "S": s.reshape(shape),
        "Y": y.reshape(shape),
        "U": u.reshape(shape),
        "V": v.reshape(shape),
        "x": x.reshape(shape),
    }


def tilde_closed_form(pa: float, pb: float) -> TildeEvaluation:
    """Evaluate the pipeline at one point, returning every intermediate."""
    pa = _check_unit("pa", pa)
    pb = _check_unit("pb", pb)
    g = tilde_grid(np.array([pa]), np.array([pb]))
    return TildeEvaluation(
        pa=pa,
        pb=pb,
        gap_a=2.0 * pa - 1.0,
        gap_b=2.0 * pb - 1.0,
        T=float(g["T"][0]),
        S=float(g["S"][0]),
        Y=float(g["Y"][0]),
        U=complex(g["U"][0]),
        V=complex(g["V"][0]),
        x=float(g["x"][0]),
    )


def tilde_x(pa: float, pb: float) -> float:
    return tilde_closed_form(pa, pb).x


def quartic_roots_oracle(pa: float, pb: float, npts: int = ORACLE_POINTS,
                         xtol: float = ORACLE_XTOL) -> QuarticRoots:
    """All admissible quartic roots by sign scan, bisection and tangency search."""
    pa = float(pa)
    pb = float(pb)
    if not (0.0 < pa < 1.0 and 0.0 < pb < 1.0):
        raise ValueError("the oracle needs 0 < pa, pb < 1")
    roots = kernels.quartic_roots(pa, pb, int(npts), float(xtol))
    res = kernels.quartic_residual(pa, pb, roots)
    return QuarticRoots(pa, pb, tuple(float(r) for r in roots), tuple(float(r) for r in res))


def tilde_conditional(pa: float, pb: float):
    """P(B|A) on the tilde surface, or :data:`UNCONSTRAINED`."""
    pa = _check_unit("pa", pa)
    pb = _check_unit("pb", pb)
    if pa > 0.0:
        return min(1.0, max(0.0, tilde_closed_form(pa, pb).x / pa))
    if 0.0 < pb < 1.0:
        return 1.0 - pb
    return UNCONSTRAINED


def discrepancy(pa: float, pb: float) -> float:
    """x - pa*pb, the departure of the tilde joint from independence."""
    e = tilde_closed_form(pa, pb)
    return e.x - e.pa * e.pb


def discrepancy_grid(step: float = 0.001):
    """(grid, discrepancy array) on a square grid over [0, 1]^2."""
    n = int(round(1.0 / step)) + 1
    grid = np.linspace(0.0, 1.0, n)
    a, b = np.meshgrid(grid, grid, indexing="ij")
    x = tilde_grid(a, b)["x"]
    return grid, x - a * b


def connecting_gap(pa: float, pb: float) -> float:
    """Re(V): the gap of the connecting question."""
    return tilde_closed_form(pa, pb).V.real


def gap_star_on_tilde(pa: float, pb: float) -> float:
    """gap(A? * B?) = 4x - 2a - 2b + 1 on the tilde joint."""
    x = tilde_closed_form(pa, pb).x
    return 4.0 * x - 2.0 * pa - 2.0 * pb + 1.0


def tilde_cells(pa: float, pb: float) -> tuple[float, float, float, float]:
    """(AB, A notB, notA B, notA notB) under the tilde relation."""
    x = tilde_closed_form(pa, pb).x
    cells = np.array([x, pa - x, pb - x, 1.0 - pa - pb + x])
    if np.any(cells < -1e-12):
        raise ArithmeticError(f"negative tilde cell {cells.min()!r}")
    cells = np.where(cells < 0.0, 0.0, cells)
    return tuple(float(c) for c in cells)


def tilde_distribution(pa: float, pb: float) -> WorldDistribution:
    """Four-world joint of A (generator 0) and B (generator 1) under tilde.

    World w has A true iff bit 0 is set and B true iff bit 1 is set.
    """
    ab, a_nb, na_b, na_nb = tilde_cells(pa, pb)
    return WorldDistribution([na_nb, a_nb, na_b, ab], generator_count=2)


def is_tilde_pair(pa: float, pb: float, pab: float, tol: float = 1e-9) -> bool:
    """Whether P(AB) = pab is the tilde value for these marginals."""
    return abs(pab - tilde_closed_form(pa, pb).x) <= tol
