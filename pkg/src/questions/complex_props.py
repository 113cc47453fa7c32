"""Complex-valued properties of questions.

A function f maps the value of a property of A? to the value of another
property of A? only if it commutes with the negation law, which for askable
questions is z(notA) = -z(A)*.  That is the constraint

    f(-z*) = -f(z)*.

Odd real power series, i times even ones, the monomials z^n z*^m of odd total
degree and half-plane-selected fractional roots all satisfy it.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.stats import qmc

from . import kernels
from .errors import ParityError, QuestionsError

W2 = kernels.W2
W1 = W2.conjugate()
CONSTRAINT_TOL = 1e-9
SPINOR_TOL = 1e-12


# ---------------------------------------------------------------------------
# constraint checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintReport:
    passed: bool
    max_residual: float
    samples: int
    domain: str

    def __bool__(self) -> bool:
        return self.passed


def sample_domain(domain: str, samples: int, seed: int = 0, radius: float = 2.0) -> np.ndarray:
    """Scrambled Halton points in a square of half-width ``radius``."""
    if domain not in ("plane", "upper", "lower"):
        raise ValueError(f"unknown domain {domain!r}")
    pts = qmc.Halton(d=2, scramble=True, seed=seed).random(samples)
    re = (2.0 * pts[:, 0] - 1.0) * radius
    if domain == "plane":
        im = (2.0 * pts[:, 1] - 1.0) * radius
    else:
        # keep clear of the real axis, where half-plane rules switch branch
        im = (pts[:, 1] * 0.999 + 0.001) * radius
        if domain == "lower":
            im = -im
    return re + 1j * im


def _apply(f: Callable, z: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(f(z), dtype=complex)
        if out.shape == z.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([complex(f(complex(v))) for v in z])


def check_constraint(f: Callable, domain: str = "plane", samples: int = 10_000,
                     seed: int = 0, radius: float = 2.0,
                     tol: float = CONSTRAINT_TOL) -> ConstraintReport:
    """max |f(-z*) + f(z)*| over a quasi-random sample; passes below ``tol``."""
    if samples < 100:
        raise ValueError("need at least 100 samples")
    z = sample_domain(domain, samples, seed, radius)
    res = np.abs(_apply(f, -np.conj(z)) + np.conj(_apply(f, z)))
    worst = float(np.max(res))
    return ConstraintReport(bool(worst < tol), worst, samples, domain)


# ---------------------------------------------------------------------------
# half-plane roots
# ---------------------------------------------------------------------------

def root_prefactor(n: int) -> complex:
    """Upper half-plane prefactor c of the constraint-respecting n-th power c * z^(1/n).

    The constraint forces c^2 = -exp(-i*pi/n), which has the two solutions
    exp(-i*pi*(n+1)/(2n)) and exp(i*pi*(n-1)/(2n)).  For odd n exactly one of
    them has c^n = 1, making c * z^(1/n) a true n-th root; that one is chosen
    (it is w2 for n = 3).  For even n neither does, and the first is used.
    """
    if n < 1:
        raise ValueError("root order must be positive")
    if n % 4 == 1:
        return cmath.exp(1j * math.pi * (n - 1) / (2 * n))
    return cmath.exp(-1j * math.pi * (n + 1) / (2 * n))


def fractional_root(n: int) -> Callable:
    """A constraint-respecting n-th power z -> c * principal(z^(1/n)).

    Upper half-plane: prefactor c from :func:`root_prefactor`; lower
    half-plane: its conjugate.  On the real axis odd n give the real root and
    even n use the upper half-plane rule.  ``root.is_true_root`` says whether
    the result raised to the n-th power gives z back (odd n only).
    """
    c_up = root_prefactor(n)
    c_low = c_up.conjugate()

    def root(z):
        arr = np.asarray(z, dtype=complex)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        out = np.empty(arr.shape, dtype=complex)
        # principal root with a +0.0 imaginary part on the real axis so that
        # negative reals take the upper side of the branch cut
        zz = np.empty(arr.shape, dtype=complex)
        zz.real = arr.real
        zz.imag = np.where(arr.imag == 0.0, 0.0, arr.imag)
        with np.errstate(divide="ignore", invalid="ignore"):
            principal = np.where(zz == 0, 0.0, np.exp(np.log(np.where(zz == 0, 1.0, zz)) / n))
        up = arr.imag > 0
        low = arr.imag < 0
        real = ~(up | low)
        out[up] = c_up * principal[up]
        out[low] = c_low * principal[low]
        if n % 2 == 1:
            re = arr.real[real]
            out[real] = np.sign(re) * np.abs(re) ** (1.0 / n)
        else:
            out[real] = c_up * principal[real]
        return complex(out[0]) if scalar else out

    root.__name__ = f"fractional_root_{n}"
    root.is_true_root = n % 2 == 1
    return root


_cbrt = fractional_root(3)


def question_cbrt(z):
    """w2 * principal cube root above the real axis, w1 * principal below, real root on it."""
    return _cbrt(z)


def principal_cbrt(z):
    return np.exp(np.log(np.asarray(z, dtype=complex)) / 3.0)


# ---------------------------------------------------------------------------
# monomial families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialTransform:
    """z -> (i if with_i else 1) * z^n * conj(z)^m."""

    n: int
    m: int
    with_i: bool

    @property
    def valid(self) -> bool:
        return ((self.n + self.m) % 2 == 0) == self.with_i

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = z ** self.n * np.conj(z) ** self.m
        return 1j * out if self.with_i else out

    def __str__(self) -> str:
        pre = "i*" if self.with_i else ""
        return f"{pre}z^{self.n}*conj(z)^{self.m}"


def family_member(n: int, m: int, with_i: bool, strict: bool = True) -> MonomialTransform:
    """Build z^n z*^m (n+m odd) or i z^n z*^m (n+m even).

    With ``strict`` a parity/flag mismatch is rejected; ``strict=False``
    builds the invalid transform anyway, which is useful for failing checks.
    """
    if n < 0 or m < 0:
        raise ValueError("exponents must be non-negative")
    t = MonomialTransform(n, m, bool(with_i))
    if strict and not t.valid:
        raise ParityError(f"{t}: n+m={n + m} needs with_i={(n + m) % 2 == 0}")
    return t


# ---------------------------------------------------------------------------
# property functions, whole questions, spinors
# ---------------------------------------------------------------------------

KINDS = ("askable", "pure", "whole")


@dataclass(frozen=True)
class PropertyFunction:
    """A complex property of a question as a function of (side, P(A)).

    ``eval(True, p)`` is the value at A and ``eval(False, p)`` at notA, with
    p = P(A).  Whole properties carry their phase phi: they are e^{i phi}
    times an askable property, so g(notA) = e^{i theta} g(A)* with
    theta = 2 phi + pi.  Askable is phi = 0, pure is phi = pi/2.
    """

    eval: Callable[[bool, float], complex]
    kind: str = "askable"
    phase: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")

    @property
    def effective_phase(self) -> float:
        if self.kind == "askable":
            return 0.0
        if self.kind == "pure":
            return math.pi / 2
        return self.phase

    @property
    def theta(self) -> float:
        return (2.0 * self.effective_phase + math.pi) % (2.0 * math.pi)

    def values(self, p: float) -> "SpinorValue":
        return SpinorValue(complex(self.eval(True, p)), complex(self.eval(False, p)))

    def law_residual(self, grid=None) -> float:
        """max |g(notA) - e^{i theta} g(A)*| over a grid of P(A)."""
        ps = np.linspace(0.0, 1.0, 101) if grid is None else np.asarray(grid, dtype=float)
        rot = cmath.exp(1j * self.theta)
        worst = 0.0
        for p in ps:
            a = complex(self.eval(True, p))
            na = complex(self.eval(False, p))
            worst = max(worst, abs(na - rot * a.conjugate()))
        return worst

    def check(self, grid=None, tol: float = CONSTRAINT_TOL) -> bool:
        return self.law_residual(grid) < tol

    @classmethod
    def askable_gap(cls) -> "PropertyFunction":
        return cls(lambda side, p: complex(2 * p - 1 if side else 1 - 2 * p), "askable")

    @classmethod
    def pure_gap(cls) -> "PropertyFunction":
        return cls(lambda side, p: complex(abs(2 * p - 1)), "pure")

    @classmethod
    def from_askable(cls, f: "PropertyFunction", phi: float) -> "PropertyFunction":
        """Whole property e^{i phi} f for an askable property f."""
        if f.kind != "askable":
            raise QuestionsError("expected an askable property")
        rot = cmath.exp(1j * phi)
        return cls(lambda side, p: rot * f.eval(side, p), "whole", phi)

    def transformed(self, fn: Callable) -> "PropertyFunction":
        """Apply a complex transform to an askable property (kind is kept)."""
        return PropertyFunction(lambda side, p: complex(fn(complex(self.eval(side, p)))),
                                self.kind, self.phase)


def whole_phase_align(g1: PropertyFunction, g2: PropertyFunction) -> tuple[float, float]:
    """The two phi for which g1 + e^{i phi} g2 is again a whole property."""
    if g1.kind != "whole" or g2.kind != "whole":
        raise QuestionsError("phase alignment needs two whole properties")
    two_pi = 2.0 * math.pi
    d = (g1.phase - g2.phase) % two_pi
    return d, (d + math.pi) % two_pi


def aligned_sum(g1: PropertyFunction, g2: PropertyFunction, phi: float) -> PropertyFunction:
    """g1 + e^{i phi} g2; keeps g1's phase when phi is one of the aligned values."""
    rot = cmath.exp(1j * phi)
    return PropertyFunction(lambda side, p: g1.eval(side, p) + rot * g2.eval(side, p),
                            "whole", g1.phase)


def is_whole_spinor(first: complex, second: complex, tol: float = SPINOR_TOL) -> bool:
    return abs(abs(first) - abs(second)) <= tol * max(1.0, abs(first), abs(second))


@dataclass(frozen=True)
class SpinorValue:
    """Values (z1, z2) of a whole-question property at A and at notA."""

    first: complex
    second: complex

    @property
    def is_whole(self) -> bool:
        return is_whole_spinor(self.first, self.second)

    def require_whole(self) -> "SpinorValue":
        if not self.is_whole:
            raise QuestionsError(f"|z1| != |z2| for {self}")
        return self


def spinor_product(u: SpinorValue, v: SpinorValue) -> SpinorValue:
    """Componentwise product; whole spinors are closed under it."""
    u.require_whole()
    v.require_whole()
    return SpinorValue(u.first * v.first, u.second * v.second)


def spinor_sum(u: SpinorValue, v: SpinorValue) -> SpinorValue:
    """Componentwise sum.  Not closed: the result may fail :attr:`is_whole`."""
    return SpinorValue(u.first + v.first, u.second + v.second)


def tilde_v_negation_residual(steps: int = 101) -> float:
    """max |V(notA) + V(A)*| on a (steps x steps) probability grid.

    Negating A flips gap(A?), which flips the sign of Y and leaves T and U
    alone, so V(notA) is the pipeline evaluated at 1 - P(A).
    """
    from .tilde import tilde_grid

    g = np.linspace(0.0, 1.0, steps)
    a, b = np.meshgrid(g, g, indexing="ij")
    v = tilde_grid(a, b)["V"]
    v_neg = tilde_grid(1.0 - a, b)["V"]
    return float(np.max(np.abs(v_neg + np.conj(v))))
