"""Hot numerical kernels, each in a numba and a pure-numpy flavour.

Three loops dominate the run time of the verification suites:

* the quartic sign-scan/bisection oracle (10^4 samples per call, called on
  ~10^4 grid points),
* the closed-form tilde pipeline evaluated over large probability grids,
* the GF(2) Moebius butterfly that produces algebraic normal forms.

``*_jit`` functions are compiled with numba when it is available; ``*_numpy``
functions are vectorized numpy.  The unsuffixed names are bound to one of the
two according to :data:`questions._accel.USE_JIT`.  Both flavours implement
the same algorithm step for step so their outputs agree to rounding.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from ._accel import USE_JIT, njit

# cube root of unity used by the tilde pipeline, (-1 - i*sqrt(3))/2
W2 = complex(-0.5, -math.sqrt(3.0) / 2.0)

# fp slack tolerated when T^3 + Y^2 comes out positive
DISC_CLAMP = 1e-12
# snapping distance for x onto its admissible interval
X_CLAMP = 1e-9
# tangency roots are accepted when |g| is this small relative to the constant term
TOUCH_REL = 1e-10
DEDUPE_TOL = 1e-9
MAX_BISECT = 200


# ---------------------------------------------------------------------------
# quartic oracle
# ---------------------------------------------------------------------------

@njit
def _quartic_g(x, a, b, c, k):
    return x * (a - x) * (b - x) * (c + x) - k


@njit
def _quartic_dg(x, a, b, c):
    f1 = x
    f2 = a - x
    f3 = b - x
    f4 = c + x
    return f2 * f3 * f4 - f1 * f3 * f4 - f1 * f2 * f4 + f1 * f2 * f3


@njit
def quartic_roots_jit(a, b, npts, xtol):
    """Admissible real roots of the tilde quartic at (a, b)."""
    lo = max(0.0, b - (1.0 - a))
    hi = min(a, b)
    c = 1.0 - a - b
    k = (a * b * (1.0 - a) * (1.0 - b)) ** 2
    xs = np.empty(npts)
    gs = np.empty(npts)
    for i in range(npts):
        xs[i] = lo + (hi - lo) * i / (npts - 1)
        gs[i] = _quartic_g(xs[i], a, b, c, k)

    out = np.empty(npts)
    n = 0
    for i in range(npts):
        if gs[i] == 0.0:
            out[n] = xs[i]
            n += 1
        elif i < npts - 1 and gs[i] * gs[i + 1] < 0.0:
            left = xs[i]
            right = xs[i + 1]
            gl = gs[i]
            it = 0
            while right - left > xtol and it < MAX_BISECT:
                mid = 0.5 * (left + right)
                gm = _quartic_g(mid, a, b, c, k)
                if gm == 0.0:
                    left = mid
                    right = mid
                elif (gm < 0.0) == (gl < 0.0):
                    left = mid
                    gl = gm
                else:
                    right = mid
                it += 1
            out[n] = 0.5 * (left + right)
            n += 1

    # double roots do not change sign; look for local minima of |g| and
    # locate them as sign changes of g'
    for i in range(1, npts - 1):
        gi = gs[i]
        if gi == 0.0:
            continue
        if gs[i - 1] * gi > 0.0 and gs[i + 1] * gi > 0.0:
            if abs(gi) <= abs(gs[i - 1]) and abs(gi) <= abs(gs[i + 1]):
                left = xs[i - 1]
                right = xs[i + 1]
                dl = _quartic_dg(left, a, b, c)
                dr = _quartic_dg(right, a, b, c)
                if dl * dr < 0.0:
                    it = 0
                    while right - left > xtol and it < MAX_BISECT:
                        mid = 0.5 * (left + right)
                        dm = _quartic_dg(mid, a, b, c)
                        if dm == 0.0:
                            left = mid
                            right = mid
                        elif (dm < 0.0) == (dl < 0.0):
                            left = mid
                            dl = dm
                        else:
                            right = mid
                        it += 1
                    xr = 0.5 * (left + right)
                    if abs(_quartic_g(xr, a, b, c, k)) <= TOUCH_REL * k:
                        out[n] = xr
                        n += 1

    found = np.sort(out[:n])
    res = np.empty(n)
    m = 0
    for i in range(n):
        if m == 0 or found[i] - res[m - 1] > DEDUPE_TOL:
            res[m] = found[i]
            m += 1
    return res[:m]


def _bisect_numpy(func, left, right, fl, xtol):
    left = left.copy()
    right = right.copy()
    fl = fl.copy()
    for _ in range(MAX_BISECT):
        active = right - left > xtol
        if not active.any():
            break
        mid = 0.5 * (left + right)
        fm = func(mid)
        hit = fm == 0.0
        same = ((fm < 0.0) == (fl < 0.0)) & ~hit
        upd_left = active & (same | hit)
        upd_right = active & (~same | hit)
        left = np.where(upd_left, mid, left)
        fl = np.where(active & same, fm, fl)
        right = np.where(upd_right, mid, right)
    return 0.5 * (left + right)


def quartic_roots_numpy(a, b, npts, xtol):
    """Vectorized twin of :func:`quartic_roots_jit`."""
    a = float(a)
    b = float(b)
    lo = max(0.0, b - (1.0 - a))
    hi = min(a, b)
    c = 1.0 - a - b
    k = (a * b * (1.0 - a) * (1.0 - b)) ** 2
    xs = lo + (hi - lo) * np.arange(npts) / (npts - 1)

    def g(x):
        return x * (a - x) * (b - x) * (c + x) - k

    def dg(x):
        f1, f2, f3, f4 = x, a - x, b - x, c + x
        return f2 * f3 * f4 - f1 * f3 * f4 - f1 * f2 * f4 + f1 * f2 * f3

    gs = g(xs)
    pieces = [xs[gs == 0.0]]

    idx = np.nonzero(gs[:-1] * gs[1:] < 0.0)[0]
    if idx.size:
        pieces.append(_bisect_numpy(g, xs[idx], xs[idx + 1], gs[idx], xtol))

    mid = gs[1:-1]
    cand = (
        (mid != 0.0)
        & (gs[:-2] * mid > 0.0)
        & (gs[2:] * mid > 0.0)
        & (np.abs(mid) <= np.abs(gs[:-2]))
        & (np.abs(mid) <= np.abs(gs[2:]))
    )
    tidx = np.nonzero(cand)[0] + 1
    if tidx.size:
        left = xs[tidx - 1]
        right = xs[tidx + 1]
        dl = dg(left)
        dr = dg(right)
        ok = dl * dr < 0.0
        if ok.any():
            xr = _bisect_numpy(dg, left[ok], right[ok], dl[ok], xtol)
            pieces.append(xr[np.abs(g(xr)) <= TOUCH_REL * k])

    found = np.sort(np.concatenate(pieces))
    res: list[float] = []
    for x in found:
        if not res or x - res[-1] > DEDUPE_TOL:
            res.append(float(x))
    return np.array(res)


def quartic_residual(a, b, x):
    """g(x) = x(a-x)(b-x)(1-a-b+x) - (ab(1-a)(1-b))^2, broadcasting."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    return x * (a - x) * (b - x) * (1.0 - a - b + x) - (a * b * (1.0 - a) * (1.0 - b)) ** 2


# ---------------------------------------------------------------------------
# tilde closed-form pipeline
# ---------------------------------------------------------------------------

@njit
def _disc_uv(u, v):
    """T^3 + Y^2 written in u = 4a(1-a), v = 4b(1-b).

    The direct form subtracts two numbers close to 1 near the corners of the
    square, leaving sqrt(eps) noise in sqrt(-disc); this form is the same
    polynomial with that cancellation removed.
    """
    uv = u * v
    d = u - v
    poly = -16.0 * d * d - 8.0 * uv * (u + v) + 11.0 * uv * uv + uv * uv * (u + v) + uv * uv * uv
    return (27.0 / 1024.0) * poly


@njit
def tilde_pipeline_jit(pa, pb):
    """Evaluate T, S, Y, T^3+Y^2, V and x on flat arrays of probabilities."""
    n = pa.shape[0]
    t_out = np.empty(n)
    s_out = np.empty(n)
    y_out = np.empty(n)
    disc_out = np.empty(n)
    v_out = np.empty(n, dtype=np.complex128)
    x_out = np.empty(n)
    for i in range(n):
        a = pa[i]
        b = pb[i]
        ga = 2.0 * a - 1.0
        gb = 2.0 * b - 1.0
        ga2 = ga * ga
        gb2 = gb * gb
        t = (3.0 - ga2) * (3.0 - gb2) / 8.0 - 1.5
        s = -(5.0 / 32.0) * ((1.8 - ga2) * (1.8 - gb2) - 3.24 + 9.0)
        y = ga * gb * s
        disc = _disc_uv(4.0 * a * (1.0 - a), 4.0 * b * (1.0 - b))
        r = math.sqrt(-disc) if disc < 0.0 else 0.0
        z = complex(y, r)
        v = 2.0 * W2 * cmath.exp(cmath.log(z) / 3.0)
        x = a * b + (v.real - ga * gb) / 3.0
        lo = max(0.0, b - (1.0 - a))
        hi = min(a, b)
        if x < lo and x > lo - X_CLAMP:
            x = lo
        elif x > hi and x < hi + X_CLAMP:
            x = hi
        t_out[i] = t
        s_out[i] = s
        y_out[i] = y
        disc_out[i] = disc
        v_out[i] = v
        x_out[i] = x
    return t_out, s_out, y_out, disc_out, v_out, x_out


def tilde_pipeline_numpy(pa, pb):
    """Vectorized twin of :func:`tilde_pipeline_jit`."""
    pa = np.asarray(pa, dtype=float)
    pb = np.asarray(pb, dtype=float)
    ga = 2.0 * pa - 1.0
    gb = 2.0 * pb - 1.0
    ga2 = ga * ga
    gb2 = gb * gb
    t = (3.0 - ga2) * (3.0 - gb2) / 8.0 - 1.5
    s = -(5.0 / 32.0) * ((1.8 - ga2) * (1.8 - gb2) - 3.24 + 9.0)
    y = ga * gb * s
    disc = _disc_uv(4.0 * pa * (1.0 - pa), 4.0 * pb * (1.0 - pb))
    r = np.sqrt(np.where(disc < 0.0, -disc, 0.0))
    z = np.empty(pa.shape, dtype=np.complex128)
    # build the complex number component-wise so a zero imaginary part is +0.0
    # and the principal log sits on the upper side of the branch cut
    z.real = y
    z.imag = r
    v = 2.0 * W2 * np.exp(np.log(z) / 3.0)
    x = pa * pb + (v.real - ga * gb) / 3.0
    lo = np.maximum(0.0, pb - (1.0 - pa))
    hi = np.minimum(pa, pb)
    x = np.where((x < lo) & (x > lo - X_CLAMP), lo, x)
    x = np.where((x > hi) & (x < hi + X_CLAMP), hi, x)
    return t, s, y, disc, v, x


# ---------------------------------------------------------------------------
# GF(2) Moebius transform
# ---------------------------------------------------------------------------

@njit
def mobius_jit(table):
    """In GF(2), coefficient[m] = XOR of table[w] over all w that are subsets of m."""
    out = table.copy()
    n = out.shape[0]
    step = 1
    while step < n:
        for start in range(0, n, 2 * step):
            for j in range(start + step, start + 2 * step):
                out[j] ^= out[j - step]
        step *= 2
    return out


def mobius_numpy(table):
    """Vectorized twin of :func:`mobius_jit` via reshaping along each bit."""
    out = np.array(table, dtype=np.uint8, copy=True)
    n = out.shape[0]
    step = 1
    while step < n:
        view = out.reshape(-1, 2, step)
        view[:, 1, :] ^= view[:, 0, :]
        step *= 2
    return out


if USE_JIT:
    quartic_roots = quartic_roots_jit
    tilde_pipeline = tilde_pipeline_jit
    mobius = mobius_jit
else:
    quartic_roots = quartic_roots_numpy
    tilde_pipeline = tilde_pipeline_numpy
    mobius = mobius_numpy
