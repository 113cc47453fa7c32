"""Numba detection and backend selection.

The hot loops in :mod:`questions.kernels` exist twice: a numba ``@njit``
version and a vectorized numpy version.  Which one the public API uses is
decided once, at import time:

* ``QUESTIONS_NO_JIT=1`` (or ``true``/``yes``) forces the numpy path.
* If numba cannot be imported, the numpy path is used and a warning is issued.

Both implementations are always importable so tests and the benchmark can
compare them side by side.
"""
from __future__ import annotations

import os
import warnings

ENV_FLAG = "QUESTIONS_NO_JIT"

try:
    from numba import njit as _numba_njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False
    _numba_njit = None


def _flag_set(value: str | None) -> bool:
    return value is not None and value.strip().lower() in {"1", "true", "yes", "on"}


JIT_DISABLED = _flag_set(os.environ.get(ENV_FLAG))

if not NUMBA_AVAILABLE and not JIT_DISABLED:  # pragma: no cover
    warnings.warn(
        "numba is not installed; using the pure-numpy kernels", RuntimeWarning
    )

USE_JIT = NUMBA_AVAILABLE and not JIT_DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise an identity decorator.

    Compilation is lazy, so importing this package never triggers a compile
    even when the numpy backend was selected.
    """
    if NUMBA_AVAILABLE:
        kwargs.setdefault("cache", True)
        return _numba_njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def decorator(func):
        return func

    return decorator


def backend_name() -> str:
    return "numba" if USE_JIT else "numpy"
