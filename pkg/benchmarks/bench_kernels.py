"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--grid 1001] [--oracle-points 400] [--repeat 3]

The first jit call is timed separately as compile time.  With QUESTIONS_NO_JIT
set the ``_jit`` functions run as plain Python, which makes the comparison
meaningless, so the script refuses to run.
"""
import argparse
import sys
import time

import numpy as np

from questions import _accel, kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(name, jit_fn, numpy_fn, repeat, check):
    t0 = time.perf_counter()
    ref = jit_fn()
    compile_s = time.perf_counter() - t0
    jit_s = best_of(jit_fn, repeat)
    np_s = best_of(numpy_fn, repeat)
    check(ref, numpy_fn())
    print(f"{name:<16} compile {compile_s:8.3f} s   jit {jit_s * 1e3:9.2f} ms   "
          f"numpy {np_s * 1e3:9.2f} ms   speedup {np_s / jit_s:6.1f}x")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid", type=int, default=1001, help="points per axis for the tilde grid")
    parser.add_argument("--oracle-points", type=int, default=400,
                        help="number of (pa, pb) pairs for the quartic oracle")
    parser.add_argument("--mobius-bits", type=int, default=20)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    if not _accel.NUMBA_AVAILABLE or _accel.JIT_DISABLED:
        print(f"numba unavailable or {_accel.ENV_FLAG} set; nothing to compare", file=sys.stderr)
        return 1

    g = np.linspace(0.0, 1.0, args.grid)
    a, b = (m.ravel().copy() for m in np.meshgrid(g, g, indexing="ij"))

    def same_pipeline(x, y):
        for u, v in zip(x, y):
            np.testing.assert_allclose(u, v, rtol=1e-12, atol=1e-14)

    bench("tilde_pipeline", lambda: kernels.tilde_pipeline_jit(a, b),
          lambda: kernels.tilde_pipeline_numpy(a, b), args.repeat, same_pipeline)

    rng = np.random.default_rng(0)
    pairs = rng.uniform(0.01, 0.99, (args.oracle_points, 2))

    def oracle(fn):
        return lambda: [fn(p, q, 10_000, 1e-14) for p, q in pairs]

    def same_roots(x, y):
        for u, v in zip(x, y):
            np.testing.assert_allclose(u, v, atol=1e-12)

    bench("quartic_roots", oracle(kernels.quartic_roots_jit), oracle(kernels.quartic_roots_numpy),
          args.repeat, same_roots)

    table = rng.integers(0, 2, 2 ** args.mobius_bits).astype(np.uint8)
    bench("mobius", lambda: kernels.mobius_jit(table), lambda: kernels.mobius_numpy(table),
          args.repeat, np.testing.assert_array_equal)
    return 0


if __name__ == "__main__":
    sys.exit(main())
