"""Benchmark: compiled Cython kernels vs the pure-numpy fallback.

Times the two hot kernels (stabilized moment tables and tapered Fourier
inversion) on workloads matching a realistic pipeline run, and checks
that both backends agree numerically while timing them.

Run with::

    python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from levy_expfun import backends


def _time(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_moment_table(n, m):
    rng = np.random.default_rng(0)
    log_a = np.log(rng.uniform(0.05, 0.55, size=n))
    v = np.linspace(-30.0, 30.0, m)
    u = 30.0
    t_py, ref = _time(backends.python_moment_table, log_a, u, v)
    if backends.BACKEND == "compiled":
        t_c, got = _time(backends.moment_table, log_a, u, v)
        err = float(np.max(np.abs(got - ref)))
    else:
        t_c, err = float("nan"), 0.0
    return t_py, t_c, err


def bench_fourier_inversion(n_x, m):
    rng = np.random.default_rng(1)
    x = np.linspace(0.05, 15.0, n_x)
    v = np.linspace(-30.0, 30.0, m)
    f = rng.normal(size=m) + 1j * rng.normal(size=m)
    taper = np.clip(1 - np.abs(v) / 30.0, 0.0, 1.0)
    t_py, ref = _time(backends.python_fourier_inversion, x, v, f, taper, 1.0, 0.3)
    if backends.BACKEND == "compiled":
        t_c, got = _time(backends.fourier_inversion, x, v, f, taper, 1.0, 0.3)
        err = float(np.max(np.abs(got - ref)))
    else:
        t_c, err = float("nan"), 0.0
    return t_py, t_c, err


def main():
    print(f"active backend: {backends.BACKEND}")
    print(f"{'kernel':<28}{'size':<18}{'numpy':>10}{'compiled':>10}"
          f"{'speedup':>9}{'max |diff|':>12}")
    for n, m in [(10_000, 201), (100_000, 201), (100_000, 1001)]:
        t_py, t_c, err = bench_moment_table(n, m)
        speed = t_py / t_c if t_c == t_c else float("nan")
        print(f"{'moment_table':<28}{f'n={n}, m={m}':<18}"
              f"{t_py * 1e3:>8.1f}ms{t_c * 1e3:>8.1f}ms{speed:>8.1f}x{err:>12.2e}")
    for n_x, m in [(200, 401), (1000, 401), (1000, 4001)]:
        t_py, t_c, err = bench_fourier_inversion(n_x, m)
        speed = t_py / t_c if t_c == t_c else float("nan")
        print(f"{'fourier_inversion':<28}{f'x={n_x}, m={m}':<18}"
              f"{t_py * 1e3:>8.1f}ms{t_c * 1e3:>8.1f}ms{speed:>8.1f}x{err:>12.2e}")


if __name__ == "__main__":
    main()
