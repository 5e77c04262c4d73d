"""Time the numba and numpy kernels on the same inputs.

    python3 benchmarks/bench_backends.py [--points 2000] [--repeat 5]
"""
import argparse
import time

import numpy as np

from alphaharm import _kernels
from alphaharm.kernel import trapezoid_theta


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(points, rng):
    alpha = 1.7
    z = 0.95 * np.sqrt(rng.uniform(size=points)) * np.exp(2j * np.pi * rng.uniform(size=points))
    w = np.abs(z) ** 2
    cpos = rng.normal(size=13) + 1j * rng.normal(size=13)
    cneg = rng.normal(size=12) + 1j * rng.normal(size=12)
    extra = (_kernels.DEFAULT_SWITCH, _kernels.series_coefficients(alpha)) + _kernels.gauss_legendre_levels()
    theta = trapezoid_theta(1024)
    fvals = np.exp(3j * theta) + 0.5 * np.exp(-2j * theta)
    return {
        "palpha_table": lambda k: k(alpha, 12, w, *extra),
        "series_eval": lambda k: k(alpha, cpos, cneg, z, *extra),
        "poisson_mean": lambda k: k(alpha, z[:200], theta, fvals),
        "modulus_mean": lambda k: k(alpha, 0.9, trapezoid_theta(1 << 16)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    names = [n for n in ("numpy", "numba") if n in _kernels.BACKENDS]
    print(f"{'kernel':<14}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for name, call in cases(args.points, rng).items():
        row = []
        for backend in names:
            kern = _kernels.BACKENDS[backend][name]
            call(kern)  # compile / warm caches
            row.append(best_of(lambda: call(kern), args.repeat))
        speed = f"{row[0] / row[1]:9.1f}x" if len(row) == 2 else ""
        print(f"{name:<14}" + "".join(f"{t * 1e3:10.2f}ms" for t in row) + f"{speed:>10}")


if __name__ == "__main__":
    main()
