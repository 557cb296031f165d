"""Compare the numba and pure-numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat 7] [--scale 1]

Each kernel is called once before timing so JIT compilation is excluded.
The best wall time of ``--repeat`` runs is reported.
"""

import argparse
import timeit

import numpy as np

from cpred import _kernels, knots_from_data
from cpred._accel import HAS_NUMBA


def cases(scale):
    rng = np.random.default_rng(0)
    n = 20_000 * scale
    x = np.sort(rng.uniform(0, 1, n))
    knots = knots_from_data(x, order=4, df=24)
    full = np.asarray(knots.full)
    a = _kernels.basis_values_numpy(x[:2000 * scale], full, 4)
    b = _kernels.basis_values_numpy(x[::-1][:2000 * scale], full, 4)
    m = 60
    diag, sub = rng.uniform(0.1, 1, m), rng.uniform(0.1, 1, m)
    slices = np.ascontiguousarray(rng.normal(size=(m + 1, 400 * scale)))
    return {
        f"basis_values  n={n}, k=4, 24 cols": ("basis_values", (x, full, 4)),
        f"row_kronecker {a.shape[0]} rows, 24x24": ("row_kronecker", (a, b)),
        f"bidiag_project m={m}, {slices.shape[1]} slices": ("bidiag_project", (diag, sub, slices)),
    }


def best(fn, args, repeat):
    fn(*args)
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=7)
    parser.add_argument("--scale", type=int, default=1)
    opts = parser.parse_args()
    if not HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<44}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}")
    for label, (name, args) in cases(opts.scale).items():
        t_np = best(getattr(_kernels, f"{name}_numpy"), args, opts.repeat)
        t_nb = best(getattr(_kernels, f"{name}_numba"), args, opts.repeat)
        print(f"{label:<44}{t_np * 1e3:>10.2f}{t_nb * 1e3:>10.2f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
