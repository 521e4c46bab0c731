"""Benchmark the profile-evaluation kernels: numba backend vs numpy backend.

Run with ``python benchmarks/kernel_benchmark.py``.  The numba functions are
called once before timing so compilation is excluded.
"""

import time

import numpy as np

from foliation_lab import _kernels


def _term_data(n_terms: int, rng: np.random.Generator):
    m = rng.integers(-4, 5, size=n_terms).astype(np.float64)
    n = rng.integers(-4, 5, size=n_terms).astype(np.float64)
    amp = rng.uniform(0.01, 0.1, size=n_terms)
    ph_theta = rng.uniform(0.0, 2.0 * np.pi, size=n_terms)
    ph_t = rng.uniform(0.0, 2.0 * np.pi, size=n_terms)
    return m, n, amp, ph_theta, ph_t


def _best_of(fn, repeats: int = 5) -> float:
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    rng = np.random.default_rng(42)
    grid = 1024
    nodes = 2.0 * np.pi * np.arange(grid) / grid
    print(f"grid {grid}x{grid}, numba available: {_kernels.HAVE_NUMBA}")
    header = f"{'kernel':<16}{'terms':>6}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n_terms in (2, 8, 32):
        data = _term_data(n_terms, rng)
        args = (2.0, *data, nodes, nodes)
        pairs = [("sample_profile", _kernels.sample_profile_numpy, _kernels.sample_profile_numba)]
        pairs.append(("profile_min", _kernels.profile_min_numpy, _kernels.profile_min_numba))
        for name, numpy_fn, numba_fn in pairs:
            t_numpy = _best_of(lambda: numpy_fn(*args))
            if numba_fn is None:
                print(f"{name:<16}{n_terms:>6}{t_numpy * 1e3:>12.3f}{'n/a':>12}{'':>9}")
                continue
            numba_fn(*args)  # compile outside the timed region
            t_numba = _best_of(lambda: numba_fn(*args))
            print(
                f"{name:<16}{n_terms:>6}{t_numpy * 1e3:>12.3f}{t_numba * 1e3:>12.3f}"
                f"{t_numpy / t_numba:>9.2f}"
            )


if __name__ == "__main__":
    main()
