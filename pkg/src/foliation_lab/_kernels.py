"""Grid-evaluation kernels for truncated double Fourier metric profiles.

Two interchangeable backends are provided for each kernel: a numba
``@njit`` version and a pure-numpy version.  The active backend is chosen
once at import time; set ``FOLIATION_LAB_DISABLE_NUMBA=1`` to force the
numpy path (it is also used automatically when numba is unavailable).
Both backends accumulate the same factored outer-product sums, so their
results agree to round-off.
"""

from __future__ import annotations

import os

import numpy as np


def _env_disables_numba() -> bool:
    flag = os.environ.get("FOLIATION_LAB_DISABLE_NUMBA", "")
    return flag.strip().lower() in {"1", "true", "yes", "on"}


def sample_profile_numpy(constant, m, n, amp, phase_theta, phase_t, thetas, ts):
    """Evaluate constant + sum_i amp_i cos(m_i*theta + ph_i) cos(n_i*t + qh_i)."""
    out = np.full((thetas.size, ts.size), float(constant))
    for i in range(m.size):
        col = np.cos(m[i] * thetas + phase_theta[i])
        row = np.cos(n[i] * ts + phase_t[i])
        out += amp[i] * np.outer(col, row)
    return out


def profile_min_numpy(constant, m, n, amp, phase_theta, phase_t, thetas, ts):
    """Minimum of the profile over the sample grid (numpy backend)."""
    return float(
        sample_profile_numpy(constant, m, n, amp, phase_theta, phase_t, thetas, ts).min()
    )


try:
    from numba import njit

    HAVE_NUMBA = True

    @njit(cache=True)
    def _sample_profile_jit(constant, m, n, amp, phase_theta, phase_t, thetas, ts):
        n_theta = thetas.size
        n_t = ts.size
        out = np.full((n_theta, n_t), constant)
        for i in range(m.size):
            a = amp[i]
            col = np.cos(m[i] * thetas + phase_theta[i])
            row = np.cos(n[i] * ts + phase_t[i])
            for j in range(n_theta):
                cj = a * col[j]
                for k in range(n_t):
                    out[j, k] += cj * row[k]
        return out

    @njit(cache=True)
    def _profile_min_jit(constant, m, n, amp, phase_theta, phase_t, thetas, ts):
        n_theta = thetas.size
        n_t = ts.size
        n_terms = m.size
        cols = np.empty((n_terms, n_theta))
        rows = np.empty((n_terms, n_t))
        for i in range(n_terms):
            for j in range(n_theta):
                cols[i, j] = amp[i] * np.cos(m[i] * thetas[j] + phase_theta[i])
            for k in range(n_t):
                rows[i, k] = np.cos(n[i] * ts[k] + phase_t[i])
        best = np.inf
        for j in range(n_theta):
            for k in range(n_t):
                v = constant
                for i in range(n_terms):
                    v += cols[i, j] * rows[i, k]
                if v < best:
                    best = v
        return best

    def sample_profile_numba(constant, m, n, amp, phase_theta, phase_t, thetas, ts):
        return _sample_profile_jit(
            float(constant), m, n, amp, phase_theta, phase_t, thetas, ts
        )

    def profile_min_numba(constant, m, n, amp, phase_theta, phase_t, thetas, ts):
        return float(
            _profile_min_jit(float(constant), m, n, amp, phase_theta, phase_t, thetas, ts)
        )

except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False
    sample_profile_numba = None
    profile_min_numba = None


USING_NUMBA = HAVE_NUMBA and not _env_disables_numba()

if USING_NUMBA:
    sample_profile = sample_profile_numba
    profile_min = profile_min_numba
else:
    sample_profile = sample_profile_numpy
    profile_min = profile_min_numpy
