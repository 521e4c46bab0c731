"""Backend selection and agreement for the grid-evaluation kernels."""

import os
import subprocess
import sys

import numpy as np
import pytest

from foliation_lab import _kernels


def _term_data():
    rng = np.random.default_rng(5150)
    n_terms = 6
    return (
        rng.integers(-3, 4, n_terms).astype(np.float64),
        rng.integers(-3, 4, n_terms).astype(np.float64),
        rng.uniform(0.01, 0.2, n_terms),
        rng.uniform(0.0, 2 * np.pi, n_terms),
        rng.uniform(0.0, 2 * np.pi, n_terms),
    )


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")
class TestBackendAgreement:
    def test_sample_profile(self):
        nodes = 2 * np.pi * np.arange(96) / 96
        args = (2.0, *_term_data(), nodes, nodes)
        np.testing.assert_allclose(
            _kernels.sample_profile_numpy(*args),
            _kernels.sample_profile_numba(*args),
            atol=1e-14,
        )

    def test_profile_min(self):
        nodes = 2 * np.pi * np.arange(96) / 96
        args = (2.0, *_term_data(), nodes, nodes)
        assert _kernels.profile_min_numpy(*args) == pytest.approx(
            _kernels.profile_min_numba(*args), abs=1e-14
        )


def test_env_flag_selects_numpy_backend():
    code = (
        "from foliation_lab import _kernels\n"
        "assert not _kernels.USING_NUMBA\n"
        "assert _kernels.sample_profile is _kernels.sample_profile_numpy\n"
        "from foliation_lab import MetricProfile, ProfileTerm\n"
        "p = MetricProfile(2.0, (ProfileTerm(0, 1, 1.0),))\n"
        "assert p.min_value(64) > 0\n"
        "print('numpy backend ok')\n"
    )
    env = dict(os.environ, FOLIATION_LAB_DISABLE_NUMBA="1")
    result = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert result.returncode == 0, result.stderr
    assert "numpy backend ok" in result.stdout


def test_default_backend_is_numba_when_available():
    if _kernels.HAVE_NUMBA and not _kernels._env_disables_numba():
        assert _kernels.USING_NUMBA
