"""Fourier-collocation differentiation on uniform periodic grids.

All routines work on the uniform grid t_j = 2*pi*j/N of an even number of
points.  Derivatives are exact for band-limited inputs whose frequencies
are strictly below N/2.

The differentiation matrix assigns the unpaired extreme frequency to +N/2
(rather than the fft default -N/2).  With that choice i*D has the simple
eigenvalue lattice {-N/2, ..., N/2 - 1}, one eigenvalue per integer, which
is the convention used throughout the operator assembly.  The functional
derivative used for real fields zeroes the extreme mode instead (the
standard real-signal convention for odd derivative orders); the two agree
on all resolved frequencies.
"""

from __future__ import annotations

import numpy as np


def wavenumbers(n_points: int) -> np.ndarray:
    """Integer frequency lattice {-N/2+1, ..., N/2} in fft ordering."""
    k = np.fft.fftfreq(n_points, d=1.0 / n_points)
    k[n_points // 2] = n_points // 2
    return k


def fourier_derivative(values: np.ndarray, order: int = 1, axis: int = -1) -> np.ndarray:
    """Spectral derivative of periodically sampled values along an axis.

    Real input yields real output.  For odd orders the extreme mode is
    annihilated; for even orders it carries the factor (-1)^(order/2)*(N/2)^order.
    """
    values = np.asarray(values)
    n = values.shape[axis]
    k = np.fft.fftfreq(n, d=1.0 / n)
    if order % 2 == 1:
        k[n // 2] = 0.0
    else:
        k[n // 2] = n // 2
    factor = (1j * k) ** order
    shape = [1] * values.ndim
    shape[axis] = n
    hat = np.fft.fft(values, axis=axis) * factor.reshape(shape)
    out = np.fft.ifft(hat, axis=axis)
    if np.isrealobj(values):
        return out.real
    return out


def differentiation_matrix(n_points: int) -> np.ndarray:
    """Dense complex first-derivative matrix D with D = F^-1 diag(i k) F."""
    k = wavenumbers(n_points)
    eye_hat = np.fft.fft(np.eye(n_points), axis=0)
    return np.fft.ifft((1j * k)[:, None] * eye_hat, axis=0)


def spinor_differentiation_matrix(n_points: int, spin_structure: str) -> np.ndarray:
    """First-derivative matrix acting on sections of the chosen spin structure.

    Trivial structure: periodic sections, plain Fourier matrix.  Nontrivial
    structure: antiperiodic sections psi = e^{i t/2} phi with phi periodic,
    giving the conjugated matrix E (D + i/2) E^-1 on sampled values of psi.
    """
    d = differentiation_matrix(n_points)
    if spin_structure == "trivial":
        return d
    if spin_structure == "nontrivial":
        t = 2.0 * np.pi * np.arange(n_points) / n_points
        half_phase = np.exp(0.5j * t)
        shifted = d + 0.5j * np.eye(n_points)
        return half_phase[:, None] * shifted * np.conj(half_phase)[None, :]
    raise ValueError(f"unknown spin structure: {spin_structure!r}")
