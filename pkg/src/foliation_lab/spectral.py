"""Eigenvalue extraction for weighted-Hermitian operators and spectrum comparison."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .operators import WeightedOperator

# Relative symmetrization residual above which an eigensolve is refused.
SYMMETRIZATION_TOLERANCE = 1e-8

# Eigenvalues this close to the window edge are included on both sides of a
# comparison, so near-integer spectra behave consistently at integer windows.
WINDOW_EDGE_SLACK = 1e-6


class OperatorSymmetryError(ValueError):
    """The operator failed its weighted-Hermitian invariant; assembly bug."""


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted real spectrum with the trusted window and grid provenance."""

    eigenvalues: np.ndarray
    window: float
    grid_size: int
    operator_label: str

    def __post_init__(self):
        object.__setattr__(
            self, "eigenvalues", np.sort(np.asarray(self.eigenvalues, dtype=np.float64))
        )

    def in_window(self, window: float | None = None) -> np.ndarray:
        limit = self.window if window is None else window
        values = self.eigenvalues
        return values[np.abs(values) <= limit + WINDOW_EDGE_SLACK]

    def to_csv(self, path, window: float | None = None) -> None:
        """One trusted eigenvalue per row, preceded by a comment header."""
        values = self.in_window(window)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(
                f"# operator={self.operator_label},grid={self.grid_size},"
                f"window={self.window if window is None else window:.17g},tag=inv\n"
            )
            handle.write("eigenvalue\n")
            for value in values:
                handle.write(f"{value:.17g}\n")

    def to_json(self, path, window: float | None = None) -> None:
        values = self.in_window(window)
        payload = {
            "operator_label": self.operator_label,
            "grid_size": self.grid_size,
            "window": self.window if window is None else window,
            "tag": "inv",
            "n_total": int(self.eigenvalues.size),
            "eigenvalues": [float(v) for v in values],
        }
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")


def eigenvalues_weighted(op: WeightedOperator) -> SpectrumReport:
    """Full real spectrum of a weighted-Hermitian operator.

    Solves the Hermitian problem W^{1/2} M W^{-1/2} and refuses operators
    whose symmetrization residual exceeds the tolerance (that signals an
    assembly bug, not a numerical marginality).
    """
    residual = op.symmetry_residual()
    if residual > SYMMETRIZATION_TOLERANCE:
        raise OperatorSymmetryError(
            f"operator {op.label!r} is not symmetric in its weighted metric: "
            f"relative residual {residual:.3e} > {SYMMETRIZATION_TOLERANCE:.0e}"
        )
    sym = op.symmetrized()
    hermitian = 0.5 * (sym + sym.conj().T)
    values = np.linalg.eigvalsh(hermitian)
    return SpectrumReport(
        eigenvalues=values,
        window=op.n_points / 8.0,
        grid_size=op.n_points,
        operator_label=op.label,
    )


def spectrum_compare(a: SpectrumReport, b: SpectrumReport, window: float) -> float:
    """Maximum deviation of the two sorted spectra restricted to [-window, window].

    Returns math.inf as the sentinel when the in-window multiplicity counts
    disagree (a structurally different spectrum, not a numeric deviation).
    """
    va = a.in_window(window)
    vb = b.in_window(window)
    if va.size != vb.size:
        return math.inf
    if va.size == 0:
        return 0.0
    return float(np.max(np.abs(va - vb)))
