"""Eigenvalue lower bounds for the basic Dirac operator and their sphere-flow values.

Five bound families are evaluated from infimum/supremum data:

* ``esti``     lambda^2 >= q/(4(q-1)) * inf(transverse scalar curvature)
* ``estima``   lambda^2 >= q/(4(q-1)) * inf(Scal_M - Scal_L + |A|^2 + |T|^2)
* ``estmflot`` lambda^2 >= q/(4(q-1)) * inf(Scal_M + |A|^2 + |kappa|^2)  (flows)
* ``minmax``   lambda^2 >= lambda^2(D_M)/2 - (n/16) * sup(|A|^2)
* ``collapse`` lambda^2 >= (q+1)/(4q) * inf(Scal_M + |A|^2)

On the sphere flows every quantity is a closed-form function of s = |z|^2,
so the extrema reduce to one-dimensional optimization over [0, 1]: a
uniform scan followed by golden-section refinement.  The resulting values
reproduce the closed piecewise-in-r references.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model_spaces import (
    S3_SCALAR_CURVATURE,
    s3_a_norm_sq,
    s3_kappa_norm,
    s3_transverse_scal,
)

BOUND_KINDS = ("esti", "estima", "estmflot", "minmax", "collapse")

# First squared Dirac eigenvalue of the unit round 3-sphere: (3/2)^2.
FIRST_DIRAC_EIGENVALUE_SQ_S3 = 2.25

# Codimension and transverse dimension of a flow on a 3-manifold.
S3_FLOW_Q = 2
S3_FLOW_N = 2

_REQUIRED_QUANTITIES = {
    "esti": ("inf_scal_transverse",),
    "estima": ("inf_scal_diff_plus_tensors",),
    "estmflot": ("inf_scal_plus_tensors",),
    "minmax": ("lambda_dm_sq", "sup_a_sq"),
    "collapse": ("inf_scal_plus_a_sq",),
}

GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class BoundReport:
    """One evaluated lower bound for lambda^2 with its input extrema."""

    kind: str
    value: float
    inputs: dict = field(default_factory=dict)
    r: float | None = None


def eval_bound(kind: str, q: int, n: int, quantities: dict) -> BoundReport:
    """Evaluate one bound formula from the extrema it requires.

    Raises ValueError naming the first missing quantity.
    """
    if kind not in BOUND_KINDS:
        raise ValueError(f"unknown bound kind {kind!r}; expected one of {BOUND_KINDS}")
    if q < 2:
        raise ValueError(f"codimension q must be >= 2, got {q}")
    for symbol in _REQUIRED_QUANTITIES[kind]:
        if symbol not in quantities:
            raise ValueError(f"bound {kind!r} requires missing quantity {symbol!r}")
    if kind == "esti":
        value = q / (4.0 * (q - 1.0)) * quantities["inf_scal_transverse"]
    elif kind == "estima":
        value = q / (4.0 * (q - 1.0)) * quantities["inf_scal_diff_plus_tensors"]
    elif kind == "estmflot":
        value = q / (4.0 * (q - 1.0)) * quantities["inf_scal_plus_tensors"]
    elif kind == "minmax":
        value = 0.5 * quantities["lambda_dm_sq"] - (n / 16.0) * quantities["sup_a_sq"]
    else:  # collapse
        value = (q + 1.0) / (4.0 * q) * quantities["inf_scal_plus_a_sq"]
    inputs = dict(quantities)
    inputs["q"] = q
    inputs["n"] = n
    return BoundReport(kind=kind, value=float(value), inputs=inputs)


def golden_section_min(fn, a: float, b: float, tol: float = 1e-10):
    """Deterministic golden-section minimizer on [a, b]; returns (x, fn(x))."""
    inv = 1.0 / GOLDEN_RATIO
    c = b - (b - a) * inv
    d = a + (b - a) * inv
    fc = fn(c)
    fd = fn(d)
    while abs(b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * inv
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * inv
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x)


def minimize_on_interval(fn, a: float, b: float, resolution: int):
    """Uniform scan (endpoints included) plus golden-section refinement."""
    if resolution < 100:
        raise ValueError(f"resolution must be >= 100, got {resolution}")
    xs = np.linspace(a, b, resolution)
    values = np.array([fn(x) for x in xs])
    best = int(np.argmin(values))
    lo = xs[max(best - 1, 0)]
    hi = xs[min(best + 1, resolution - 1)]
    x_ref, f_ref = golden_section_min(fn, lo, hi)
    if values[best] < f_ref:
        return float(xs[best]), float(values[best])
    return float(x_ref), float(f_ref)


def maximize_on_interval(fn, a: float, b: float, resolution: int):
    x, negative = minimize_on_interval(lambda s: -fn(s), a, b, resolution)
    return x, -negative


def s3_bounds(r: float, resolution: int = 1000) -> list[BoundReport]:
    """All four sphere-flow bounds at parameter r via numeric extrema in s."""
    if not r > 0.0:
        raise ValueError(f"flow parameter r must be positive, got {r}")

    def scal_transverse(s):
        return float(s3_transverse_scal(r, s))

    def scal_plus_tensors(s):
        kappa = float(s3_kappa_norm(r, s))
        return S3_SCALAR_CURVATURE + float(s3_a_norm_sq(r, s)) + kappa * kappa

    def scal_plus_a_sq(s):
        return S3_SCALAR_CURVATURE + float(s3_a_norm_sq(r, s))

    def a_sq(s):
        return float(s3_a_norm_sq(r, s))

    q, n = S3_FLOW_Q, S3_FLOW_N
    reports = []

    s_min, inf_scal = minimize_on_interval(scal_transverse, 0.0, 1.0, resolution)
    report = eval_bound("esti", q, n, {"inf_scal_transverse": inf_scal})
    reports.append(BoundReport(report.kind, report.value, {**report.inputs, "arg_s": s_min}, r))

    s_min, inf_combined = minimize_on_interval(scal_plus_tensors, 0.0, 1.0, resolution)
    report = eval_bound("estmflot", q, n, {"inf_scal_plus_tensors": inf_combined})
    reports.append(BoundReport(report.kind, report.value, {**report.inputs, "arg_s": s_min}, r))

    s_max, sup_a = maximize_on_interval(a_sq, 0.0, 1.0, resolution)
    report = eval_bound(
        "minmax", q, n, {"lambda_dm_sq": FIRST_DIRAC_EIGENVALUE_SQ_S3, "sup_a_sq": sup_a}
    )
    reports.append(BoundReport(report.kind, report.value, {**report.inputs, "arg_s": s_max}, r))

    s_min, inf_collapse = minimize_on_interval(scal_plus_a_sq, 0.0, 1.0, resolution)
    report = eval_bound("collapse", q, n, {"inf_scal_plus_a_sq": inf_collapse})
    reports.append(BoundReport(report.kind, report.value, {**report.inputs, "arg_s": s_min}, r))

    return reports


def piecewise_reference(r: float) -> dict:
    """Closed piecewise-in-r reference values for the sphere-flow bounds.

    At r = 1 both branches agree and the common limit is returned.
    """
    if not r > 0.0:
        raise ValueError(f"flow parameter r must be positive, got {r}")
    if r < 1.0:
        return {
            "esti": 1.0 + 3.0 * r * r,
            "estmflot": r * r + 3.0,
            "minmax": 9.0 / 8.0 - 1.0 / (4.0 * r * r),
        }
    return {
        "esti": 4.0,
        "estmflot": 1.0 / (r * r) + 3.0,
        "minmax": 9.0 / 8.0 - r * r / 4.0,
    }


def bound_rows_csv(reports: list[BoundReport], path) -> None:
    """CSV rows kind, r, value, reference_value, abs_error (reference when known)."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("kind,r,value,reference_value,abs_error\n")
        for report in reports:
            r_text = "" if report.r is None else f"{report.r:.17g}"
            reference_text = ""
            error_text = ""
            if report.r is not None:
                reference = piecewise_reference(report.r).get(report.kind)
                if reference is not None:
                    reference_text = f"{reference:.17g}"
                    error_text = f"{abs(report.value - reference):.17g}"
            handle.write(
                f"{report.kind},{r_text},{report.value:.17g},{reference_text},{error_text}\n"
            )
