"""Command-line front end: profile ingestion, sweeps, and report emission.

Exit codes: 0 when every requested check passes, 1 when any verification
fails, 2 on usage or configuration errors (malformed profiles, positivity
violations, out-of-range windows).  Outputs are deterministic: fixed seeds,
fixed ordering, no timestamps, 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .basic_calculus import LeafVolumeDensity
from .bounds import bound_rows_csv, piecewise_reference, s3_bounds
from .model_spaces import GridSpec, MetricProfile, load_profile
from .operators import (
    assemble_basic_dirac_forms,
    assemble_basic_dirac_spinor,
    assemble_basic_laplacian,
)
from .spectral import eigenvalues_weighted
from .verify import run_pair_checks, run_profile_checks

DEFAULT_SEED = 7041
SEED_ENV_VAR = "FOLIATION_LAB_SEED"
BOUND_REFERENCE_TOLERANCE = 1e-6

_OPERATOR_CHOICES = (
    "dirac-spinor",
    "dirac-forms",
    "laplacian-functions",
    "laplacian-one-forms",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str = "torus"
    grid_size: int = 128
    window: float = 10.0
    profile_paths: list = field(default_factory=list)
    r_values: list = field(default_factory=list)
    output_dir: Path = Path(".")
    format: str = "csv"

    def __post_init__(self):
        if self.grid_size < 8 or self.grid_size % 2 != 0:
            raise ValueError(f"grid size must be even and >= 8, got {self.grid_size}")
        if self.window > self.grid_size / 8.0:
            raise ValueError(
                f"window {self.window} exceeds the trusted range grid/8 = {self.grid_size / 8.0}"
            )
        for r in self.r_values:
            if not r > 0.0:
                raise ValueError(f"flow parameter r must be positive, got {r}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def _seed_from_env(cli_seed: int | None) -> int:
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get(SEED_ENV_VAR, "").strip()
    if env:
        return int(env)
    return DEFAULT_SEED


def _load_profiles(paths) -> list[MetricProfile]:
    profiles = []
    for path in paths:
        if not Path(path).exists():
            raise ValueError(f"profile file not found: {path}")
        profiles.append(load_profile(path))
    return profiles


def _assemble(operator_name: str, density: LeafVolumeDensity, grid: GridSpec):
    if operator_name == "dirac-spinor":
        return assemble_basic_dirac_spinor(density, grid)
    if operator_name == "dirac-forms":
        return assemble_basic_dirac_forms(density, grid)
    if operator_name == "laplacian-functions":
        return assemble_basic_laplacian(density, grid, "function")
    return assemble_basic_laplacian(density, grid, "one_form")


def _cmd_spectrum(args) -> int:
    config = RunConfig(
        command="spectrum",
        model=args.model,
        grid_size=args.grid,
        window=args.window,
        profile_paths=[args.profile],
        output_dir=Path(args.output_dir),
        format=args.format,
    )
    if config.model != "torus":
        raise ValueError("spectrum is only assembled for the torus model")
    profile = _load_profiles(config.profile_paths)[0]
    grid = GridSpec(config.grid_size, args.spin)
    density = LeafVolumeDensity.from_profile(profile, grid)
    op = _assemble(args.operator, density, grid)
    report = eigenvalues_weighted(op)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.profile).stem
    out = config.output_dir / f"spectrum_{args.operator}_{stem}.{config.format}"
    if config.format == "csv":
        report.to_csv(out, window=config.window)
    else:
        report.to_json(out, window=config.window)
    print(f"wrote {out}")
    return 0


def _bounds_reports(r_values, resolution):
    reports = []
    for r in r_values:
        reports.extend(s3_bounds(r, resolution))
    return reports


def _bounds_all_match(reports) -> bool:
    for report in reports:
        if report.r is None:
            continue
        reference = piecewise_reference(report.r).get(report.kind)
        if reference is None:
            continue
        if abs(report.value - reference) > BOUND_REFERENCE_TOLERANCE:
            return False
    return True


def _write_bounds(reports, config: RunConfig, name: str) -> Path:
    config.output_dir.mkdir(parents=True, exist_ok=True)
    out = config.output_dir / f"{name}.{config.format}"
    if config.format == "csv":
        bound_rows_csv(reports, out)
    else:
        payload = [
            {
                "kind": report.kind,
                "r": report.r,
                "value": report.value,
                "inputs": _json_safe(report.inputs),
            }
            for report in reports
        ]
        _atomic_write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return out


def _cmd_bounds(args) -> int:
    config = RunConfig(
        command="bounds",
        model=args.model,
        r_values=list(args.r),
        output_dir=Path(args.output_dir),
        format=args.format,
    )
    if config.model != "s3":
        raise ValueError("bounds are evaluated on the s3 model")
    reports = _bounds_reports(config.r_values, args.resolution)
    out = _write_bounds(reports, config, "bounds")
    print(f"wrote {out}")
    return 0 if _bounds_all_match(reports) else 1


def _cmd_sweep(args) -> int:
    config = RunConfig(
        command="sweep",
        model=args.model,
        output_dir=Path(args.output_dir),
        format=args.format,
    )
    if config.model != "s3":
        raise ValueError("sweep is defined for the s3 model")
    if not (args.r_min > 0.0 and args.r_max > args.r_min):
        raise ValueError("need 0 < r-min < r-max")
    r_values = np.geomspace(args.r_min, args.r_max, args.count)
    reports = _bounds_reports(r_values, args.resolution)
    out = _write_bounds(reports, config, "sweep_bounds")
    print(f"wrote {out}")
    return 0 if _bounds_all_match(reports) else 1


def _verification_bundle(reports, grid: GridSpec, window: float, seed) -> dict:
    return {
        "meta": {
            "package_version": __version__,
            "grid": grid.n_points,
            "spin_structure": grid.spin_structure,
            "window": window,
            "seed": seed,
            "n_checks": len(reports),
        },
        "reports": [
            _json_safe(
                {
                    "check_name": report.check_name,
                    "tag": report.metadata.get("tag", ""),
                    "residual": report.residual,
                    "threshold": report.threshold,
                    "passed": report.passed,
                    "metadata": report.metadata,
                }
            )
            for report in reports
        ],
    }


def _run_verification(profiles, grid, window, pairs, seed) -> list:
    from .verify import random_profile_pair

    reports = []
    if len(profiles) >= 2:
        for i in range(len(profiles) - 1):
            reports.extend(run_pair_checks(profiles[i], profiles[i + 1], grid, window))
    else:
        rng = np.random.default_rng(seed)
        for _ in range(pairs):
            p1, p2 = random_profile_pair(rng)
            reports.extend(
                run_pair_checks(p1, p2, grid, window, skip_indistinct_laplacian=True)
            )
    for profile in profiles:
        reports.extend(run_profile_checks(profile, grid))
    return reports


def _cmd_verify(args) -> int:
    config = RunConfig(
        command="verify",
        grid_size=args.grid,
        window=args.window,
        profile_paths=list(args.profiles),
        output_dir=Path(args.output_dir),
        format="json",
    )
    seed = _seed_from_env(args.seed)
    profiles = _load_profiles(config.profile_paths)
    grid = GridSpec(config.grid_size, "trivial")
    reports = _run_verification(profiles, grid, config.window, args.pairs, seed)
    bundle = _verification_bundle(reports, grid, config.window, seed)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    out = config.output_dir / "verify_bundle.json"
    _atomic_write(out, json.dumps(bundle, indent=2, sort_keys=True) + "\n")
    failed = [report for report in reports if not report.passed]
    print(f"wrote {out}: {len(reports) - len(failed)}/{len(reports)} checks passed")
    return 1 if failed else 0


def _cmd_invariance(args) -> int:
    config = RunConfig(
        command="invariance",
        grid_size=args.grid,
        window=args.window,
        profile_paths=list(args.profiles),
        output_dir=Path(args.output_dir),
        format="json",
    )
    if len(config.profile_paths) != 2:
        raise ValueError("invariance needs exactly two profile files")
    p1, p2 = _load_profiles(config.profile_paths)
    grid = GridSpec(config.grid_size, "trivial")
    reports = run_pair_checks(p1, p2, grid, config.window)
    bundle = _verification_bundle(reports, grid, config.window, seed=None)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    out = config.output_dir / "invariance_bundle.json"
    _atomic_write(out, json.dumps(bundle, indent=2, sort_keys=True) + "\n")
    failed = [report for report in reports if not report.passed]
    print(f"wrote {out}: {len(reports) - len(failed)}/{len(reports)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foliation-lab",
        description="Spectral laboratory for basic Dirac operators on model flows",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="Eigenvalues of one assembled operator")
    p_spec.add_argument("--model", choices=("torus", "s3"), default="torus")
    p_spec.add_argument("--profile", required=True, help="Metric profile JSON file")
    p_spec.add_argument("--grid", type=int, default=128)
    p_spec.add_argument("--window", type=float, default=10.0)
    p_spec.add_argument("--operator", choices=_OPERATOR_CHOICES, default="dirac-spinor")
    p_spec.add_argument("--spin", choices=("trivial", "nontrivial"), default="trivial")
    p_spec.add_argument("--output-dir", default=".")
    p_spec.add_argument("--format", choices=("csv", "json"), default="csv")
    p_spec.set_defaults(func=_cmd_spectrum)

    p_inv = sub.add_parser("invariance", help="Metric-pair invariance battery")
    p_inv.add_argument("--profiles", nargs=2, required=True, metavar="PROFILE")
    p_inv.add_argument("--grid", type=int, default=128)
    p_inv.add_argument("--window", type=float, default=10.0)
    p_inv.add_argument("--output-dir", default=".")
    p_inv.set_defaults(func=_cmd_invariance)

    p_bounds = sub.add_parser("bounds", help="Sphere-flow eigenvalue bounds")
    p_bounds.add_argument("--model", choices=("torus", "s3"), default="s3")
    p_bounds.add_argument("--r", type=float, nargs="+", required=True)
    p_bounds.add_argument("--resolution", type=int, default=1000)
    p_bounds.add_argument("--output-dir", default=".")
    p_bounds.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_verify = sub.add_parser("verify", help="Full verification bundle")
    p_verify.add_argument("--all", action="store_true", help="Run every applicable check")
    p_verify.add_argument("--profiles", nargs="*", default=[], metavar="PROFILE")
    p_verify.add_argument("--grid", type=int, default=128)
    p_verify.add_argument("--window", type=float, default=10.0)
    p_verify.add_argument(
        "--pairs", type=int, default=5, help="Random profile pairs when fewer than two profiles are given"
    )
    p_verify.add_argument("--seed", type=int, default=None, help=f"Overrides ${SEED_ENV_VAR}")
    p_verify.add_argument("--output-dir", default=".")
    p_verify.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="Bounds over a log grid of flow parameters")
    p_sweep.add_argument("--model", choices=("torus", "s3"), default="s3")
    p_sweep.add_argument("--r-min", type=float, default=0.1)
    p_sweep.add_argument("--r-max", type=float, default=10.0)
    p_sweep.add_argument("--count", type=int, default=50)
    p_sweep.add_argument("--resolution", type=int, default=1000)
    p_sweep.add_argument("--output-dir", default=".")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))
