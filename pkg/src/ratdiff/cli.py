"""Command-line front end.

    ratdiff <command> --alpha A --beta B [--seed Z-1,Z0] [--steps N]
            [--config FILE] [--out PATH] [--format csv|json|svg]
            [--rng-seed K]

Commands: orbit, equilibria, stability, trichotomy, period, lyapunov,
scan, grid, identities.  A config file supplies the same keys as the
flags (flat `key = value` lines); explicit flags win.  Exit codes:
0 success, 2 usage error, 3 numeric failure (singular or escaped orbit
where the command needs a completed one).
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from .analysis import (
    EscapedOrbit,
    SingularOrbit,
    detect_cycle,
    lyapunov_max,
)
from .core import IterationSettings, Orbit, OrbitSeed, Parameters, SingularError, iterate
from .invariants import HypothesisError, check_identities, trichotomy
from .scan import ComplexRect, GridSpec, classification_grid, scan_margin
from .serialize import (
    FormatError,
    ResultEnvelope,
    RunSpec,
    emit,
    format_complex,
    parse_complex,
)
from .stability import classify, equilibria, equilibrium_residual, linearization

__all__ = ["UsageError", "parse_args", "execute", "main"]

_DEFAULT_STEPS = {
    "orbit": 1000,
    "period": 20_000,
    "identities": 100,
    "grid": 4000,
}


class UsageError(Exception):
    """Bad flag combination; maps to exit code 2."""


def _complex_flag(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed_flag(text: str) -> tuple[complex, complex]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"seed must be two comma-separated complex literals, got {text!r}"
        )
    return (_complex_flag(parts[0]), _complex_flag(parts[1]))


def _rect_flag(text: str) -> ComplexRect:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"rectangle must be re_min,re_max,im_min,im_max, got {text!r}"
        )
    try:
        return ComplexRect(*(float(p) for p in parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _resolution_flag(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"resolution must be NXxNY, got {text!r}"
        )
    try:
        nx, ny = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"resolution must be NXxNY, got {text!r}")
    if nx < 1 or ny < 1:
        raise argparse.ArgumentTypeError("resolution must be at least 1x1")
    return nx, ny


_CONVERTERS = {
    "alpha": _complex_flag,
    "beta": _complex_flag,
    "seed": _seed_flag,
    "steps": int,
    "branch": str,
    "alpha-rect": _rect_flag,
    "beta-rect": _rect_flag,
    "rect": _rect_flag,
    "vary": str,
    "resolution": _resolution_flag,
    "budget": int,
    "rng-seed": int,
    "transient": int,
    "sample": int,
    "out": str,
    "format": str,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratdiff",
        description="simulate and analyze the guarded rational recurrence "
                    "z[n+1] = (a + a*z[n] + b*z[n-1]) / (1 + z[n])",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    format_choices = ("csv", "json", "svg")

    def common(p, *, seed_append=False):
        p.add_argument("--alpha", type=_complex_flag, default=None)
        p.add_argument("--beta", type=_complex_flag, default=None)
        if seed_append:
            p.add_argument("--seed", type=_seed_flag, action="append", default=None,
                           help="z[-1],z[0] pair; repeatable")
        p.add_argument("--config", default=None, help="flat key=value file")
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=format_choices, default=None)
        p.add_argument("--rng-seed", dest="rng_seed", type=int, default=None)

    p = sub.add_parser("orbit", help="iterate the map and record the trajectory")
    common(p, seed_append=True)
    p.add_argument("--steps", type=int, default=None)

    for name, desc in (
        ("equilibria", "fixed points of the map"),
        ("stability", "linearization, Clark margins, and root verdicts"),
        ("trichotomy", "|beta| vs |alpha+1| outcome prediction"),
    ):
        p = sub.add_parser(name, help=desc)
        common(p)

    p = sub.add_parser("period", help="detect the minimal locked cycle")
    common(p, seed_append=True)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("lyapunov", help="largest Lyapunov exponent (tangent method)")
    common(p, seed_append=True)
    p.add_argument("--transient", type=int, default=None)
    p.add_argument("--sample", type=int, default=None)

    p = sub.add_parser("scan", help="margin extrema over parameter rectangles")
    common(p)
    p.add_argument("--branch", choices=("minus", "plus"), default=None)
    p.add_argument("--alpha-rect", dest="alpha_rect", type=_rect_flag, default=None)
    p.add_argument("--beta-rect", dest="beta_rect", type=_rect_flag, default=None)
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("grid", help="classification grid over seeds or a parameter")
    common(p, seed_append=True)
    p.add_argument("--vary", choices=("seed", "alpha", "beta"), default=None)
    p.add_argument("--rect", type=_rect_flag, default=None)
    p.add_argument("--resolution", type=_resolution_flag, default=None)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("identities", help="orbit identity residuals for beta = alpha+1")
    common(p, seed_append=True)
    p.add_argument("--steps", type=int, default=None)

    return parser


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _apply_config(args: argparse.Namespace, config: dict[str, str]) -> None:
    for key, raw in config.items():
        if key not in _CONVERTERS:
            raise UsageError(f"config key {key!r} is not a known flag")
        dest = key.replace("-", "_")
        if not hasattr(args, dest) or getattr(args, dest) is not None:
            continue  # flag not applicable to this command, or explicitly set
        convert = _CONVERTERS[key]
        try:
            value = convert(raw)
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"config key {key!r}: {exc}") from None
        if key == "seed":
            value = [value]
        setattr(args, dest, value)


def parse_args(argv: list[str]) -> RunSpec:
    """Build a RunSpec from argv; config-file values fill unset flags."""
    args = _build_parser().parse_args(argv)
    if args.config:
        _apply_config(args, _read_config(args.config))

    command = args.command
    get = lambda name, default=None: getattr(args, name, None) if getattr(args, name, None) is not None else default

    steps = get("steps", _DEFAULT_STEPS.get(command))
    seeds = getattr(args, "seed", None)
    if command == "grid":
        resolution = get("resolution", (32, 32))
        nx, ny = resolution
    else:
        nx = ny = None

    # randomized runs must carry their rng seed in the envelope echo
    rng_seed = get("rng_seed")
    randomized = command == "scan" or (
        command in ("orbit", "period", "lyapunov", "identities") and not seeds
    )
    if rng_seed is None and randomized:
        rng_seed = 0

    return RunSpec(
        command=command,
        alpha=get("alpha"),
        beta=get("beta"),
        seeds=tuple(seeds) if seeds else None,
        steps=steps,
        branch=get("branch"),
        alpha_rect=get("alpha_rect"),
        beta_rect=get("beta_rect"),
        rect=get("rect"),
        vary=get("vary"),
        nx=nx,
        ny=ny,
        budget=get("budget"),
        rng_seed=rng_seed,
        n_transient=get("transient"),
        n_sample=get("sample"),
        out=get("out"),
        format=get("format", "json"),
    )


def _need(spec: RunSpec, **values):
    missing = [f"--{name.replace('_', '-')}" for name, v in values.items() if v is None]
    if missing:
        raise UsageError(f"{spec.command}: missing required flag(s) {', '.join(missing)}")


def _params(spec: RunSpec) -> Parameters:
    _need(spec, alpha=spec.alpha, beta=spec.beta)
    return Parameters(spec.alpha, spec.beta)


def _seed_list(spec: RunSpec) -> list[OrbitSeed]:
    if spec.seeds:
        return [OrbitSeed(a, b) for a, b in spec.seeds]
    rng = np.random.default_rng(spec.rng_seed or 0)
    vals = rng.uniform(-1, 1, 4)
    return [OrbitSeed(complex(vals[0], vals[1]), complex(vals[2], vals[3]))]


def _orbit_dict(orbit: Orbit) -> dict:
    return {
        "seed": [format_complex(orbit.seed.z_minus1), format_complex(orbit.seed.z_0)],
        "status": orbit.status,
        "stop_step": orbit.stop_step,
        "points": [format_complex(z) for z in orbit.points],
    }


def _run_orbit(spec: RunSpec) -> dict:
    params = _params(spec)
    settings = IterationSettings(max_steps=spec.steps)
    orbits = [iterate(params, seed, settings) for seed in _seed_list(spec)]
    return {"kind": "orbit", "orbits": [_orbit_dict(o) for o in orbits]}


def _run_equilibria(spec: RunSpec) -> dict:
    params = _params(spec)
    entries = []
    for eq in equilibria(params):
        try:
            residual = equilibrium_residual(params, eq.z_bar)
        except SingularError:
            residual = None
        entries.append({
            "z": format_complex(eq.z_bar),
            "branch": eq.branch,
            "coincident": eq.coincident,
            "residual": residual,
        })
    return {"kind": "equilibria", "equilibria": entries}


def _run_stability(spec: RunSpec) -> dict:
    params = _params(spec)
    reports = []
    for eq in equilibria(params):
        coeffs = linearization(params, eq)
        verdict = classify(params, eq)
        reports.append({
            "branch": eq.branch,
            "z": format_complex(eq.z_bar),
            "A": format_complex(coeffs.A),
            "C": format_complex(coeffs.C),
            "clark_margin": coeffs.clark_margin,
            "clark_holds": verdict.clark_holds,
            "spectral": verdict.spectral,
            "roots": [format_complex(r) for r in verdict.roots],
        })
    return {"kind": "stability", "reports": reports}


def _run_trichotomy(spec: RunSpec) -> dict:
    result = trichotomy(_params(spec))
    return {
        "kind": "trichotomy",
        "verdict": result.verdict,
        "lhs": result.lhs,
        "rhs": result.rhs,
    }


def _run_period(spec: RunSpec) -> dict:
    params = _params(spec)
    seed = _seed_list(spec)[0]
    orbit = iterate(params, seed, IterationSettings(max_steps=spec.steps))
    if orbit.status != "completed":
        raise _NumericFailure(f"orbit {orbit.status} at step {orbit.stop_step}; "
                              "period detection needs a completed orbit")
    report = detect_cycle(orbit)
    payload = {"kind": "period", "status": orbit.status, "period": None}
    if report is not None:
        payload.update({
            "period": report.period,
            "cycle": [format_complex(z) for z in report.cycle_points],
            "onset": report.onset,
            "residual": report.residual,
        })
    return payload


def _run_lyapunov(spec: RunSpec) -> dict:
    params = _params(spec)
    seed = _seed_list(spec)[0]
    estimate = lyapunov_max(
        params,
        seed,
        n_transient=spec.n_transient if spec.n_transient is not None else 500,
        n_sample=spec.n_sample if spec.n_sample is not None else 5000,
    )
    return {
        "kind": "lyapunov",
        "seed": [format_complex(seed.z_minus1), format_complex(seed.z_0)],
        "lambda_max": estimate.lambda_max,
        "n_transient": estimate.n_transient,
        "n_sample": estimate.n_sample,
        "converged": estimate.converged,
    }


def _run_scan(spec: RunSpec) -> dict:
    _need(spec, branch=spec.branch, alpha_rect=spec.alpha_rect,
          beta_rect=spec.beta_rect, budget=spec.budget)
    report = scan_margin(
        spec.branch, spec.alpha_rect, spec.beta_rect, spec.budget,
        rng_seed=spec.rng_seed or 0,
    )
    return {
        "kind": "scan",
        "branch": spec.branch,
        "max_value": report.max_value,
        "argmax": [format_complex(z) for z in report.argmax],
        "min_value": report.min_value,
        "argmin": [format_complex(z) for z in report.argmin],
        "samples": report.samples,
    }


def _run_grid(spec: RunSpec) -> dict:
    _need(spec, vary=spec.vary, rect=spec.rect)
    params = _params(spec)
    seed = None
    if spec.vary in ("alpha", "beta"):
        if not spec.seeds:
            raise UsageError("grid: --seed is required when varying a parameter")
        seed = OrbitSeed(*spec.seeds[0])
    grid_spec = GridSpec(
        vary=spec.vary, region=spec.rect, nx=spec.nx, ny=spec.ny,
        params=params, seed=seed,
    )
    grid = classification_grid(grid_spec, IterationSettings(max_steps=spec.steps))
    counts: dict[str, int] = {}
    for row in grid.cells:
        for verdict in row:
            counts[verdict] = counts.get(verdict, 0) + 1
    return {
        "kind": "grid",
        "vary": spec.vary,
        "region": [spec.rect.re_min, spec.rect.re_max, spec.rect.im_min, spec.rect.im_max],
        "nx": spec.nx,
        "ny": spec.ny,
        "cells": [list(row) for row in grid.cells],
        "counts": counts,
    }


def _run_identities(spec: RunSpec) -> dict:
    _need(spec, alpha=spec.alpha)
    alpha = spec.alpha
    beta = spec.beta if spec.beta is not None else alpha + 1
    params = Parameters(alpha, beta)
    seed = _seed_list(spec)[0]
    orbit = iterate(params, seed, IterationSettings(max_steps=spec.steps))
    if orbit.status == "singular":
        raise _NumericFailure(f"orbit singular at step {orbit.stop_step}")
    try:
        report = check_identities(params, orbit)
    except HypothesisError as exc:
        raise UsageError(f"--beta: {exc}") from None
    return {
        "kind": "identities",
        "status": orbit.status,
        "j_recurrence": report.j_recurrence,
        "gap_from_j": report.gap_from_j,
        "gap_recursion": report.gap_recursion,
        "gap_product": report.gap_product,
    }


class _NumericFailure(ArithmeticError):
    pass


_RUNNERS = {
    "orbit": _run_orbit,
    "equilibria": _run_equilibria,
    "stability": _run_stability,
    "trichotomy": _run_trichotomy,
    "period": _run_period,
    "lyapunov": _run_lyapunov,
    "scan": _run_scan,
    "grid": _run_grid,
    "identities": _run_identities,
}


def execute(spec: RunSpec) -> ResultEnvelope:
    """Run the spec; numeric failures land in the envelope's error field."""
    start = time.perf_counter()
    payload: dict = {}
    error = None
    try:
        payload = _RUNNERS[spec.command](spec)
    except (_NumericFailure, SingularError, SingularOrbit, EscapedOrbit) as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
    return ResultEnvelope(
        runspec=spec,
        version=__version__,
        wall_time_s=time.perf_counter() - start,
        payload=payload,
        error=error,
    )


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        spec = parse_args(argv)
    except UsageError as exc:
        print(f"ratdiff: {exc}", file=sys.stderr)
        return 2

    try:
        envelope = execute(spec)
    except UsageError as exc:
        print(f"ratdiff: {exc}", file=sys.stderr)
        return 2

    fmt = spec.format if envelope.error is None else "json"
    try:
        text = emit(envelope, fmt, spec.out)
    except FormatError as exc:
        print(f"ratdiff: --format: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"ratdiff: --out: {exc}", file=sys.stderr)
        return 3
    if spec.out is None:
        sys.stdout.write(text)
    return 0 if envelope.error is None else 3


if __name__ == "__main__":
    sys.exit(main())
