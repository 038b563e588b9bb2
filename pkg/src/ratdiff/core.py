"""Core map: one step, guarded iteration, and the tangent (Jacobian) map.

The map under study is the second-order recurrence

    z[n+1] = (alpha + alpha*z[n] + beta*z[n-1]) / (1 + z[n])

with complex parameters and complex initial conditions.  Everything in
this module is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "SingularError",
    "Parameters",
    "OrbitSeed",
    "IterationSettings",
    "Orbit",
    "TangentMatrix",
    "STATUS_COMPLETED",
    "STATUS_ESCAPED",
    "STATUS_SINGULAR",
    "step",
    "iterate",
    "tangent",
]

STATUS_COMPLETED = "completed"
STATUS_ESCAPED = "escaped"
STATUS_SINGULAR = "singular"


class SingularError(ArithmeticError):
    """The denominator 1 + z[n] is within tolerance of zero (map pole)."""


def _require_finite(name: str, z: complex) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")


@dataclass(frozen=True)
class Parameters:
    """The complex parameter pair driving the map."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        _require_finite("alpha", self.alpha)
        _require_finite("beta", self.beta)


@dataclass(frozen=True)
class OrbitSeed:
    """Initial conditions (z[-1], z[0]).

    External tables that list initial values as "z0, z1" are ingested as
    (z_minus1, z_0), so the first computed iterate lines up with those
    tables' z1 column.
    """

    z_minus1: complex
    z_0: complex

    def __post_init__(self):
        object.__setattr__(self, "z_minus1", complex(self.z_minus1))
        object.__setattr__(self, "z_0", complex(self.z_0))
        _require_finite("z_minus1", self.z_minus1)
        _require_finite("z_0", self.z_0)


@dataclass(frozen=True)
class IterationSettings:
    """Guards for iteration: step budget, escape radius, pole tolerance."""

    max_steps: int = 10_000
    escape_radius: float = 1e6
    singular_tol: float = 1e-12

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be a positive integer")
        if not self.escape_radius > 1:
            raise ValueError("escape_radius must be > 1")
        if not 0 < self.singular_tol < 1:
            raise ValueError("singular_tol must lie in (0, 1)")


@dataclass(frozen=True)
class Orbit:
    """A computed trajectory.

    points[0] is z[-1], points[1] is z[0], and points[k] for k >= 2 are
    the iterates.  status is one of the STATUS_* constants; stop_step is
    the index into points of the value that tripped the guard (None for
    a completed orbit).
    """

    seed: OrbitSeed
    points: tuple[complex, ...]
    status: str
    stop_step: int | None = None

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class TangentMatrix:
    """Jacobian of the state map (z[n], z[n-1]) -> (z[n+1], z[n]).

    Companion form: a21 = 1 and a22 = 0 by construction, so only the top
    row carries the partial derivatives of the recurrence.
    """

    a11: complex  # d z[n+1] / d z[n]
    a12: complex  # d z[n+1] / d z[n-1]
    a21: complex = field(default=1 + 0j)
    a22: complex = field(default=0j)


def step(
    params: Parameters,
    z_prev: complex,
    z_curr: complex,
    singular_tol: float = 1e-12,
) -> complex:
    """Advance one step: (z[n-1], z[n]) -> z[n+1].

    Raises SingularError when |1 + z_curr| < singular_tol.
    """
    denom = 1 + z_curr
    if abs(denom) < singular_tol:
        raise SingularError(f"map pole: |1 + z| = {abs(denom):.3e} at z = {z_curr!r}")
    return (params.alpha + params.alpha * z_curr + params.beta * z_prev) / denom


def iterate(
    params: Parameters,
    seed: OrbitSeed,
    settings: IterationSettings = IterationSettings(),
) -> Orbit:
    """Iterate the map from seed, recording every value including the seed.

    Stops after settings.max_steps computed iterates (status completed),
    when an iterate leaves the escape radius (status escaped), or when
    the next step would divide by ~0 (status singular).
    """
    alpha, beta = params.alpha, params.beta
    esc, tol = settings.escape_radius, settings.singular_tol
    points = [seed.z_minus1, seed.z_0]

    for k in (0, 1):
        if abs(points[k]) > esc:
            return Orbit(seed, tuple(points), STATUS_ESCAPED, k)

    for _ in range(settings.max_steps):
        z_prev, z_curr = points[-2], points[-1]
        denom = 1 + z_curr
        if abs(denom) < tol:
            return Orbit(seed, tuple(points), STATUS_SINGULAR, len(points) - 1)
        z_next = (alpha + alpha * z_curr + beta * z_prev) / denom
        points.append(z_next)
        if abs(z_next) > esc:
            return Orbit(seed, tuple(points), STATUS_ESCAPED, len(points) - 1)

    return Orbit(seed, tuple(points), STATUS_COMPLETED)


def tangent(
    params: Parameters,
    z_prev: complex,
    z_curr: complex,
    singular_tol: float = 1e-12,
) -> TangentMatrix:
    """Jacobian of the state map at (z_prev, z_curr).

    a11 = -beta*z_prev/(1+z_curr)^2 and a12 = beta/(1+z_curr); the map is
    holomorphic away from the pole, so these are the complex derivatives.
    """
    denom = 1 + z_curr
    if abs(denom) < singular_tol:
        raise SingularError(f"map pole: |1 + z| = {abs(denom):.3e} at z = {z_curr!r}")
    return TangentMatrix(
        a11=-params.beta * z_prev / (denom * denom),
        a12=params.beta / denom,
    )
