"""n-dimensional rotationally symmetric comparison spaces.

A model space pairs a dimension n >= 2 with a positive warping function;
its metric balls have volume

    vol B_t = omega_{n-1} * integral_0^t f(r)**(n-1) dr

with omega_{n-1} the unit (n-1)-sphere volume.  The asymptotic growth
coefficient lim vol B_t / t^n is computed two independent ways: direct
extrapolation of ball-volume probes, and the closed form
(omega_{n-1}/n) (1 - c/(2 pi))**(n-1) from the total curvature c of the
underlying surface.  Their agreement is a strong end-to-end check and the
disagreement is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._extrapolation import richardson_limit
from ._quadrature import adaptive_quadrature
from .asymptotics import (
    DIVERGENCE_THRESHOLD,
    CurvatureClass,
    LimitEstimate,
    TotalCurvatureResult,
)
from .jacobi import WarpingSolution

__all__ = ["ModelSpace", "GrowthCoefficient", "unit_sphere_volume",
           "ball_volume", "ball_volumes", "growth_coefficient"]

_TWO_PI = 2.0 * math.pi


def unit_sphere_volume(n: int) -> float:
    """Volume of the unit (n-1)-sphere, 2 pi^(n/2) / Gamma(n/2), n >= 2."""
    if int(n) != n or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n}")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


@dataclass(frozen=True)
class ModelSpace:
    """Dimension n paired with a first-zero-free warping solution."""

    n: int
    f: WarpingSolution

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n}")
        if self.f.first_zero is not None:
            raise ValueError(
                "warping function has a zero: the model space is compact"
            )

    @property
    def omega(self) -> float:
        return unit_sphere_volume(self.n)


def _volumes_at(ms: ModelSpace, ts: list[float]) -> list[float]:
    """Cumulative ball volumes at an increasing list of radii.

    Quadrature panels follow the solver nodes, where the integrand
    f**(n-1) is a fixed power of the quintic interpolant; the Kronrod
    rule needs few or no refinements there.
    """
    power = ms.n - 1
    integrand = lambda rs: ms.f.f(rs) ** power
    nodes = ms.f.ts
    out = []
    total = 0.0
    prev = 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        for t in ts:
            if t > prev:
                inner = nodes[(nodes > prev) & (nodes < t)]
                panels = [prev, *map(float, inner), t]
                val, _ = adaptive_quadrature(integrand, panels,
                                             abs_tol=0.0, rel_tol=1e-10)
                total += val
                prev = t
            out.append(ms.omega * total)
    return out


def ball_volumes(ms: ModelSpace, ts) -> list[float]:
    """Ball volumes at a nondecreasing sequence of radii (one pass)."""
    radii = [float(t) for t in ts]
    if any(b < a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be nondecreasing")
    if radii and not (0.0 <= radii[0] and radii[-1] <= ms.f.t_end * (1 + 1e-15)):
        raise ValueError(
            f"radii must lie in the solution window [0, {ms.f.t_end:.6g}]"
        )
    return _volumes_at(ms, [min(t, ms.f.t_end) for t in radii])


def ball_volume(ms: ModelSpace, t: float) -> float:
    """Volume of the metric ball of radius t around the base point."""
    if not (0.0 <= t <= ms.f.t_end * (1 + 1e-15)):
        raise ValueError(
            f"radius {t:.6g} outside the solution window [0, {ms.f.t_end:.6g}]"
        )
    if t == 0.0:
        return 0.0
    return _volumes_at(ms, [min(t, ms.f.t_end)])[0]


@dataclass(frozen=True)
class GrowthCoefficient:
    """lim vol B_t / t^n by two routes.

    ``direct`` extrapolates ball-volume probes; ``closed_form`` converts
    the total curvature.  ``discrepancy`` is their absolute difference
    when both are finite, else None.
    """

    direct: LimitEstimate
    closed_form: LimitEstimate | None
    discrepancy: float | None


def growth_coefficient(ms: ModelSpace,
                       c: TotalCurvatureResult) -> GrowthCoefficient:
    """Asymptotic volume growth coefficient of the model space."""
    T = ms.f.t_end
    radii = [T / 2.0 ** k for k in range(6, -1, -1)]
    volumes = _volumes_at(ms, radii)
    probes = [v / t ** ms.n for v, t in zip(volumes, radii)]

    finite = [p for p in probes if math.isfinite(p)]
    if len(finite) < len(probes):
        direct = LimitEstimate.of_divergent(finite[-1] if finite else math.nan)
    elif all(b > a for a, b in zip(probes, probes[1:])) \
            and probes[-1] > DIVERGENCE_THRESHOLD:
        direct = LimitEstimate.of_divergent(probes[-1])
    else:
        value, err = richardson_limit(probes, ratio=2.0)
        direct = LimitEstimate(value=value, err=err)

    if c.classification is CurvatureClass.FINITE:
        # Cohn-Vossen keeps c <= 2 pi for genuine model surfaces; clamp
        # numerical overshoot so the base never goes negative
        base = max(1.0 - c.value / _TWO_PI, 0.0)
        value = ms.omega / ms.n * base ** (ms.n - 1)
        derr = 0.0
        if c.err:
            derr = (ms.omega / ms.n * (ms.n - 1)
                    * base ** (ms.n - 2) * c.err / _TWO_PI)
        closed = LimitEstimate(value=value, err=derr)
        disc = (abs(direct.value - closed.value)
                if direct.is_finite else None)
    else:
        closed = LimitEstimate(value=math.inf, err=math.inf, divergent=True)
        disc = None
    return GrowthCoefficient(direct=direct, closed_form=closed,
                             discrepancy=disc)
