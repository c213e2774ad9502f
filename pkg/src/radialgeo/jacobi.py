"""Jacobi initial value problems f'' + K(t) f = 0, f(0) = 0, f'(0) = 1.

The solver is an explicit Dormand-Prince 5(4) embedded pair with PI step
control.  The equation is linear and smooth on every profile piece, so a
moderate-order pair is plenty and keeps the package free of solver
dependencies.  Three behaviors matter downstream and are guaranteed here:

* steps never straddle a profile breakpoint (integration restarts there),
  so each step sees an analytic right-hand side;
* when K > 0 somewhere on a step, the step length is capped by
  pi/sqrt(max K on the step); zeros of f are then at least one cap apart
  (Sturm), so a step can never skip a pair of zeros;
* the first zero of f, if any, is located by bisection on the dense
  output to 1e-12 in t, and integration stops there.

Dense output stores f, f' and f'' = -K f at the step ends and evaluates a
quintic Hermite interpolant per step.  Its O(h^6) interpolation error
stays below the accepted local error at every tolerance in the supported
range, which a cubic on (f, f') alone would not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvature_profile import CurvatureProfile, negative_part
from .errors import IntegrationError

__all__ = ["WarpingSolution", "solve", "solve_m", "GROWTH_GUARD"]

# Reaching this magnitude in f or f' means the model is violently
# divergent; the window is truncated there instead of overflowing.  The
# guard leaves room for f**(n-1) in volume integrands up to n = 6.
GROWTH_GUARD = 1e60

_MIN_TOL, _MAX_TOL = 1e-14, 1e-3

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 0.2, 0.3, 0.8, 8.0 / 9.0
_A21 = 0.2
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (19372.0 / 6561.0, -25360.0 / 2187.0,
                          64448.0 / 6561.0, -212.0 / 729.0)
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0,
                                46732.0 / 5247.0, 49.0 / 176.0,
                                -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0)
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_PI_ALPHA = 0.14  # ~0.7/order
_PI_BETA = 0.08   # ~0.4/order


@dataclass
class WarpingSolution:
    """Dense-output solution of a Jacobi initial value problem.

    ``ts, fs, fps`` are the accepted nodes (f(0) = 0 and f'(0) = 1 hold
    exactly at the first node).  ``d2_left[i]`` and ``d2_right[i]`` are
    f'' at the two ends of step i, both evaluated with the profile piece
    that governed that step, which keeps the interpolant correct across
    discontinuous breakpoints.  ``t_end`` is the reached end: the
    requested end, the first zero, or the growth-guard truncation point.
    """

    profile: CurvatureProfile
    requested_t_end: float
    tol: float
    ts: np.ndarray
    fs: np.ndarray
    fps: np.ndarray
    d2_left: np.ndarray
    d2_right: np.ndarray
    first_zero: float | None = None
    truncated: bool = False
    n_steps: int = 0
    n_rejected: int = 0

    @property
    def t_end(self) -> float:
        return float(self.ts[-1])

    def _interp(self, t, derivative: bool):
        ts = self.ts
        t_arr = np.asarray(t, dtype=float)
        if t_arr.size:
            tmin, tmax = float(t_arr.min()), float(t_arr.max())
            if tmin < 0.0 or tmax > ts[-1] * (1 + 1e-15) + 1e-300:
                raise ValueError(
                    f"evaluation time outside solution window [0, {ts[-1]:.6g}]"
                )
        j = np.clip(np.searchsorted(ts, t_arr, side="right") - 1, 0, len(ts) - 2)
        h = ts[j + 1] - ts[j]
        s = np.clip((t_arr - ts[j]) / h, 0.0, 1.0)
        y0, y1 = self.fs[j], self.fs[j + 1]
        d0, d1 = self.fps[j] * h, self.fps[j + 1] * h
        a0, a1 = self.d2_left[j] * h * h, self.d2_right[j] * h * h
        s2 = s * s
        s3 = s2 * s
        s4 = s3 * s
        s5 = s4 * s
        if not derivative:
            out = (y0 * (1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5)
                   + d0 * (s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5)
                   + a0 * 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5)
                   + y1 * (10.0 * s3 - 15.0 * s4 + 6.0 * s5)
                   + d1 * (-4.0 * s3 + 7.0 * s4 - 3.0 * s5)
                   + a1 * 0.5 * (s3 - 2.0 * s4 + s5))
        else:
            out = (y0 * (-30.0 * s2 + 60.0 * s3 - 30.0 * s4)
                   + d0 * (1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4)
                   + a0 * 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4)
                   + y1 * (30.0 * s2 - 60.0 * s3 + 30.0 * s4)
                   + d1 * (-12.0 * s2 + 28.0 * s3 - 15.0 * s4)
                   + a1 * 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4)) / h
        return out if isinstance(t, np.ndarray) else float(out)

    def f(self, t):
        """f at time t (scalar or array), from the dense output."""
        return self._interp(t, derivative=False)

    def fp(self, t):
        """f' at time t (scalar or array), from the dense output."""
        return self._interp(t, derivative=True)


def _hermite_pair(h, y0, d0, a0, y1, d1, a1, s):
    """Quintic Hermite value and derivative at local coordinate s."""
    d0h, d1h = d0 * h, d1 * h
    a0h, a1h = a0 * h * h, a1 * h * h
    s2, s3 = s * s, s * s * s
    s4, s5 = s3 * s, s3 * s * s
    val = (y0 * (1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5)
           + d0h * (s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5)
           + a0h * 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5)
           + y1 * (10.0 * s3 - 15.0 * s4 + 6.0 * s5)
           + d1h * (-4.0 * s3 + 7.0 * s4 - 3.0 * s5)
           + a1h * 0.5 * (s3 - 2.0 * s4 + s5))
    der = (y0 * (-30.0 * s2 + 60.0 * s3 - 30.0 * s4)
           + d0h * (1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4)
           + a0h * 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4)
           + y1 * (30.0 * s2 - 60.0 * s3 + 30.0 * s4)
           + d1h * (-12.0 * s2 + 28.0 * s3 - 15.0 * s4)
           + a1h * 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4)) / h
    return val, der


def _locate_zero(t0, h, y0, d0, a0, y1, d1, a1):
    """Bisect the dense quintic for f = 0 on a step with a sign change."""
    lo, hi = 0.0, 1.0
    # f is positive just right of t = 0, so a zero left node still marks
    # the positive side of the bracket
    flo = y0 if y0 > 0.0 else 1e-300
    while (hi - lo) * h > 1e-12:
        mid = 0.5 * (lo + hi)
        fmid, _ = _hermite_pair(h, y0, d0, a0, y1, d1, a1, mid)
        if fmid == 0.0:
            lo = hi = mid
            break
        if (flo > 0.0) == (fmid > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    fz, fpz = _hermite_pair(h, y0, d0, a0, y1, d1, a1, s)
    return t0 + s * h, fz, fpz


def solve(profile: CurvatureProfile, t_end: float, tol: float,
          *, growth_guard: float = GROWTH_GUARD,
          max_steps: int = 10_000_000) -> WarpingSolution:
    """Integrate f'' + K f = 0 with f(0) = 0, f'(0) = 1 on [0, t_end].

    ``tol`` is the requested relative error, used for both the relative
    and absolute components of the local error test; it must lie in
    [1e-14, 1e-3].  Integration stops early at the first zero of f
    (recorded in ``first_zero``) or when |f| or |f'| passes the growth
    guard (recorded in ``truncated``); step-size underflow raises
    IntegrationError.
    """
    if not (t_end > 0.0):
        raise ValueError(f"t_end must be positive, got {t_end}")
    if not (_MIN_TOL <= tol <= _MAX_TOL):
        raise ValueError(f"tol must lie in [{_MIN_TOL}, {_MAX_TOL}], got {tol}")

    t = 0.0
    f, fp = 0.0, 1.0
    piece, piece_end = profile.piece_at(t)
    k1f, k1p = fp, -piece.evaluate(t) * f

    ts = [0.0]
    fs = [0.0]
    fps = [1.0]
    d2_left: list[float] = []
    d2_right: list[float] = []

    first_zero: float | None = None
    truncated = False
    n_steps = 0
    n_rejected = 0

    bound = min(piece_end, t_end)
    h = max(min(0.01 * bound, 0.1), 1e-6)
    err_prev = 1.0

    while t < t_end:
        if n_steps + n_rejected > max_steps:
            raise IntegrationError("step budget exhausted", t)
        bound = min(piece_end, t_end)
        # snap to the boundary when the proposal reaches or nearly reaches
        # it, so no unintegrable sliver is left behind
        at_bound = bound - t <= h * (1.0 + 1e-9)
        if at_bound:
            h = bound - t
        kmax = piece.max_on(t, t + h)
        if kmax > 0.0:
            cap = math.pi / math.sqrt(kmax)
            if h > cap:
                h = cap
                at_bound = False
        if h <= 1e-14 * max(1.0, t):
            raise IntegrationError("step size underflow", t)

        ev = piece.evaluate
        # six derivative evaluations (k1 carried over, FSAL)
        y2f = f + h * (_A21 * k1f)
        y2p = fp + h * (_A21 * k1p)
        k2f, k2p = y2p, -ev(t + _C2 * h) * y2f
        y3f = f + h * (_A31 * k1f + _A32 * k2f)
        y3p = fp + h * (_A31 * k1p + _A32 * k2p)
        k3f, k3p = y3p, -ev(t + _C3 * h) * y3f
        y4f = f + h * (_A41 * k1f + _A42 * k2f + _A43 * k3f)
        y4p = fp + h * (_A41 * k1p + _A42 * k2p + _A43 * k3p)
        k4f, k4p = y4p, -ev(t + _C4 * h) * y4f
        y5f = f + h * (_A51 * k1f + _A52 * k2f + _A53 * k3f + _A54 * k4f)
        y5p = fp + h * (_A51 * k1p + _A52 * k2p + _A53 * k3p + _A54 * k4p)
        k5f, k5p = y5p, -ev(t + _C5 * h) * y5f
        y6f = f + h * (_A61 * k1f + _A62 * k2f + _A63 * k3f + _A64 * k4f + _A65 * k5f)
        y6p = fp + h * (_A61 * k1p + _A62 * k2p + _A63 * k3p + _A64 * k4p + _A65 * k5p)
        k6f, k6p = y6p, -ev(t + h) * y6f
        fn = f + h * (_B1 * k1f + _B3 * k3f + _B4 * k4f + _B5 * k5f + _B6 * k6f)
        fpn = fp + h * (_B1 * k1p + _B3 * k3p + _B4 * k4p + _B5 * k5p + _B6 * k6p)
        k7p_curv = -ev(t + h) * fn
        k7f, k7p = fpn, k7p_curv

        ef = h * (_E1 * k1f + _E3 * k3f + _E4 * k4f + _E5 * k5f + _E6 * k6f + _E7 * k7f)
        ep = h * (_E1 * k1p + _E3 * k3p + _E4 * k4p + _E5 * k5p + _E6 * k6p + _E7 * k7p)
        sc_f = tol + tol * max(abs(f), abs(fn))
        sc_p = tol + tol * max(abs(fp), abs(fpn))
        err = math.sqrt(0.5 * ((ef / sc_f) ** 2 + (ep / sc_p) ** 2))

        if err > 1.0:
            n_rejected += 1
            h *= max(_MIN_FACTOR, _SAFETY * err ** (-0.2))
            continue

        n_steps += 1
        t_new = bound if at_bound else t + h
        d2_left.append(k1p)
        d2_right.append(k7p_curv)
        ts.append(t_new)
        fs.append(fn)
        fps.append(fpn)

        if fn <= 0.0:
            tz, fz, fpz = _locate_zero(t, t_new - t, f, fp, k1p, fn, fpn, k7p_curv)
            ts[-1] = tz
            fs[-1] = fz
            fps[-1] = fpz
            d2_right[-1] = -ev(tz) * fz
            first_zero = tz
            break

        t, f, fp = t_new, fn, fpn
        if max(abs(f), abs(fp)) >= growth_guard:
            truncated = True
            break

        if err == 0.0:
            factor = _MAX_FACTOR
        else:
            factor = _SAFETY * err ** (-_PI_ALPHA) * err_prev ** _PI_BETA
            factor = min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
        h *= factor
        err_prev = max(err, 1e-10)

        if t >= piece_end:
            piece, piece_end = profile.piece_at(t)
            k1f, k1p = fp, -piece.evaluate(t) * f
        else:
            k1f, k1p = k7f, k7p

    return WarpingSolution(
        profile=profile,
        requested_t_end=t_end,
        tol=tol,
        ts=np.asarray(ts),
        fs=np.asarray(fs),
        fps=np.asarray(fps),
        d2_left=np.asarray(d2_left),
        d2_right=np.asarray(d2_right),
        first_zero=first_zero,
        truncated=truncated,
        n_steps=n_steps,
        n_rejected=n_rejected,
    )


def solve_m(profile: CurvatureProfile, t_end: float, tol: float,
            **kwargs) -> WarpingSolution:
    """Solve m'' + min(K, 0) m = 0, m(0) = 0, m'(0) = 1.

    m is convex while positive and starts with slope 1, so it can never
    return to zero; a detected zero would mean the integrator broke and
    is reported as such.
    """
    sol = solve(negative_part(profile), t_end, tol, **kwargs)
    if sol.first_zero is not None:
        raise IntegrationError(
            "convex comparison function crossed zero; integrator inconsistency",
            sol.first_zero,
        )
    return sol
