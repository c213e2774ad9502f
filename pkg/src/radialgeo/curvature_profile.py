"""Radial curvature profiles.

A profile is a piecewise description of a curvature function K(t) on
[0, oo): finitely many polynomial or rational segments covering
[0, t_tail), followed by one of three analytic tail models.  The tail
grammar is deliberately small so that improper-integral convergence
questions (does the first moment of the negative part converge?) are
decidable instead of heuristic.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ProfileError

__all__ = [
    "Segment",
    "ZeroTail",
    "ConstantTail",
    "PowerDecayTail",
    "TailModel",
    "CurvatureProfile",
    "MomentClass",
    "negative_part",
    "positive_part",
    "tail_moment_class",
    "constant_profile",
    "zero_profile",
    "power_tail_profile",
    "profile_from_dict",
    "profile_to_dict",
]

_ZERO_NUM = (0.0,)
_ONE_DEN = (1.0,)


def _horner(coeffs: tuple[float, ...], t: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class Segment:
    """One piece of a profile: num(t)/den(t) on [t_start, t_end).

    Coefficients are ascending powers of the global variable t.  A plain
    polynomial uses the default denominator (1,).
    """

    t_start: float
    t_end: float
    num: tuple[float, ...]
    den: tuple[float, ...] = _ONE_DEN

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(float(c) for c in self.num))
        object.__setattr__(self, "den", tuple(float(c) for c in self.den))
        if not self.num or not self.den:
            raise ProfileError("segment needs at least one coefficient")
        if not all(math.isfinite(c) for c in self.num + self.den):
            raise ProfileError("segment coefficients must be finite")
        if not (0.0 <= self.t_start < self.t_end):
            raise ProfileError(
                f"segment interval [{self.t_start}, {self.t_end}) is invalid"
            )
        for root in self._real_roots(self.den):
            if self.t_start - 1e-12 <= root <= self.t_end + 1e-12:
                raise ProfileError(
                    f"segment denominator vanishes at t = {root:.6g}"
                )

    @property
    def is_polynomial(self) -> bool:
        return self.den == _ONE_DEN

    @property
    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.num)

    def evaluate(self, t: float) -> float:
        v = _horner(self.num, t)
        if not self.is_polynomial:
            v /= _horner(self.den, t)
        return v

    def evaluate_array(self, ts: np.ndarray) -> np.ndarray:
        v = npoly.polyval(ts, self.num)
        if not self.is_polynomial:
            v = v / npoly.polyval(ts, self.den)
        return v

    @staticmethod
    def _real_roots(coeffs: tuple[float, ...]) -> list[float]:
        arr = np.trim_zeros(np.asarray(coeffs, dtype=float), trim="b")
        if arr.size <= 1:
            return []
        roots = npoly.polyroots(arr)
        return [float(r.real) for r in roots if abs(r.imag) <= 1e-9 * (1 + abs(r))]

    @cached_property
    def _critical_points(self) -> tuple[float, ...]:
        # stationary points of num/den: roots of num'*den - num*den'
        dnum = npoly.polyder(self.num)
        if self.is_polynomial:
            p = dnum
        else:
            dden = npoly.polyder(self.den)
            p = npoly.polysub(npoly.polymul(dnum, self.den),
                              npoly.polymul(self.num, dden))
        return tuple(self._real_roots(tuple(p)))

    def max_on(self, a: float, b: float) -> float:
        """Exact maximum of the segment expression over [a, b]."""
        best = max(self.evaluate(a), self.evaluate(b))
        for r in self._critical_points:
            if a < r < b:
                best = max(best, self.evaluate(r))
        return best


@dataclass(frozen=True)
class ZeroTail:
    """K(t) = 0 for t >= t_tail."""

    def evaluate(self, t: float) -> float:
        return 0.0

    def evaluate_array(self, ts: np.ndarray) -> np.ndarray:
        return np.zeros_like(ts)

    def max_on(self, a: float, b: float) -> float:
        return 0.0


@dataclass(frozen=True)
class ConstantTail:
    """K(t) = kappa for t >= t_tail."""

    kappa: float

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise ProfileError("constant tail value must be finite")

    def evaluate(self, t: float) -> float:
        return self.kappa

    def evaluate_array(self, ts: np.ndarray) -> np.ndarray:
        return np.full_like(ts, self.kappa)

    def max_on(self, a: float, b: float) -> float:
        return self.kappa


@dataclass(frozen=True)
class PowerDecayTail:
    """K(t) = a / (1 + t)**p for t >= t_tail, with p > 0."""

    a: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.p)):
            raise ProfileError("power tail parameters must be finite")
        if self.p <= 0:
            raise ProfileError(f"power tail exponent must be positive, got {self.p}")

    def evaluate(self, t: float) -> float:
        return self.a / (1.0 + t) ** self.p

    def evaluate_array(self, ts: np.ndarray) -> np.ndarray:
        return self.a / (1.0 + ts) ** self.p

    def max_on(self, a: float, b: float) -> float:
        # |a/(1+t)^p| is decreasing, so the max of a positive tail sits at
        # the left end; a nonpositive tail never exceeds 0.
        return self.evaluate(a) if self.a > 0 else self.evaluate(b)


TailModel = Union[ZeroTail, ConstantTail, PowerDecayTail]


class MomentClass(Enum):
    """Convergence class of the first moment of the negative part."""

    FINITE = "finite"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class CurvatureProfile:
    """Piecewise radial curvature function on [0, oo).

    Segments cover [0, t_tail) contiguously; the tail model covers the
    rest.  Profiles are immutable and all operations on them are pure.
    Continuity at the junctions is expected of genuine curvature data and
    can be checked with :meth:`continuity_defects`, but it is not forced:
    the downstream solver restarts at every breakpoint anyway, which keeps
    discontinuous experiment profiles usable.
    """

    segments: tuple[Segment, ...] = ()
    tail: TailModel = ZeroTail()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        segs = self.segments
        if segs:
            if segs[0].t_start != 0.0:
                raise ProfileError("first segment must start at t = 0")
            for left, right in zip(segs, segs[1:]):
                if left.t_end != right.t_start:
                    raise ProfileError(
                        f"segments are not contiguous at t = {left.t_end!r}"
                    )
        if not isinstance(self.tail, (ZeroTail, ConstantTail, PowerDecayTail)):
            raise ProfileError(f"unknown tail model: {self.tail!r}")

    @property
    def t_tail(self) -> float:
        """Start of the tail regime."""
        return self.segments[-1].t_end if self.segments else 0.0

    @cached_property
    def breakpoints(self) -> tuple[float, ...]:
        """All junction times: 0, interior breakpoints, and t_tail."""
        pts = [0.0] + [s.t_end for s in self.segments]
        return tuple(pts)

    @cached_property
    def _seg_ends(self) -> list[float]:
        return [s.t_end for s in self.segments]

    @property
    def is_zero(self) -> bool:
        return all(s.is_zero for s in self.segments) and self.tail == ZeroTail()

    def piece_at(self, t: float):
        """Return (piece, piece_end) for the piece active at time t.

        ``piece_end`` is math.inf for the tail.  The returned piece is
        valid on the closed right end of its interval, which is what the
        solver needs when a step lands exactly on a breakpoint.
        """
        i = bisect.bisect_right(self._seg_ends, t)
        if i < len(self.segments):
            seg = self.segments[i]
            return seg, seg.t_end
        return self.tail, math.inf

    def evaluate(self, t: float) -> float:
        """Value K(t); raises ValueError for negative t."""
        if t < 0:
            raise ValueError(f"curvature profile is defined on [0, oo), got t = {t}")
        piece, _ = self.piece_at(t)
        return piece.evaluate(t)

    __call__ = evaluate

    def evaluate_array(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if ts.size and float(ts.min()) < 0:
            raise ValueError("curvature profile is defined on [0, oo)")
        out = np.empty_like(ts)
        idx = np.searchsorted(self._seg_ends, ts, side="right")
        for i in range(len(self.segments) + 1):
            mask = idx == i
            if not mask.any():
                continue
            piece = self.segments[i] if i < len(self.segments) else self.tail
            out[mask] = piece.evaluate_array(ts[mask])
        return out

    def continuity_defects(self, rel_tol: float = 1e-12) -> list[tuple[float, float, float]]:
        """Junctions where left and right values disagree.

        Returns (t, left_value, right_value) triples; empty means the
        profile evaluates continuously on [0, oo).
        """
        defects = []
        for i, seg in enumerate(self.segments):
            t = seg.t_end
            left = seg.evaluate(t)
            right = (self.segments[i + 1] if i + 1 < len(self.segments)
                     else self.tail).evaluate(t)
            if not math.isclose(left, right, rel_tol=rel_tol, abs_tol=rel_tol):
                defects.append((t, left, right))
        return defects

    def is_continuous(self, rel_tol: float = 1e-12) -> bool:
        return not self.continuity_defects(rel_tol)


def zero_profile() -> CurvatureProfile:
    return CurvatureProfile((), ZeroTail())


def constant_profile(kappa: float) -> CurvatureProfile:
    if kappa == 0.0:
        return zero_profile()
    return CurvatureProfile((), ConstantTail(kappa))


def power_tail_profile(a: float, p: float) -> CurvatureProfile:
    """Pure tail profile K(t) = a/(1+t)**p on all of [0, oo)."""
    if a == 0.0:
        return zero_profile()
    return CurvatureProfile((), PowerDecayTail(a, p))


# ---------------------------------------------------------------------------
# sign splitting


def _bisect_sign_change(seg: Segment, lo: float, hi: float) -> float:
    """Locate a sign change of the segment inside a bracketing interval.

    Plain bisection, driven to floating point resolution (well below the
    1e-12 continuity tolerance even for steep segments); 64 iterations
    more than suffice from any bracket our scan produces.
    """
    flo = seg.evaluate(lo)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = seg.evaluate(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _sign_change_points(seg: Segment, samples: int = 129) -> list[float]:
    """Strict sign changes of a segment, located to float resolution.

    Grid values that are exactly zero are skipped: a crossing through a
    grid point is still bracketed by its nonzero neighbors, while a
    tangential touch (no sign change) needs no split for min/max
    clipping, and an identically zero segment has nothing to split.
    """
    if seg.is_zero:
        return []
    ts = np.linspace(seg.t_start, seg.t_end, samples)
    vs = seg.evaluate_array(ts)
    cuts: list[float] = []
    prev_sign = 0
    prev_t = seg.t_start
    for t, v in zip(ts, vs):
        v = float(v)
        sign = (v > 0.0) - (v < 0.0)
        if sign == 0:
            continue
        if prev_sign and sign != prev_sign:
            cuts.append(_bisect_sign_change(seg, prev_t, float(t)))
        prev_sign, prev_t = sign, float(t)
    out: list[float] = []
    for c in cuts:
        if c <= seg.t_start or c >= seg.t_end:
            continue
        if out and c - out[-1] <= 1e-13 * max(1.0, abs(c)):
            continue
        out.append(c)
    return out


def _clip_tail(tail: TailModel, keep_negative: bool) -> TailModel:
    if isinstance(tail, ZeroTail):
        return tail
    if isinstance(tail, ConstantTail):
        keep = tail.kappa < 0 if keep_negative else tail.kappa > 0
        return tail if keep else ZeroTail()
    keep = tail.a < 0 if keep_negative else tail.a > 0
    return tail if keep else ZeroTail()


def _signed_part(profile: CurvatureProfile, keep_negative: bool) -> CurvatureProfile:
    pieces: list[Segment] = []
    for seg in profile.segments:
        bounds = [seg.t_start, *_sign_change_points(seg), seg.t_end]
        for lo, hi in zip(bounds, bounds[1:]):
            mid_value = seg.evaluate(0.5 * (lo + hi))
            keep = mid_value < 0 if keep_negative else mid_value > 0
            if keep:
                pieces.append(Segment(lo, hi, seg.num, seg.den))
            else:
                pieces.append(Segment(lo, hi, _ZERO_NUM))
    return CurvatureProfile(tuple(pieces), _clip_tail(profile.tail, keep_negative))


def negative_part(profile: CurvatureProfile) -> CurvatureProfile:
    """Pointwise min(K, 0) as a new profile, split at sign changes."""
    return _signed_part(profile, keep_negative=True)


def positive_part(profile: CurvatureProfile) -> CurvatureProfile:
    """Pointwise max(K, 0) as a new profile, split at sign changes."""
    return _signed_part(profile, keep_negative=False)


def tail_moment_class(profile: CurvatureProfile) -> MomentClass:
    """Decide convergence of the improper integral of t * min(K, 0).

    The decision is analytic, from the tail model of the negative part:
    a zero (or clipped-away nonnegative) tail converges, a negative
    constant tail diverges, and a negative power tail converges exactly
    when its exponent exceeds 2.  The segments contribute a finite amount
    regardless, being finite-valued on a bounded interval.
    """
    tail = negative_part(profile).tail
    if isinstance(tail, ZeroTail):
        return MomentClass.FINITE
    if isinstance(tail, ConstantTail):
        return MomentClass.DIVERGENT
    return MomentClass.FINITE if tail.p > 2 else MomentClass.DIVERGENT


# ---------------------------------------------------------------------------
# JSON schema


def profile_to_dict(profile: CurvatureProfile) -> dict:
    """Profile as a JSON-ready dict (see profile_from_dict for the schema)."""
    segments = []
    for s in profile.segments:
        if s.is_polynomial:
            segments.append([s.t_start, s.t_end, *s.num])
        else:
            segments.append({"t_start": s.t_start, "t_end": s.t_end,
                             "num": list(s.num), "den": list(s.den)})
    tail = profile.tail
    if isinstance(tail, ZeroTail):
        tail_obj: dict = {"kind": "zero"}
    elif isinstance(tail, ConstantTail):
        tail_obj = {"kind": "constant", "kappa": tail.kappa}
    else:
        tail_obj = {"kind": "power", "a": tail.a, "p": tail.p}
    return {"segments": segments, "tail": tail_obj}


def profile_from_dict(data: dict) -> CurvatureProfile:
    """Build a profile from its JSON form.

    Schema::

        {"segments": [[t_start, t_end, c0, c1, ...],          # polynomial
                      {"t_start": ..., "t_end": ...,          # rational
                       "num": [...], "den": [...]},
                      ...],
         "tail": {"kind": "zero"}
               | {"kind": "constant", "kappa": k}
               | {"kind": "power", "a": a, "p": p}}
    """
    if not isinstance(data, dict):
        raise ProfileError("profile must be a JSON object")
    segments = []
    for i, raw in enumerate(data.get("segments", [])):
        try:
            if isinstance(raw, dict):
                seg = Segment(float(raw["t_start"]), float(raw["t_end"]),
                              tuple(raw["num"]), tuple(raw.get("den", (1.0,))))
            else:
                if len(raw) < 3:
                    raise ProfileError(
                        f"segment {i}: need [t_start, t_end, coefficients...]"
                    )
                seg = Segment(float(raw[0]), float(raw[1]), tuple(raw[2:]))
        except (TypeError, KeyError) as exc:
            raise ProfileError(f"segment {i} is malformed: {exc}") from exc
        segments.append(seg)
    tail_obj = data.get("tail", {"kind": "zero"})
    kind = tail_obj.get("kind") if isinstance(tail_obj, dict) else None
    try:
        if kind == "zero":
            tail: TailModel = ZeroTail()
        elif kind == "constant":
            tail = ConstantTail(float(tail_obj["kappa"]))
        elif kind == "power":
            tail = PowerDecayTail(float(tail_obj["a"]), float(tail_obj["p"]))
        else:
            raise ProfileError(f"unknown tail kind: {kind!r}")
    except (TypeError, KeyError) as exc:
        raise ProfileError(f"tail is malformed: {exc}") from exc
    return CurvatureProfile(tuple(segments), tail)
