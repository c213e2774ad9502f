"""Full theorem evaluation, volume-data ingestion, and the command line.

``evaluate_theorem`` runs the whole chain for one curvature profile and
dimension: solve the warping function, compute total curvature, slope and
m' limits, the growth coefficient, and the ends bound; optionally ingest
measured ball volumes of a manifold, check Bishop-Gromov ratio
monotonicity against the model, and certify the conclusions that the
computed quantities support.  Reports serialize to deterministic JSON
(stable key order, floats at 12 significant digits).

Conclusions are gated conservatively:

* any divergent total-curvature class voids the finiteness hypothesis:
  the report carries warnings and no conclusions;
* "finite topological type" and the ends cap are emitted only when
  volume samples are present, Bishop-Gromov monotonicity holds, and the
  manifold growth limit clears its own error estimate by 10x;
* without samples, nothing about the manifold's topology is claimed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import NamedTuple

from .asymptotics import (
    CurvatureClass,
    LimitEstimate,
    TotalCurvatureResult,
    m_prime_limit,
    slope_limit,
    total_curvature,
)
from .curvature_profile import (
    CurvatureProfile,
    profile_from_dict,
    profile_to_dict,
)
from .ends import EndsBound, ends_bound
from .errors import (
    ConfigurationError,
    ConvergenceError,
    IngestError,
    ModelCompactnessError,
    RadialGeoError,
)
from .gallery import entry_by_name, list_gallery
from .jacobi import solve, solve_m
from .model_space import GrowthCoefficient, ModelSpace, ball_volumes, growth_coefficient

__all__ = [
    "AnalysisOptions",
    "VolumeSamples",
    "BGRatioCheck",
    "Conclusion",
    "TheoremReport",
    "ingest_samples",
    "bg_ratio_check",
    "evaluate_theorem",
    "report_to_json",
    "cli_main",
    "main",
    "DEFAULT_TOL",
    "DEFAULT_T_END",
]

DEFAULT_TOL = 1e-8
DEFAULT_T_END = 4096.0

# signal-to-error factor a growth limit must clear to count as nonzero
_NONZERO_SNR = 10.0
# relative disagreement between the factored and the directly extrapolated
# manifold growth limit that triggers a warning
_FACTORIZATION_WARN = 0.05

_MONOTONE_SLACK = 1e-9


@dataclass(frozen=True)
class AnalysisOptions:
    """Knobs of one evaluation run."""

    tol: float = DEFAULT_TOL
    t_end: float = DEFAULT_T_END


@dataclass(frozen=True)
class VolumeSamples:
    """Measured ball volumes (t_i, vol_i) of a manifold, t strictly
    increasing and positive, volumes positive, with declared dimension."""

    t: tuple[float, ...]
    vol: tuple[float, ...]
    n: int
    source: str | None = None

    def __post_init__(self):
        if len(self.t) != len(self.vol) or not self.t:
            raise ValueError("need equally many times and volumes, at least one")
        if self.t[0] <= 0 or any(b <= a for a, b in zip(self.t, self.t[1:])):
            raise ValueError("sample times must be strictly increasing and positive")
        if any(v <= 0 for v in self.vol):
            raise ValueError("sample volumes must be positive")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n}")

    def __len__(self) -> int:
        return len(self.t)


def ingest_samples(path: str, n: int) -> VolumeSamples:
    """Read volume samples from a CSV file with header ``t,vol``.

    Every validation failure names the offending row (1-based, counting
    the header as row 1).
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"{path}: cannot open: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"{path}: empty file") from None
        if [h.strip().lower() for h in header[:2]] != ["t", "vol"]:
            raise IngestError(
                f"{path}: row 1: expected header 't,vol', got {','.join(header)!r}"
            )
        ts: list[float] = []
        vols: list[float] = []
        for i, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 2:
                raise IngestError(f"{path}: row {i}: expected two columns")
            try:
                t, vol = float(row[0]), float(row[1])
            except ValueError as exc:
                raise IngestError(f"{path}: row {i}: {exc}") from exc
            if not (math.isfinite(t) and math.isfinite(vol)):
                raise IngestError(f"{path}: row {i}: values must be finite")
            if ts and t <= ts[-1]:
                raise IngestError(
                    f"{path}: row {i}: t = {t:g} does not increase past {ts[-1]:g}"
                )
            if t <= 0:
                raise IngestError(f"{path}: row {i}: t must be positive")
            if vol <= 0:
                raise IngestError(f"{path}: row {i}: vol must be positive")
            ts.append(t)
            vols.append(vol)
    if not ts:
        raise IngestError(f"{path}: no data rows")
    return VolumeSamples(t=tuple(ts), vol=tuple(vols), n=n, source=path)


class BGRatioCheck(NamedTuple):
    ratios: list[float]
    monotone_ok: bool
    ratio_limit: LimitEstimate


def bg_ratio_check(samples: VolumeSamples, ms: ModelSpace) -> BGRatioCheck:
    """Bishop-Gromov ratios vol(manifold)/vol(model) at the sample radii.

    Under a true radial curvature lower bound the ratios are nonincreasing
    and at most 1; ``monotone_ok`` reports whether the data respect that
    (with 1e-9 slack).  The ratio limit is estimated by the average of the
    last min(5, count) ratios, with their spread as the error bar: the
    convergence rate carries no a-priori model, so this is an honest
    smoothing, not an extrapolation.
    """
    if samples.n != ms.n:
        raise ValueError(
            f"sample dimension {samples.n} != model dimension {ms.n}"
        )
    if samples.t[-1] > ms.f.t_end * (1 + 1e-15):
        raise ConfigurationError(
            f"sample radius {samples.t[-1]:g} exceeds the solution window "
            f"[0, {ms.f.t_end:g}]"
        )
    model_vols = ball_volumes(ms, list(samples.t))
    ratios = [v / mv for v, mv in zip(samples.vol, model_vols)]
    monotone = all(b <= a + _MONOTONE_SLACK for a, b in zip(ratios, ratios[1:]))
    bounded = all(r <= 1.0 + _MONOTONE_SLACK for r in ratios)
    k = min(5, len(ratios))
    window = ratios[-k:]
    limit = LimitEstimate(value=sum(window) / k,
                          err=max(window) - min(window))
    return BGRatioCheck(ratios=ratios, monotone_ok=monotone and bounded,
                        ratio_limit=limit)


@dataclass(frozen=True)
class Conclusion:
    statement: str
    reason: str


@dataclass
class TheoremReport:
    """Everything one evaluation produced, ready for serialization."""

    inputs: dict
    total_curvature: TotalCurvatureResult
    slope_limit: LimitEstimate
    m_prime_limit: LimitEstimate
    growth: GrowthCoefficient
    ends: EndsBound
    ratio_limit: LimitEstimate | None
    bg_ratios: list[float] | None
    bg_monotone_ok: bool | None
    manifold_growth_limit: LimitEstimate | None
    conclusions: list[Conclusion]
    warnings: list[str]
    hypothesis_ok: bool


def evaluate_theorem(profile: CurvatureProfile, n: int,
                     opts: AnalysisOptions | None = None,
                     samples: VolumeSamples | None = None) -> TheoremReport:
    """Run the full evaluation chain for one profile and dimension.

    Raises ModelCompactnessError when the warping function has a zero
    (the noncompactness hypothesis fails structurally); other hypothesis
    failures are reported, not raised, so the report can still be written.
    """
    if int(n) != n or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n}")
    opts = opts or AnalysisOptions()
    warnings: list[str] = []

    f = solve(profile, opts.t_end, opts.tol)
    if f.first_zero is not None:
        raise ModelCompactnessError(f.first_zero)
    if f.truncated:
        warnings.append(
            f"warping function passed the growth guard at t = {f.t_end:.6g}; "
            f"the analysis window was truncated there"
        )

    tc = total_curvature(profile, f, opts.tol)
    sl = slope_limit(f)
    try:
        ml = m_prime_limit(profile, opts.tol)
    except ConvergenceError as exc:
        ml = LimitEstimate.of_divergent(
            exc.last_value if exc.last_value is not None else math.nan)
        warnings.append(f"m' limit did not settle: {exc}")

    ms = ModelSpace(n=n, f=f)
    growth = growth_coefficient(ms, tc)
    eb = ends_bound(profile, n, opts.tol, m_prime_inf=ml)

    ratio_limit = None
    bg_ratios = None
    bg_monotone: bool | None = None
    manifold_growth: LimitEstimate | None = None
    if samples is not None:
        bg = bg_ratio_check(samples, ms)
        bg_ratios, bg_monotone, ratio_limit = bg.ratios, bg.monotone_ok, bg.ratio_limit
        if not bg_monotone:
            warnings.append(
                "volume ratios against the model are not nonincreasing in "
                "[0, 1]: the data contradict the declared radial curvature "
                "lower bound"
            )
        elif tc.is_finite and growth.direct.is_finite:
            r, g = ratio_limit, growth.direct
            manifold_growth = LimitEstimate(
                value=r.value * g.value,
                err=abs(r.value) * g.err + abs(g.value) * r.err + r.err * g.err,
            )
            # direct tail average of vol_i / t_i^n as a cross-check of the
            # factored estimate
            k = min(5, len(samples))
            direct_probes = [v / t ** n for t, v in
                             zip(samples.t[-k:], samples.vol[-k:])]
            direct_avg = sum(direct_probes) / k
            scale = max(abs(manifold_growth.value), abs(direct_avg), 1e-300)
            if abs(direct_avg - manifold_growth.value) > _FACTORIZATION_WARN * scale:
                warnings.append(
                    f"factored growth limit {manifold_growth.value:.6g} and "
                    f"direct tail average {direct_avg:.6g} disagree by more "
                    f"than {_FACTORIZATION_WARN:.0%}: samples may be far "
                    f"from their asymptotic regime"
                )

    conclusions: list[Conclusion] = []
    if tc.classification is CurvatureClass.NEGATIVE_DIVERGENT:
        hypothesis_ok = False
        warnings.append(
            "the negative part of the total curvature diverges: the "
            "finiteness hypothesis fails and nothing can be certified"
        )
    elif tc.classification is CurvatureClass.POSITIVE_DIVERGENT:
        hypothesis_ok = False
        warnings.append(
            "the positive part of the total curvature diverges while the "
            "warping function stays positive: inconsistent with a "
            "noncompact model (Cohn-Vossen), nothing can be certified"
        )
    else:
        hypothesis_ok = True
        conclusions.append(Conclusion(
            statement="lim vol B_t(p)/t^n exists",
            reason="the manifold is not less curved than a model of finite "
                   "total curvature, so the volume ratio against the model "
                   "is monotone and the model growth coefficient converges",
        ))
        nonzero = (manifold_growth is not None
                   and manifold_growth.value > _NONZERO_SNR * manifold_growth.err)
        if nonzero:
            conclusions.append(Conclusion(
                statement="total curvature of the model surface lies in "
                          "(-inf, 2*pi)",
                reason="a nonzero manifold growth limit forces a positive "
                       "model growth coefficient, which excludes the value "
                       "2*pi",
            ))
            conclusions.append(Conclusion(
                statement="M has finite topological type",
                reason="finite total curvature below 2*pi together with the "
                       "nonzero volume growth limit",
            ))
            if eb.conclusive:
                conclusions.append(Conclusion(
                    statement=f"number of ends of M is at most "
                              f"{eb.integer_bound}",
                    reason=f"2 (lim m')^(n-1) = {eb.raw_bound:.6g} with "
                           f"lim m' = {eb.m_prime_inf.value:.6g}, n = {n}",
                ))
            else:
                warnings.append(
                    "the nonzero-growth branch fired but the m' limit did "
                    "not settle; no ends bound is claimed"
                )

    inputs = {
        "profile": profile_to_dict(profile),
        "n": int(n),
        "tol": opts.tol,
        "t_end": opts.t_end,
        "samples_path": samples.source if samples is not None else None,
        "samples_count": len(samples) if samples is not None else None,
    }
    return TheoremReport(
        inputs=inputs,
        total_curvature=tc,
        slope_limit=sl,
        m_prime_limit=ml,
        growth=growth,
        ends=eb,
        ratio_limit=ratio_limit,
        bg_ratios=bg_ratios,
        bg_monotone_ok=bg_monotone,
        manifold_growth_limit=manifold_growth,
        conclusions=conclusions,
        warnings=warnings,
        hypothesis_ok=hypothesis_ok,
    )


# ---------------------------------------------------------------------------
# deterministic JSON


def _fin(x: float | None) -> float | None:
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def _limit_dict(le: LimitEstimate | None) -> dict | None:
    if le is None:
        return None
    if le.divergent:
        return {"divergent": True, "last_probe": _fin(le.value)}
    return {"divergent": False, "value": _fin(le.value), "err": _fin(le.err)}


def report_to_dict(report: TheoremReport) -> dict:
    tc = report.total_curvature
    eb = report.ends
    return {
        "inputs": report.inputs,
        "total_curvature": {
            "classification": tc.classification.value,
            "value": _fin(tc.value),
            "err": _fin(tc.err),
            "c_plus": _fin(tc.c_plus),
            "c_minus": _fin(tc.c_minus),
        },
        "slope_limit": _limit_dict(report.slope_limit),
        "m_prime_limit": _limit_dict(report.m_prime_limit),
        "growth": {
            "direct": _limit_dict(report.growth.direct),
            "closed_form": _limit_dict(report.growth.closed_form),
            "discrepancy": _fin(report.growth.discrepancy),
        },
        "ratio_limit": _limit_dict(report.ratio_limit),
        "bg_ratios": report.bg_ratios,
        "bg_monotone_ok": report.bg_monotone_ok,
        "manifold_growth_limit": _limit_dict(report.manifold_growth_limit),
        "ends_bound": {
            "m_prime_inf": _limit_dict(eb.m_prime_inf),
            "two_lambda": _fin(eb.two_lambda),
            "raw_bound": _fin(eb.raw_bound),
            "integer_bound": eb.integer_bound,
            "conclusive": eb.conclusive,
        },
        "conclusions": [{"statement": c.statement, "reason": c.reason}
                        for c in report.conclusions],
        "warnings": list(report.warnings),
        "hypothesis_ok": report.hypothesis_ok,
    }


def _write_json(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            out.append("null")
        elif obj == 0.0:
            out.append("0")
        else:
            out.append(format(obj, ".12g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k), ensure_ascii=False))
            out.append(": ")
            _write_json(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _write_json(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_to_json(report: TheoremReport) -> str:
    """Serialize a report deterministically.

    Keys keep insertion order, floats print with 12 significant digits,
    non-finite floats become null (divergence is expressed by the
    classification fields).  Identical inputs give byte-identical output.
    """
    out: list[str] = []
    _write_json(report_to_dict(report), out)
    out.append("\n")
    return "".join(out)


# ---------------------------------------------------------------------------
# CLI


def _env_tol(tol: float) -> float:
    raw = os.environ.get("RADIALGEO_TOL")
    if raw is None:
        return tol
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigurationError(f"RADIALGEO_TOL is not a float: {raw!r}") from exc


def _load_config(path: str) -> tuple[CurvatureProfile, int, AnalysisOptions]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "profile" not in data:
        raise ConfigurationError(f"config {path} needs a 'profile' object")
    profile = profile_from_dict(data["profile"])
    n = data.get("n")
    if n is None or int(n) != n or n < 2:
        raise ConfigurationError(f"config {path} needs an integer 'n' >= 2")
    opts = AnalysisOptions(
        tol=_env_tol(float(data.get("tol", DEFAULT_TOL))),
        t_end=float(data.get("t_end", DEFAULT_T_END)),
    )
    return profile, int(n), opts


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _run_analysis(profile: CurvatureProfile, n: int, opts: AnalysisOptions,
                  samples_path: str | None, out_path: str | None) -> int:
    samples = ingest_samples(samples_path, n) if samples_path else None
    report = evaluate_theorem(profile, n, opts, samples)
    _emit(report_to_json(report), out_path)
    return 0 if report.hypothesis_ok else 1


def _cmd_analyze(args) -> int:
    profile, n, opts = _load_config(args.config)
    return _run_analysis(profile, n, opts, args.samples, args.out)


def _cmd_tabulate(args) -> int:
    profile, n, opts = _load_config(args.config)
    if args.t_max <= 0 or args.step <= 0:
        raise ConfigurationError("--t-max and --step must be positive")
    f = solve(profile, args.t_max, opts.tol)
    m = solve_m(profile, args.t_max, opts.tol)
    t_stop = min(f.t_end, m.t_end)
    if t_stop < args.t_max:
        sys.stderr.write(
            f"note: table truncated at t = {t_stop:.6g} "
            f"(first zero or growth guard)\n"
        )
    grid = []
    k = 0
    while True:
        t = k * args.step
        if t > t_stop * (1 + 1e-12):
            break
        grid.append(min(t, t_stop))
        k += 1
    with_vol = f.first_zero is None
    buf = io.StringIO()
    header = "t,f,fp,m,mp" + (",vol_n" if with_vol else "")
    buf.write(header + "\n")
    vols = None
    if with_vol:
        ms = ModelSpace(n=n, f=f)
        vols = ball_volumes(ms, grid)
    for i, t in enumerate(grid):
        row = [t, float(f.f(t)), float(f.fp(t)), float(m.f(t)), float(m.fp(t))]
        if with_vol:
            row.append(vols[i])
        buf.write(",".join(format(x, ".12g") for x in row) + "\n")
    _emit(buf.getvalue(), args.out)
    return 0


def _cmd_gallery_list(_args) -> int:
    for entry in list_gallery():
        sys.stdout.write(f"{entry.name}: {entry.oracle_summary()}\n")
        if entry.notes:
            sys.stdout.write(f"    {entry.notes}\n")
    return 0


def _cmd_gallery_analyze(args) -> int:
    entry = entry_by_name(args.name)
    opts = AnalysisOptions(tol=_env_tol(args.tol), t_end=args.t_end)
    return _run_analysis(entry.profile, args.n, opts, args.samples, args.out)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radialgeo",
        description="Radial curvature comparison toolkit: warping functions, "
                    "total curvature, volume growth and ends bounds for "
                    "rotationally symmetric model spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="evaluate the theorem for a config")
    p_an.add_argument("--config", required=True, help="JSON config file")
    p_an.add_argument("--samples", help="CSV of manifold ball volumes (t,vol)")
    p_an.add_argument("--out", help="write the JSON report here (default stdout)")
    p_an.set_defaults(func=_cmd_analyze)

    p_tab = sub.add_parser("tabulate", help="CSV table of f, f', m, m' on a grid")
    p_tab.add_argument("--config", required=True, help="JSON config file")
    p_tab.add_argument("--t-max", type=float, required=True, dest="t_max")
    p_tab.add_argument("--step", type=float, required=True)
    p_tab.add_argument("--out", help="write the CSV here (default stdout)")
    p_tab.set_defaults(func=_cmd_tabulate)

    p_gal = sub.add_parser("gallery", help="built-in curvature families")
    gal_sub = p_gal.add_subparsers(dest="gallery_command", required=True)
    p_list = gal_sub.add_parser("list", help="list families and their oracles")
    p_list.set_defaults(func=_cmd_gallery_list)
    p_ga = gal_sub.add_parser("analyze", help="evaluate the theorem for a family")
    p_ga.add_argument("name")
    p_ga.add_argument("-n", type=int, required=True, help="dimension n >= 2")
    p_ga.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_ga.add_argument("--t-end", type=float, default=DEFAULT_T_END, dest="t_end")
    p_ga.add_argument("--samples", help="CSV of manifold ball volumes (t,vol)")
    p_ga.add_argument("--out", help="write the JSON report here (default stdout)")
    p_ga.set_defaults(func=_cmd_gallery_analyze)

    return parser


def cli_main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code.

    0 on success, 1 when a hypothesis of the theorem fails (divergent
    total curvature, compact model), 2 on input or usage errors.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ModelCompactnessError as exc:
        sys.stderr.write(f"hypothesis failure: {exc}\n")
        return 1
    except (RadialGeoError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
