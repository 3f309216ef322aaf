"""Command-line driver: ``transform``, ``verify`` and ``sweep``.

Exit codes: 0 when every check passed, 1 when a residual or tolerance check
failed, 2 for invalid configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .darboux import (
    TRANSFORM_WINDOW,
    GammaGauge,
    finite_difference_backlund,
    generalized_backlund,
    intertwine_pair,
    map_eigenfunction,
    schrodinger_backlund,
)
from .errors import ResidualError, RiccatiForgeError, residual_threshold
from .fnspace import Domain, Interval, ScalarFunction
from .potentials import CoulombParams, Example, OscillatorParams, run_example
from .reduction import log_derivative
from .verify import QuadratureSpec, norm_squared, schrodinger_residual_sweep

log = logging.getLogger("riccati_forge")

THEOREMS = ("T1", "T2", "T3", "INTERTWINE")
SUITES = ("group-law", "orthonormality", "example", "intertwine", "reduction", "specfun")
DEFAULTS = {
    "family": "oscillator",
    "variant": "unshifted",
    "theorem": "T3",
    "example": None,
    "l": None,
    "b": 2.0,
    "q": -1.0,
    "k": None,
    "m": 0,
    "gauge": None,
    "window_lo": 0.01,
    "window_hi": 10.0,
    "samples": 2000,
    "out_dir": ".",
    "suite": None,
    "kmax": 4,
    "param": "l",
    "grid": None,
    "jobs": 1,
    "seed": 0,
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    family: str = "oscillator"
    variant: str = "unshifted"
    theorem: str = "T3"
    example: str | None = None
    params: dict = field(default_factory=dict)
    gauge: float | None = None
    window: Interval = Interval(0.01, 10.0)
    samples: int = 2000
    out_dir: str = "."

    def validate(self) -> PipelineConfig:
        if self.example is not None:
            Example.parse(self.example)
        else:
            if self.family not in ("oscillator", "coulomb"):
                raise ConfigError(f"family must be oscillator or coulomb, got {self.family!r}")
            if self.variant not in ("shifted", "unshifted"):
                raise ConfigError(f"variant must be shifted or unshifted, got {self.variant!r}")
            if self.theorem not in THEOREMS:
                raise ConfigError(f"theorem must be one of {THEOREMS}, got {self.theorem!r}")
            if self.params.get("l") is None:
                raise ConfigError("parameter l is required")
            self.family_params()
        if not self.window.lo > 0:
            raise ConfigError(f"window must lie inside (0, inf): need window-lo > 0, got {self.window.lo}")
        if not math.isfinite(self.window.hi):
            raise ConfigError("window-hi must be finite")
        if self.samples < 2:
            raise ConfigError("samples must be at least 2")
        return self

    def family_params(self):
        shifted = self.variant == "shifted"
        l = float(self.params["l"])
        if self.family == "oscillator":
            return OscillatorParams(l, float(self.params.get("b", 2.0)), shifted)
        return CoulombParams(l, float(self.params.get("q", -1.0)), shifted)

    def example_kwargs(self) -> dict:
        ex = Example.parse(self.example)
        if self.params.get("l") is None:
            raise ConfigError(f"{ex.value} needs --l")
        kw = {"l": float(self.params["l"])}
        if ex is Example.OSC_71:
            kw["b"] = float(self.params.get("b", 2.0))
        else:
            kw["q"] = float(self.params.get("q", -1.0))
        if ex is Example.COUL_72:
            kw["k"] = int(self.params.get("k") or 1)
        return kw

    @property
    def stem(self) -> str:
        if self.example is not None:
            return Example.parse(self.example).value
        return f"{self.family}-{self.variant}-{self.theorem.lower()}"


@dataclass
class RunReport:
    command: str
    config: dict
    max_residuals: dict = field(default_factory=dict)
    norms: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    wall_time_s: float = 0.0
    threshold: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def check(self, name: str, value, limit: float, kind: str = "max"):
        """Record ``value <= limit`` (kind 'max'), ``value >= limit`` ('min') or equality ('eq')."""
        v = float(value)
        if kind == "max":
            ok = v <= limit
        elif kind == "min":
            ok = v >= limit
        else:
            ok = v == limit
        self.checks.append({"name": name, "value": v, "limit": float(limit), "kind": kind, "passed": bool(ok)})
        return ok

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "config": self.config,
            "max_residuals": self.max_residuals,
            "norms": self.norms,
            "checks": self.checks,
            "diagnostics": self.diagnostics,
            "threshold": self.threshold,
            "wall_time_s": self.wall_time_s,
            "passed": self.passed,
        }
        if not self.passed:
            out["FAILED"] = [c["name"] for c in self.checks if not c["passed"]]
        return out


# output helpers ------------------------------------------------------------


def _fmt(v) -> str:
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    return str(obj)


def write_csv(path: Path, columns: dict):
    names = list(columns)
    data = [np.asarray(columns[n], dtype=float) for n in names]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for row in zip(*data):
            w.writerow([_fmt(v) for v in row])


def write_report(path: Path, report: RunReport):
    with open(path, "w") as fh:
        json.dump(_jsonable(report.to_json()), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _sample(f: ScalarFunction | None, xs: np.ndarray) -> np.ndarray:
    if f is None:
        return np.full(xs.shape, np.nan)
    with np.errstate(all="ignore"):
        vals = np.asarray(f(xs), dtype=float)
    return np.where(f.domain.contains(xs), vals, np.nan)


# pipelines --------------------------------------------------------------------


@dataclass
class PipelineOutput:
    columns: dict
    report: RunReport


def _run_example(cfg: PipelineConfig, xs: np.ndarray, report: RunReport) -> dict:
    kw = cfg.example_kwargs()
    res = run_example(cfg.example, **kw)
    tol = 1e-6
    report.max_residuals["schrodinger_backlund"] = res.report.max_residual
    report.check("schrodinger_backlund.residual", res.report.max_residual, report.threshold)
    report.norms["eta_sq"] = res.norm_sq
    report.check("closed_form.image_potential", res.checks["image_potential_dev"], tol)
    report.check("closed_form.eigenstate_shape", res.checks["eigenstate_ratio_spread"], tol)
    for key in ("norm_sq_closed", "norm_sq_integrals"):
        if key in res.checks:
            report.norms[key] = res.checks[key]
            report.check(f"norm.{key}", abs(res.norm_sq - res.checks[key]), tol)
    report.diagnostics.update(res.diagnostics)
    report.diagnostics["eigenstate_ratio"] = res.checks["eigenstate_ratio"]
    report.diagnostics["energy"] = res.energy
    if res.example is Example.COUL_74:
        report.diagnostics["zero_count"] = len(res.diagnostics["zeros"])
        report.check("eigenstate.zero_count", len(res.diagnostics["zeros"]), 1, "eq")
        report.check("eigenstate.zero_location", res.diagnostics["zero_rel_error"], 1e-8)
    if res.example is Example.OSC_71:
        report.check("gauge.radicand_positive", res.diagnostics["min_gauge_radicand"], 0.0, "min")
    return {
        "x": xs,
        "V0": _sample(res.base_potential, xs),
        "V_intermediate": _sample(res.intermediate_potential, xs),
        "V_image": _sample(res.image_potential, xs),
        "phi_in": _sample(res.phi_w, xs),
        "phi_out": _sample(res.eigenstate, xs),
    }


def _state_indices(cfg: PipelineConfig) -> tuple[int, int]:
    k = cfg.params.get("k")
    k = 1 if k is None else int(k)
    m = int(cfg.params.get("m", 0) or 0)
    if not k > m:
        raise ConfigError(f"need k > m for the transformation energies, got k={k}, m={m}")
    return k, m


def _run_theorem(cfg: PipelineConfig, xs: np.ndarray, report: RunReport) -> dict:
    fam = cfg.family_params()
    V = fam.potential()
    window = (max(TRANSFORM_WINDOW[0], cfg.window.lo), max(cfg.window.hi, TRANSFORM_WINDOW[1]))
    if cfg.theorem == "INTERTWINE":
        ground = fam.eigenpair(0)
        V1, data = intertwine_pair(V, ground.wavefunction, ground.energy)
        k = int(cfg.params.get("k") or 1)
        excited = fam.eigenpair(k)
        mapped = map_eigenfunction(data, excited.wavefunction, excited.energy)
        sweep = schrodinger_residual_sweep(V1, excited.energy, mapped, 500, window)
        report.max_residuals["intertwine.mapped"] = sweep.max_rel
        report.check("intertwine.mapped.residual", sweep.max_rel, report.threshold)
        if excited.normalizable:
            n = norm_squared(mapped)
            report.norms[f"psi{k}_mapped_sq"] = n
            report.check("intertwine.mapped.norm", abs(n - 1.0), 1e-4)
        # partner vs the family member with l + 1, up to a constant
        partner = fam.with_l(fam.l + 1).potential()
        grid = Domain.half_line().sample(400, window)
        diff = V1(grid) - partner(grid)
        offset = float(np.median(diff))
        spread = float(np.max(np.abs(diff - offset)) / max(1.0, abs(offset)))
        report.diagnostics["shape_invariance_offset"] = offset
        report.check("shape_invariance.spread", spread, 1e-6)
        return {
            "x": xs,
            "V0": _sample(V, xs),
            "V_image": _sample(V1, xs),
            "phi_in": _sample(excited.wavefunction, xs),
            "phi_out": _sample(mapped, xs),
        }
    k, m = _state_indices(cfg)
    hi, lo = fam.eigenpair(k), fam.eigenpair(m)
    gap = hi.energy - lo.energy
    w_hi, w_lo = log_derivative(hi.wavefunction), log_derivative(lo.wavefunction)
    if cfg.theorem == "T1":
        rep = finite_difference_backlund(w_lo, w_hi, lo.energy, hi.energy, V, window=window)
        stage = "finite_difference_backlund"
        cols = {"w_in": _sample(w_hi, xs), "w_out": _sample(rep.new_solution, xs)}
    else:
        gval = cfg.gauge if cfg.gauge is not None else 1.0 / math.sqrt(gap)
        gauge = GammaGauge.constant(gval)
        if cfg.theorem == "T2":
            rep = generalized_backlund(w_hi, w_lo, gauge, V, hi.energy, window=window)
            stage = "generalized_backlund"
            cols = {"w_in": _sample(w_hi, xs), "w_out": _sample(rep.new_solution, xs)}
        else:
            rep = schrodinger_backlund(hi.wavefunction, lo.wavefunction, gauge, V, hi.energy, window=window)
            stage = "schrodinger_backlund"
            cols = {"phi_in": _sample(hi.wavefunction, xs), "phi_out": _sample(rep.new_solution, xs)}
            if hi.normalizable:
                report.norms["phi_out_sq"] = norm_squared(rep.new_solution)
    report.max_residuals[stage] = rep.max_residual
    report.check(f"{stage}.residual", rep.max_residual, report.threshold)
    report.diagnostics["energy"] = rep.energy
    return {"x": xs, "V0": _sample(V, xs), "V_image": _sample(rep.image_potential, xs), **cols}


def run_pipeline(cfg: PipelineConfig) -> PipelineOutput:
    cfg.validate()
    report = RunReport("transform", _config_echo(cfg), threshold=residual_threshold())
    xs = np.linspace(cfg.window.lo, cfg.window.hi, cfg.samples)
    t0 = time.perf_counter()
    try:
        if cfg.example is not None:
            cols = _run_example(cfg, xs, report)
        else:
            cols = _run_theorem(cfg, xs, report)
    except ResidualError as exc:
        rep = exc.report
        report.max_residuals[rep.stage if rep is not None else "transform"] = rep.max_residual if rep else math.inf
        report.check("transform.residual", rep.max_residual if rep else math.inf, report.threshold)
        report.diagnostics["error"] = str(exc)
        cols = {"x": xs}
        if rep is not None:
            cols.update(V_image=_sample(rep.image_potential, xs), phi_out=_sample(rep.new_solution, xs))
    report.wall_time_s = time.perf_counter() - t0
    return PipelineOutput(cols, report)


def _config_echo(cfg: PipelineConfig) -> dict:
    return {
        "family": cfg.family,
        "variant": cfg.variant,
        "theorem": cfg.theorem,
        "example": cfg.example,
        "params": dict(cfg.params),
        "gauge": cfg.gauge,
        "window": [cfg.window.lo, cfg.window.hi],
        "samples": cfg.samples,
    }


# verify suites -----------------------------------------------------------------


def _suite_group_law(report: RunReport, seed: int = 0, n_curves: int = 20):
    from .checks import group_law_deviations

    dev = group_law_deviations(n_curves, seed=seed)
    for name, value in dev.items():
        report.check(f"group-law.{name}", value, 1e-7)


def _suite_orthonormality(cfg: PipelineConfig, report: RunReport, kmax: int):
    from .verify import gram_matrix

    fam = cfg.family_params()
    states = [fam.eigenpair(k) for k in range(kmax + 1)]
    gram = gram_matrix([s.wavefunction for s in states])
    dev = float(np.max(np.abs(gram - np.eye(len(states)))))
    report.norms["gram_max_deviation"] = dev
    report.check("orthonormality.gram", dev, 2e-4)
    V = fam.potential()
    for s in states:
        sw = schrodinger_residual_sweep(V, s.energy, s.wavefunction, 500, TRANSFORM_WINDOW)
        report.max_residuals[f"eigenpair.k{s.k}"] = sw.max_rel
        report.check(f"eigenpair.k{s.k}.residual", sw.max_rel, report.threshold)


def _suite_intertwine(cfg: PipelineConfig, report: RunReport, kmax: int):
    from .checks import intertwining_deviations

    fam = cfg.family_params()
    dev = intertwining_deviations(fam, kmax)
    report.check("intertwine.residual", dev["residual"], report.threshold)
    report.check("intertwine.gram", dev["gram"], 2e-4)
    report.check("intertwine.log_derivative", dev["log_derivative"], 1e-6)
    report.check("intertwine.group_form", dev["group_form"], 1e-9)
    report.norms["gram_max_deviation"] = dev["gram"]


def _suite_reduction(report: RunReport, kmax: int):
    from .checks import round_trip_flatness

    worst = round_trip_flatness(min(kmax, 3))
    report.check("reduction.round_trip", worst, 1e-6)


def _suite_specfun(report: RunReport, seed: int):
    from .checks import special_function_deviations

    dev = special_function_deviations(seed=seed)
    report.check("specfun.incomplete_gamma_vs_quadrature", dev["incomplete_gamma"], 1e-8)
    report.check("specfun.laguerre_vs_series", dev["laguerre"], 1e-10)


def run_verify(cfg: PipelineConfig, suite: str | None, kmax: int, seed: int = 0) -> RunReport:
    report = RunReport("verify", {"suite": suite, **_config_echo(cfg)}, threshold=residual_threshold())
    t0 = time.perf_counter()
    if suite is None:
        suite = "example" if cfg.example is not None else "group-law"
    report.config["suite"] = suite
    if suite not in SUITES:
        raise ConfigError(f"suite must be one of {SUITES}, got {suite!r}")
    if suite == "group-law":
        _suite_group_law(report, seed)
    elif suite == "orthonormality":
        cfg.validate()
        _suite_orthonormality(cfg, report, kmax)
    elif suite == "intertwine":
        cfg.validate()
        _suite_intertwine(cfg, report, kmax)
    elif suite == "reduction":
        _suite_reduction(report, kmax)
    elif suite == "specfun":
        _suite_specfun(report, seed)
    else:
        if cfg.example is None:
            raise ConfigError("suite 'example' needs --example")
        cfg.validate()
        xs = np.linspace(cfg.window.lo, cfg.window.hi, 8)
        try:
            _run_example(cfg, xs, report)
        except ResidualError as exc:
            report.check("transform.residual", exc.report.max_residual if exc.report else math.inf, report.threshold)
    report.wall_time_s = time.perf_counter() - t0
    return report


# sweeps -------------------------------------------------------------------------------


def parse_grid(text) -> list[float]:
    """'a,b,c' or 'start:stop:step' (stop included when hit within rounding)."""
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    text = str(text).strip()
    if ":" in text:
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 3 or parts[2] == 0:
            raise ConfigError(f"grid range must be start:stop:step with step != 0, got {text!r}")
        start, stop, step = parts
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        if n < 1:
            raise ConfigError(f"empty grid {text!r}")
        return [round(start + i * step, 12) for i in range(n)]
    vals = [float(p) for p in text.split(",") if p.strip()]
    if not vals:
        raise ConfigError("grid is empty")
    return vals


def _sweep_point(args):
    cfg, param, value = args
    params = dict(cfg.params)
    params[param] = value
    point = replace(cfg, params=params)
    try:
        point.validate()
        out = run_pipeline(point)
        rep = out.report
        norm = rep.norms.get("eta_sq", rep.norms.get("phi_out_sq", math.nan))
        resid = max(rep.max_residuals.values()) if rep.max_residuals else math.nan
        err = "" if rep.passed else ";".join(c["name"] for c in rep.checks if not c["passed"])
        return value, norm, resid, err
    except (RiccatiForgeError, ConfigError, ValueError, ArithmeticError) as exc:
        return value, math.nan, math.nan, f"{type(exc).__name__}: {exc}"


def run_sweep(cfg: PipelineConfig, param: str, grid: list[float], jobs: int = 1) -> list[tuple]:
    if param not in ("l", "b", "q", "k"):
        raise ConfigError(f"sweep parameter must be l, b, q or k, got {param!r}")
    tasks = [(cfg, param, v) for v in grid]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_point, tasks))
    return [_sweep_point(t) for t in tasks]


def write_sweep(path: Path, param: str, rows: list[tuple]):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([param, "norm", "max_residual", "error"])
        for value, norm, resid, err in rows:
            w.writerow([_fmt(value), _fmt(norm), _fmt(resid), err])


# argument handling ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riccati-forge",
        description="Riccati gauge transformations, Backlund/Darboux pipelines and numerical checks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with any of the options below; flags override it")
        p.add_argument("--example", help="osc-7.1, coul-7.2, coul-7.3 or coul-7.4")
        p.add_argument("--family", choices=["oscillator", "coulomb"])
        p.add_argument("--variant", choices=["shifted", "unshifted"])
        p.add_argument("--theorem", choices=list(THEOREMS))
        p.add_argument("--l", type=float)
        p.add_argument("--b", type=float)
        p.add_argument("--q", type=float)
        p.add_argument("--k", type=int)
        p.add_argument("--m", type=int, help="lower state index for T1/T2/T3 (default 0)")
        p.add_argument("--gauge", type=float, help="constant gauge value for T2/T3")
        p.add_argument("--window-lo", type=float)
        p.add_argument("--window-hi", type=float)
        p.add_argument("--samples", type=int)
        p.add_argument("--out-dir")

    t = sub.add_parser("transform", help="run a pipeline and write CSV + JSON report")
    common(t)
    v = sub.add_parser("verify", help="run oracle checks only")
    common(v)
    v.add_argument("--suite", choices=list(SUITES))
    v.add_argument("--kmax", type=int)
    v.add_argument("--seed", type=int)
    s = sub.add_parser("sweep", help="one pipeline run per grid value")
    common(s)
    s.add_argument("--param")
    s.add_argument("--grid", help="comma list or start:stop:step")
    s.add_argument("--jobs", type=int)
    return parser


def merged_options(args: argparse.Namespace) -> dict:
    opts = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            opts[key] = value
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    return opts


def config_from_options(opts: dict) -> PipelineConfig:
    params = {key: opts[key] for key in ("l", "b", "q", "k", "m") if opts.get(key) is not None}
    try:
        window = Interval(float(opts["window_lo"]), float(opts["window_hi"]))
    except RiccatiForgeError as exc:
        raise ConfigError(f"invalid window: {exc}") from exc
    return PipelineConfig(
        family=opts["family"],
        variant=opts["variant"],
        theorem=str(opts["theorem"]).upper(),
        example=opts["example"],
        params=params,
        gauge=None if opts["gauge"] is None else float(opts["gauge"]),
        window=window,
        samples=int(opts["samples"]),
        out_dir=str(opts["out_dir"]),
    )


def _summary_line(report: RunReport) -> str:
    status = "PASS" if report.passed else "FAILED"
    worst = [c["name"] for c in report.checks if not c["passed"]]
    tail = f" ({', '.join(worst)})" if worst else ""
    return f"{report.command}: {status}, {len(report.checks)} checks{tail}"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        opts = merged_options(args)
        cfg = config_from_options(opts)
        out_dir = Path(cfg.out_dir)
        if args.command == "transform":
            result = run_pipeline(cfg)
            out_dir.mkdir(parents=True, exist_ok=True)
            write_csv(out_dir / f"{cfg.stem}.csv", result.columns)
            write_report(out_dir / f"{cfg.stem}.report.json", result.report)
            print(_summary_line(result.report))
            return 0 if result.report.passed else 1
        if args.command == "verify":
            report = run_verify(cfg, opts["suite"], int(opts["kmax"]), int(opts["seed"]))
            out_dir.mkdir(parents=True, exist_ok=True)
            write_report(out_dir / f"verify-{report.config['suite']}.report.json", report)
            for c in report.checks:
                mark = "ok  " if c["passed"] else "FAIL"
                print(f"{mark} {c['name']}: {c['value']:.6g} (limit {c['limit']:g})")
            for key in ("zero_count", "zeros"):
                if key in report.diagnostics:
                    print(f"     {key}: {report.diagnostics[key]}")
            print(_summary_line(report))
            return 0 if report.passed else 1
        if args.command == "sweep":
            if cfg.example is None and cfg.theorem != "T3":
                raise ConfigError("sweep needs --example or --theorem T3")
            if opts["grid"] is None:
                raise ConfigError("sweep needs --grid")
            grid = parse_grid(opts["grid"])
            rows = run_sweep(cfg, str(opts["param"]), grid, int(opts["jobs"]))
            out_dir.mkdir(parents=True, exist_ok=True)
            path = out_dir / f"sweep-{cfg.stem}-{opts['param']}.csv"
            write_sweep(path, str(opts["param"]), rows)
            failed = [r for r in rows if r[3]]
            print(f"sweep: {len(rows)} points, {len(failed)} failed -> {path}")
            return 0 if not failed else 1
    except (ConfigError, RiccatiForgeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())

