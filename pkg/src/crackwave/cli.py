"""Batch driver: reproduces every figure's data as CSV and runs the oracle
suite (`validate`).

Configuration is flat `section.key = value` text; see the presets directory
for one config per figure.  Exit codes: 2 config error, 3 numerical failure,
4 regime violation.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import dispersion as disp
from . import energy, fields
from .classical import h_coefficients, h_coefficients_contour, kp_coefficient
from .errors import (BracketError, ConfigError, CrackwaveError, DomainError,
                     PoleError, QuadratureError, RealnessError, RegimeError,
                     RootLossError)
from .kernel import KernelParams, factorize
from .loading import LoadProfile, build_split
from .material import Material, critical_speed, h0_star, lambda_surface, upsilon

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_REGIME = 4

SUBCOMMANDS = ("dispersion", "regime-map", "fields", "tmax-sweep",
               "err-sweep", "limit-study", "validate")


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def parse_config(path) -> dict:
    """Flat `section.key = value` file; '#' starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"{path}:{lineno}: empty key or value")
        out[key] = value
    return out


def _get(cfg, key, cast, default=None):
    if key not in cfg:
        if default is not None:
            return default
        raise ConfigError(f"missing config key {key!r}")
    try:
        return cast(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {cfg[key]!r}") from exc


@dataclass
class RunConfig:
    material: Material
    profile: LoadProfile
    m: float
    sweep: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_file(cls, path):
        cfg = parse_config(path)
        material = Material(
            G=_get(cfg, "material.G", float, 1.0),
            rho=_get(cfg, "material.rho", float, 1.0),
            ell=_get(cfg, "material.ell", float, 1.0),
            eta=_get(cfg, "material.eta", float),
            h0=_get(cfg, "material.h0", float),
        )
        ell = material.ell
        profile = LoadProfile(
            T0=_get(cfg, "load.T0", float, 1.0),
            L=_get(cfg, "load.L_over_ell", float, 1.0) * ell,
            p=_get(cfg, "load.p", int, 0),
        )
        m = _get(cfg, "state.m", float, 0.0)
        sweep = {}
        if "sweep.variable" in cfg:
            sweep = dict(
                variable=cfg["sweep.variable"],
                start=_get(cfg, "sweep.start", float),
                stop=_get(cfg, "sweep.stop", float),
                count=_get(cfg, "sweep.count", int),
                scale=cfg.get("sweep.scale", "linear"),
            )
            if sweep["scale"] not in ("linear", "log"):
                raise ConfigError(f"sweep.scale must be linear or log")
            if sweep["count"] < 2 or not sweep["stop"] > sweep["start"]:
                raise ConfigError("sweep grid must be strictly increasing")
        extra = {k: v for k, v in cfg.items()
                 if not k.split(".")[0] in ("material", "load", "state", "sweep")}
        return cls(material=material, profile=profile, m=m, sweep=sweep,
                   extra=extra)

    def grid(self):
        if not self.sweep:
            raise ConfigError("this subcommand needs a sweep block")
        s = self.sweep
        if s["scale"] == "log":
            if s["start"] <= 0:
                raise ConfigError("log sweep needs a positive start")
            return np.geomspace(s["start"], s["stop"], s["count"])
        return np.linspace(s["start"], s["stop"], s["count"])


def _write_csv(path: Path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)

    def fmt(v):
        if isinstance(v, (float, np.floating)):
            return repr(float(v))  # shortest round-trip decimal
        if isinstance(v, (int, np.integer)):
            return str(int(v))
        return v

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_dispersion(run: RunConfig, out: Path, jobs: int):
    axis = run.extra.get("dispersion.axis", "omega")
    grid = run.grid()
    pts = disp.trace_curve(grid, run.material.eta, run.material.h0, axis=axis)
    rows = [(run.material.eta, run.material.h0, p.omega_norm, p.k_norm, p.mR)
            for p in pts]
    return _write_csv(out / "dispersion.csv",
                      ["eta", "h0", "omega_ell_over_cs", "k_ell", "m_R"], rows)


def _cmd_regime_map(run: RunConfig, out: Path, jobs: int):
    eta = run.material.eta
    rows = []
    for h0 in np.linspace(0.02, 1.2, 60):
        rows.append(("m_c_vs_h0", eta, h0, critical_speed(eta, h0)))
    for e in np.linspace(-0.95, 0.95, 39):
        rows.append(("h0_star_vs_eta", e, float("nan"), h0_star(e)))
    return _write_csv(out / "regime-map.csv",
                      ["curve", "eta", "h0", "value"], rows)


def _build_split(run: RunConfig, m=None):
    m = run.m if m is None else m
    params = KernelParams(m=m, eta=run.material.eta, h0=run.material.h0)
    kernel = factorize(params)
    return build_split(kernel, run.material, run.profile)


def _cmd_fields(run: RunConfig, out: Path, jobs: int):
    split = _build_split(run)
    n = int(run.extra.get("fields.points", 160))
    T0, ell = run.profile.T0, run.material.ell
    header = ["m", "eta", "h0", "p", "L_over_ell", "X", "X_over_ell",
              "w", "w_G_over_T0_ell", "p3", "p3_ell_over_T0",
              "sigma23_ell_over_T0", "tau23_ell_over_T0", "mu22_over_T0",
              "t23_ell_over_T0"]
    meta = (run.m, run.material.eta, run.material.h0, run.profile.p,
            run.profile.L / ell)
    rows = []
    for x in np.geomspace(1e-3 * ell, 1e2 * max(run.profile.L, ell), n):
        w = fields.crack_opening(-x, split)
        p3 = fields.traction_ahead(x, split)
        st = fields.stresses_on_line(x, split)
        rows.append(meta + (x, x / ell, w, w * run.material.G / (T0 * ell),
                            p3, p3 * ell / T0, st["sigma23"] * ell / T0,
                            st["tau23"] * ell / T0, st["mu22"] / T0,
                            st["t23"] * ell / T0))
    return _write_csv(out / "fields.csv", header, rows)


def _tmax_row(args):
    (G, rho, ell, eta, h0, T0, L, p, m) = args
    material = Material(G=G, rho=rho, ell=ell, eta=eta, h0=h0)
    profile = LoadProfile(T0=T0, L=L, p=p)
    kernel = factorize(KernelParams(m=m, eta=eta, h0=h0))
    split = build_split(kernel, material, profile)
    t23max, x_at = fields.max_total_shear(split)
    return (m, eta, h0, p, L / ell, t23max, t23max * ell / T0, x_at / ell)


def _err_row(args):
    (G, rho, ell, eta, h0, T0, L, p, m) = args
    material = Material(G=G, rho=rho, ell=ell, eta=eta, h0=h0)
    profile = LoadProfile(T0=T0, L=L, p=p)
    res = energy.err_result(material, m, profile)
    e_norm = res.E * G * ell / (T0 * T0)
    return (m, eta, h0, p, L / ell, res.E, e_norm, res.E_cl, res.ratio)


def _sweep_args(run: RunConfig, variable: str, value: float):
    mat, prof = run.material, run.profile
    m, L = run.m, prof.L
    if variable == "m":
        m = value
    elif variable == "m_of_limit":
        m = value * min(1.0, critical_speed(mat.eta, mat.h0))
    elif variable == "L_over_ell":
        L = value * mat.ell
    else:
        raise ConfigError(f"unsupported sweep variable {variable!r}")
    return (mat.G, mat.rho, mat.ell, mat.eta, mat.h0, prof.T0, L, prof.p, m)


def _run_rows(worker, args_list, jobs):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, args_list))
    return [worker(a) for a in args_list]


def _cmd_tmax_sweep(run: RunConfig, out: Path, jobs: int):
    variable = run.sweep["variable"]
    args = [_sweep_args(run, variable, v) for v in run.grid()]
    rows = _run_rows(_tmax_row, args, jobs)
    return _write_csv(out / "tmax-sweep.csv",
                      ["m", "eta", "h0", "p", "L_over_ell", "t23max",
                       "t23max_ell_over_T0", "X_at_over_ell"], rows)


def _cmd_err_sweep(run: RunConfig, out: Path, jobs: int):
    variable = run.sweep["variable"]
    args = [_sweep_args(run, variable, v) for v in run.grid()]
    rows = _run_rows(_err_row, args, jobs)
    return _write_csv(out / "err-sweep.csv",
                      ["m", "eta", "h0", "p", "L_over_ell", "E",
                       "E_G_ell_over_T0sq", "E_classical", "ratio"], rows)


def _cmd_limit_study(run: RunConfig, out: Path, jobs: int):
    from .loading import limit_constant
    from .material import zeta as zeta_fn

    mat, prof0 = run.material, run.profile
    params = KernelParams(m=run.m, eta=mat.eta, h0=mat.h0)
    kernel = factorize(params)
    zv = zeta_fn(mat.eta, mat.h0, run.m)
    rows = []
    for val in run.grid():
        profile = LoadProfile(T0=prof0.T0, L=val * mat.ell, p=prof0.p)
        split = build_split(kernel, mat, profile)
        res = energy.err_result(mat, run.m, profile, split=split)
        c_lim = limit_constant(profile, zv)
        drift = abs(split.F / (c_lim * math.sqrt(mat.ell)) - 1.0)
        rows.append((run.m, mat.eta, mat.h0, prof0.p, val, res.E, res.E_cl,
                     res.ratio, abs(res.ratio - 1.0), drift))
    return _write_csv(out / "limit-study.csv",
                      ["m", "eta", "h0", "p", "L_over_ell", "E", "E_classical",
                       "ratio", "abs_ratio_minus_1", "F_limit_drift"], rows)


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def _validate_checks():
    """Quick oracle suite: (check_id, target, computed, tolerance) rows."""
    checks = []

    mc = critical_speed(-0.9, 0.707)
    checks.append(("critical_speed_eta-0.9_h0-0.707", 0.441, mc, 5e-3))
    checks.append(("critical_speed_degenerate", 1.0,
                   critical_speed(0.0, 1.0 / math.sqrt(2.0)), 1e-8))
    checks.append(("h0_star_eta0", 1.0 / math.sqrt(2.0), h0_star(0.0), 1e-8))
    checks.append(("lambda_at_h0star", 0.0,
                   lambda_surface(0.9, h0_star(0.9), 1.0), 1e-10))

    pts = disp.trace_curve(np.geomspace(0.1, 10.0, 25), 0.0, 0.707, axis="k")
    dev = max(abs(p.mR - disp.shear_phase_speed(p.k_norm, 0.707)) for p in pts)
    checks.append(("dispersion_shear_degeneracy", 0.0, dev, 1e-8))
    m_inf = disp.trace_curve(np.array([1e3]), 0.9, 0.8, axis="omega")[0].mR
    checks.append(("dispersion_highfreq_limit", critical_speed(0.9, 0.8),
                   m_inf, 1e-3))

    hj = h_coefficients(3, 2.0)
    hj2 = h_coefficients_contour(3, 2.0)
    checks.append(("classical_coefficients_contour", 0.0,
                   float(np.abs(hj - hj2).max()), 1e-10))
    kp_dev = max(abs(kp_coefficient(p) - v)
                 for p, v in enumerate((1.0, 0.5, 0.375, 0.3125)))
    checks.append(("kp_closed_form", 0.0, kp_dev, 1e-12))

    params = KernelParams(m=0.3, eta=0.9, h0=0.707)
    kernel = factorize(params)
    xi = np.geomspace(1e-2, 1e3, 100)
    ident = max(abs(kernel.k_minus(x) / kernel.k_plus(x) - kernel.k_real(x))
                / kernel.k_real(x) for x in xi)
    checks.append(("factorization_identity", 0.0, float(ident), 1e-8))

    material = Material(G=1.0, rho=1.0, ell=1.0, eta=0.9, h0=0.707)
    profile = LoadProfile(T0=1.0, L=10.0, p=1)
    split = build_split(kernel, material, profile)
    checks.append(("liouville_cross_check", 0.0,
                   abs(split.F - split.F_alt) / abs(split.F), 1e-6))
    w0 = fields.crack_opening(-1e-10, split)
    w_ref = abs(fields.crack_opening(-3.0, split))
    checks.append(("tip_closure", 0.0, abs(w0) / w_ref, 1e-6))
    res = energy.err_result(material, 0.3, profile, kernel)
    checks.append(("err_positive", 1.0, 1.0 if res.E > 0 else 0.0, 0.5))
    checks.append(("err_smalllength_identity",
                   energy.err_classical(profile, 0.3, 1.0),
                   energy.err_smalllength_limit(profile, 0.3, 1.0), 1e-12))
    return checks


def _cmd_validate(run: RunConfig | None, out: Path, jobs: int):
    checks = _validate_checks()
    rows = []
    n_fail = 0
    print(f"{'check':40s} {'target':>14s} {'computed':>14s} {'tol':>9s}  status")
    for check_id, target, computed, tol in checks:
        ok = abs(computed - target) <= tol
        n_fail += 0 if ok else 1
        print(f"{check_id:40s} {target:14.6g} {computed:14.6g} {tol:9.1e}  "
              f"{'pass' if ok else 'FAIL'}")
        rows.append((check_id, target, computed, tol, ok))
    _write_csv(out / "validate_report.csv",
               ["check_id", "target", "computed", "tolerance", "pass"], rows)
    if n_fail:
        raise QuadratureError(f"{n_fail} validation checks failed")
    return out / "validate_report.csv"


_DISPATCH = {
    "dispersion": _cmd_dispersion,
    "regime-map": _cmd_regime_map,
    "fields": _cmd_fields,
    "tmax-sweep": _cmd_tmax_sweep,
    "err-sweep": _cmd_err_sweep,
    "limit-study": _cmd_limit_study,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="crackwave",
        description="Steady antiplane moving-crack solver for couple-stress "
                    "elasticity (CSV outputs).")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for sweep rows")
    args = parser.parse_args(argv)

    out = Path(args.out)
    try:
        if args.subcommand == "validate":
            run = RunConfig.from_file(args.config) if args.config else None
            path = _cmd_validate(run, out, args.jobs)
        else:
            if not args.config:
                raise ConfigError(f"{args.subcommand} requires --config")
            run = RunConfig.from_file(args.config)
            path = _DISPATCH[args.subcommand](run, out, args.jobs)
        print(f"wrote {path}")
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RegimeError, DomainError, PoleError) as exc:
        print(f"regime/domain violation: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (QuadratureError, BracketError, RootLossError, RealnessError,
            CrackwaveError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
