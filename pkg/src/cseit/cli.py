"""Command-line front end for the coherent-control EIT model.

    cseit run <config> [--output PATH] [--format csv|json] [--quiet]
    cseit configs

``<config>`` is an INI file or the name of a bundled figure config.
Exit codes: 0 success, 1 configuration error, 2 numeric error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import kernels
from .config import ConfigError, RunConfig, bundled_configs, load
from .errors import EITError
from .output import TaskResult, emit_csv, emit_json
from .params import C_LIGHT, MultiModeCoherent, equivalent_classical_intensity
from .pulse import (
    ConstantProfile,
    SampledProfile,
    control_photon_count,
    make_gaussian_envelope,
    propagate_constant,
    propagate_timedep,
)
from .response import (
    classical_spectrum,
    find_crossover,
    group_index_scan,
    spectrum,
    transparency_peak_scan,
)

log = logging.getLogger("cseit")


def _grid(cfg, params):
    g = cfg.section("grid")
    lo = float(g.get("delta1_min_over_Gamma", -3.0))
    hi = float(g.get("delta1_max_over_Gamma", 3.0))
    n = int(g.get("points", 601))
    if n < 2 or hi <= lo:
        raise ConfigError("[grid] needs points >= 2 and delta1_max_over_Gamma > delta1_min_over_Gamma")
    x = np.linspace(lo, hi, n)
    return x, x * params.Gamma


def _at_zero(x, values):
    return float(values[int(np.argmin(np.abs(x)))])


def _n2_values(cfg):
    s = cfg.section("scan")
    if "n2_list" in s:
        v = s["n2_list"]
        return [int(i) for i in (v if isinstance(v, list) else [v])]
    return list(range(int(s.get("n2_min", 1)), int(s.get("n2_max", 30)) + 1))


def task_spectrum(cfg, params, ctrl, dispersion_only=False):
    x, grid = _grid(cfg, params)
    modes = cfg.n_modes_list()
    cols = {"delta1_over_gamma": x}
    scalars = {}
    for n2 in modes:
        res = spectrum(params, cfg.control_state(params, n2), grid, ctrl)
        tag = "" if len(modes) == 1 else f"_n2_{n2}"
        if not dispersion_only:
            cols["kappa_norm" + tag] = res.kappa_norm
        cols["phi_norm" + tag] = res.phi_norm
        scalars["kappa_norm_at_0" + tag] = _at_zero(x, res.kappa_norm)
        scalars["max_abs_phi_norm" + tag] = float(np.max(np.abs(res.phi_norm)))
    key = next(iter(scalars)) if not dispersion_only else next(k for k in scalars if k.startswith("max"))
    name = "dispersion" if dispersion_only else "spectrum"
    return TaskResult(name, cols, f"{name}: {key} = {scalars[key]:.6g}", scalars)


def task_classical_compare(cfg, params, ctrl):
    x, grid = _grid(cfg, params)
    state = cfg.control_state(params)
    omega_sq = equivalent_classical_intensity(state, params)
    q = spectrum(params, state, grid, ctrl)
    c = classical_spectrum(params, omega_sq, grid)
    dev = float(np.max(np.abs(q.kappa_norm - c.kappa_norm)))
    cols = {
        "delta1_over_gamma": x,
        "kappa_norm_quantum": q.kappa_norm,
        "kappa_norm_classical": c.kappa_norm,
        "phi_norm_quantum": q.phi_norm,
        "phi_norm_classical": c.phi_norm,
    }
    scalars = {"omega_c_sq_over_Gamma_sq": omega_sq / params.Gamma**2, "max_abs_kappa_norm_deviation": dev}
    return TaskResult("classical-compare", cols, f"classical-compare: max |dkappa_norm| = {dev:.6g}", scalars)


def _alpha_sq(cfg):
    try:
        return float(cfg.section("control")["alpha_sq"])
    except KeyError as exc:
        raise ConfigError("[control] alpha_sq is required for mode-number scans") from exc


def task_group_scan(cfg, params, ctrl):
    rows = group_index_scan(params, _alpha_sq(cfg), _n2_values(cfg), ctrl)
    cols = {
        "n_modes": [n for n, _ in rows],
        "n_g": [r.n_g for _, r in rows],
        "v_g": [r.v_g for _, r in rows],
        "u": [r.u for _, r in rows],
    }
    first = rows[0][1]
    return TaskResult("group-scan", cols, f"group-scan: v_g(N2={rows[0][0]}) = {first.v_g:.6g} m/s",
                      {"v_g_first": first.v_g})


def task_crossover(cfg, params, ctrl):
    n2 = _n2_values(cfg)
    res = find_crossover(params, _alpha_sq(cfg), (min(n2), max(n2)), ctrl)
    cols = {"n2_lo": [res.bracket[0]], "n2_hi": [res.bracket[1]], "continuous_root": [res.continuous_root]}
    scalars = {"bracket": list(res.bracket), "continuous_root": res.continuous_root}
    return TaskResult("crossover", cols,
                      f"crossover: N2 in {list(res.bracket)}, continuous root = {res.continuous_root:.6g}", scalars)


def task_peak_scan(cfg, params, ctrl):
    rows = transparency_peak_scan(params, _alpha_sq(cfg), _n2_values(cfg), ctrl)
    cols = {"n_modes": [r[0] for r in rows], "peak": [r[1] for r in rows], "peak_normalized": [r[2] for r in rows]}
    last = rows[-1]
    return TaskResult("peak-scan", cols, f"peak-scan: T({last[0]})/T(1) = {last[2]:.6g}",
                      {"last_normalized": last[2]})


def _profile(cfg):
    p = cfg.section("pulse")
    kind = p.get("profile", "constant")
    alpha_sq = float(cfg.section("control").get("alpha_sq", 0.0))
    start = float(p.get("profile_start_s", 0.0))
    if kind == "constant":
        return ConstantProfile(alpha_sq)
    if kind == "flat":
        return SampledProfile.flat(alpha_sq, float(p["profile_duration_s"]), start, int(p.get("profile_points", 2)))
    if kind == "gaussian-dip":
        n = int(p.get("profile_points", 1001))
        t = start + np.linspace(0.0, float(p["profile_duration_s"]), n)
        fwhm = float(p["dip_fwhm_s"])
        depth = float(p.get("dip_depth", 0.5))
        shape = 1.0 - depth * np.exp(-4.0 * np.log(2.0) * ((t - float(p["dip_center_s"])) / fwhm) ** 2)
        return SampledProfile(start, t[1] - t[0], alpha_sq * shape)
    if kind == "sampled":
        return SampledProfile(start, float(p["profile_dt_s"]), p["profile_alpha_sq"])
    raise ConfigError(f"[pulse] unknown profile {kind!r}")


def task_propagate(cfg, params, ctrl):
    p = cfg.section("pulse")
    try:
        env = make_gaussian_envelope(float(p["probe_center_s"]), float(p["probe_fwhm_s"]),
                                     float(p["window_start_s"]), float(p["dt_s"]), int(p["samples"]))
    except KeyError as exc:
        raise ConfigError(f"[pulse] missing key {exc.args[0]!r}") from exc
    z = float(p.get("z_m", params.length))
    carrier = cfg.frequency("pulse", "carrier_detuning", default=0.0)
    profile = _profile(cfg)
    state = cfg.control_state(params)
    if isinstance(profile, ConstantProfile):
        res = propagate_constant(params, state, env, z, ctrl, carrier)
    else:
        if not isinstance(state, MultiModeCoherent):
            raise ConfigError("time-dependent propagation needs kind = coherent")
        res = propagate_timedep(params, state.n_modes, profile, env, z, int(p.get("quad_steps", 64)), ctrl, carrier)
    out = res.output
    cols = {
        "t": env.times,
        "input_re": env.samples.real,
        "input_im": env.samples.imag,
        "output_re": out.samples.real,
        "output_im": out.samples.imag,
    }
    scalars = {"transmitted_fraction": res.transmitted_fraction, "peak_delay": res.peak_delay}
    return TaskResult("propagate", cols,
                      f"propagate: transmitted_fraction = {res.transmitted_fraction:.6g}, "
                      f"peak_delay = {res.peak_delay:.6g} s", scalars)


def task_photon_count(cfg, params, ctrl):
    profile = _profile(cfg)
    if isinstance(profile, ConstantProfile):
        raise ConfigError("[pulse] photon-count needs a finite profile (flat, gaussian-dip or sampled)")
    times, flux, n_c = control_photon_count(profile, params.length)
    return TaskResult("photon-count", {"t": times, "flux": flux}, f"photon-count: n_c = {n_c:.1e}", {"n_c": n_c})


TASKS = {
    "spectrum": task_spectrum,
    "dispersion": lambda cfg, params, ctrl: task_spectrum(cfg, params, ctrl, dispersion_only=True),
    "classical-compare": task_classical_compare,
    "group-scan": task_group_scan,
    "crossover": task_crossover,
    "peak-scan": task_peak_scan,
    "propagate": task_propagate,
    "photon-count": task_photon_count,
}


def resolve_config_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    bundled = bundled_configs()
    stem = path.name[:-4] if path.name.endswith(".ini") else path.name
    if stem in bundled:
        return bundled[stem]
    raise FileNotFoundError(f"no config file or bundled config named {name!r}")


def meta_for(cfg: RunConfig, params) -> dict:
    return {
        "config": cfg.to_dict(),
        "source": cfg.source,
        "unit_conventions": cfg.unit_conventions(),
        "resolved_rad_per_s": {
            "gamma": params.gamma,
            "Gamma": params.Gamma,
            "gamma0": params.gamma0,
            "g1": params.g1,
            "g2": params.g2,
            "delta2": params.delta2,
        },
        "n_atoms": params.n_atoms,
        "length_m": params.length,
        "speed_of_light_m_per_s": C_LIGHT,
    }


def execute(cfg: RunConfig) -> TaskResult:
    params = cfg.physical_params()
    return TASKS[cfg.task](cfg, params, cfg.series_control())


def run(config: str, output: str | None = None, fmt: str | None = None, quiet: bool = False) -> int:
    try:
        path = resolve_config_path(config)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        cfg = load(path)
        fmt = fmt or cfg.section("output").get("format", "csv")
        params = cfg.physical_params()
        result = execute(cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (EITError, ValueError) as exc:
        print(f"numeric error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2

    target = Path(output or cfg.section("output").get("path") or f"{path.stem}.{fmt}")
    try:
        if fmt == "json":
            emit_json(result, target, meta_for(cfg, params))
        else:
            emit_csv(result, target)
    except OSError as exc:
        print(f"error: cannot write {target}: {exc}", file=sys.stderr)
        return 3
    if not quiet:
        print(result.summary)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="cseit", description=__doc__.split("\n")[0] or None)
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a config file or bundled config")
    r.add_argument("config")
    r.add_argument("--output", help="result path (default: [output] path, else <config>.<format>)")
    r.add_argument("--format", choices=("csv", "json"))
    r.add_argument("--quiet", action="store_true", help="suppress the summary line")
    sub.add_parser("configs", help="list bundled configs")
    sub.add_parser("backend", help="print the active series-kernel backend")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "configs":
        for name, p in bundled_configs().items():
            print(f"{name}\t{p}")
        return 0
    if args.command == "backend":
        print(kernels.BACKEND)
        return 0
    return run(args.config, args.output, args.format, args.quiet)


if __name__ == "__main__":
    sys.exit(main())
