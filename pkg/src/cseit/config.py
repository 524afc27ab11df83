"""Run configuration: INI files with explicit unit suffixes on every frequency.

Frequency-valued keys carry one of two suffixes:

``<name>_mhz_over_2pi``
    value is ``x/2pi`` in MHz (``gamma_mhz_over_2pi = 6`` means gamma = 2pi*6 MHz)
``<name>_rad_per_s``
    value is the angular frequency in rad/s

There is no default convention, so the ambiguous ground-state decoherence
rate must always be stated one way or the other.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

from .params import (
    ClassicalIntensity,
    CollectiveFock,
    GenericDistribution,
    MultiModeCoherent,
    PhysicalParams,
    mhz_over_2pi,
)
from .photon_stats import SeriesControl

UNIT_SUFFIXES = {"mhz_over_2pi": mhz_over_2pi, "rad_per_s": float}
TASKS = ("spectrum", "dispersion", "classical-compare", "group-scan", "crossover",
         "peak-scan", "propagate", "photon-count")
FORMATS = ("csv", "json")

# section -> (frequency-valued keys, plain keys)
SCHEMA = {
    "physical": ({"gamma", "gamma0", "g1", "g2", "delta2"}, {"n_atoms", "length_m"}),
    "control": ({"omega_c"}, {"kind", "alpha_sq", "n_modes", "k", "classical_photons", "probabilities"}),
    "task": (set(), {"name"}),
    "grid": (set(), {"delta1_min_over_Gamma", "delta1_max_over_Gamma", "points"}),
    "scan": (set(), {"n2_min", "n2_max", "n2_list"}),
    "pulse": ({"carrier_detuning"}, {
        "probe_center_s", "probe_fwhm_s", "window_start_s", "dt_s", "samples", "z_m", "quad_steps",
        "profile", "profile_start_s", "profile_duration_s", "profile_points", "profile_dt_s",
        "profile_alpha_sq", "dip_center_s", "dip_fwhm_s", "dip_depth",
    }),
    "series": (set(), {"rel_tolerance", "max_terms"}),
    "output": (set(), {"path", "format"}),
}
REQUIRED_PHYSICAL = ("gamma", "gamma0", "g1", "g2")


class ConfigError(ValueError):
    pass


def _parse_value(text: str):
    text = text.strip()
    if "," in text:
        return [_parse_value(part) for part in text.split(",") if part.strip()]
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def _split_unit(key: str, frequency_keys: set):
    for suffix in UNIT_SUFFIXES:
        if key.endswith("_" + suffix):
            base = key[: -len(suffix) - 1]
            if base in frequency_keys:
                return base, suffix
    return None, None


@dataclass
class RunConfig:
    """Parsed configuration. ``sections`` holds the typed values exactly as written."""

    sections: dict = field(default_factory=dict)
    source: str = ""

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.sections == other.sections

    @property
    def task(self) -> str:
        return self.sections["task"]["name"]

    def section(self, name: str) -> dict:
        return self.sections.get(name, {})

    def frequency(self, section: str, base: str, default=None):
        """Resolved angular frequency (rad/s) of a suffixed key."""
        for suffix, convert in UNIT_SUFFIXES.items():
            key = f"{base}_{suffix}"
            if key in self.section(section):
                return convert(float(self.section(section)[key]))
        if default is not None:
            return default
        raise ConfigError(f"[{section}] missing required key {base}_<mhz_over_2pi|rad_per_s>")

    def unit_conventions(self) -> dict:
        out = {}
        for sec, (freq, _) in SCHEMA.items():
            for key in self.section(sec):
                base, suffix = _split_unit(key, freq)
                if base:
                    out[f"{sec}.{base}"] = suffix
        return out

    def physical_params(self) -> PhysicalParams:
        phys = self.section("physical")
        try:
            return PhysicalParams(
                gamma=self.frequency("physical", "gamma"),
                gamma0=self.frequency("physical", "gamma0"),
                g1=self.frequency("physical", "g1"),
                g2=self.frequency("physical", "g2"),
                n_atoms=float(phys.get("n_atoms", 1000)),
                length=float(phys.get("length_m", 0.03)),
                delta2=self.frequency("physical", "delta2", default=0.0),
            )
        except ValueError as exc:
            raise ConfigError(f"[physical] {exc}") from exc

    def n_modes_list(self) -> list:
        n = self.section("control").get("n_modes", 1)
        return [int(x) for x in n] if isinstance(n, list) else [int(n)]

    def control_state(self, params: PhysicalParams, n_modes: int | None = None):
        ctl = self.section("control")
        kind = ctl.get("kind", "coherent")
        n2 = self.n_modes_list()[0] if n_modes is None else n_modes
        try:
            if kind == "coherent":
                return MultiModeCoherent(float(ctl["alpha_sq"]), n2)
            if kind == "fock":
                return CollectiveFock(int(ctl.get("k", 0)), n2)
            if kind == "classical":
                if "classical_photons" in ctl:
                    return ClassicalIntensity(params.g2**2 * float(ctl["classical_photons"]))
                return ClassicalIntensity(self.frequency("control", "omega_c") ** 2)
            if kind == "distribution":
                flat = ctl["probabilities"]
                if not isinstance(flat, list) or len(flat) % 2:
                    raise ConfigError("[control] probabilities must be a flat list k1, p1, k2, p2, ...")
                return GenericDistribution(tuple(zip(flat[::2], flat[1::2])), n2)
        except KeyError as exc:
            raise ConfigError(f"[control] missing key {exc.args[0]!r} for kind={kind}") from exc
        except ValueError as exc:
            raise ConfigError(f"[control] {exc}") from exc
        raise ConfigError(f"[control] unknown kind {kind!r}")

    def series_control(self) -> SeriesControl:
        s = self.section("series")
        try:
            return SeriesControl(float(s.get("rel_tolerance", 1e-12)), int(s.get("max_terms", 10_000)))
        except ValueError as exc:
            raise ConfigError(f"[series] {exc}") from exc

    def to_dict(self) -> dict:
        return {sec: dict(values) for sec, values in self.sections.items()}

    @classmethod
    def from_dict(cls, data: dict, source: str = "") -> "RunConfig":
        cfg = cls({sec: dict(values) for sec, values in data.items()}, source)
        validate(cfg)
        return cfg


def validate(cfg: RunConfig) -> None:
    for sec, values in cfg.sections.items():
        if sec not in SCHEMA:
            raise ConfigError(f"unknown section [{sec}]")
        freq, plain = SCHEMA[sec]
        for key in values:
            if key in plain:
                continue
            base, _ = _split_unit(key, freq)
            if base is None:
                hint = " (frequency keys need _mhz_over_2pi or _rad_per_s)" if any(
                    key.startswith(f) for f in freq) else ""
                raise ConfigError(f"[{sec}] unknown or malformed key {key!r}{hint}")
        seen = {}
        for key in values:
            base, _ = _split_unit(key, freq)
            if base:
                if base in seen:
                    raise ConfigError(f"[{sec}] {base} given twice ({seen[base]}, {key})")
                seen[base] = key
    if "task" not in cfg.sections or "name" not in cfg.sections["task"]:
        raise ConfigError("[task] name is required")
    if cfg.task not in TASKS:
        raise ConfigError(f"[task] unknown task {cfg.task!r}; expected one of {', '.join(TASKS)}")
    for base in REQUIRED_PHYSICAL:
        cfg.frequency("physical", base)
    fmt = cfg.section("output").get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"[output] format must be csv or json, got {fmt!r}")
    for key in ("n_atoms", "length_m"):
        v = cfg.section("physical").get(key)
        if v is not None and not (isinstance(v, (int, float)) and math.isfinite(v)):
            raise ConfigError(f"[physical] {key} must be a number")


def loads(text: str, source: str = "<string>") -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    sections = {sec: {k: _parse_value(v) for k, v in parser.items(sec)} for sec in parser.sections()}
    cfg = RunConfig(sections, source)
    validate(cfg)
    return cfg


def load(path) -> RunConfig:
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), source=str(path))


def bundled_configs() -> dict:
    root = Path(__file__).parent / "configs"
    return {p.stem: p for p in sorted(root.glob("*.ini"))}
