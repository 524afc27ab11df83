"""Probe wave-packet propagation and control photon-flux bookkeeping.

The envelope at depth ``z`` is the input envelope at retarded time
``tau = t - z*u`` times ``exp(int_0^z (-kappa/2 + i*phi) dz')``, with
``kappa`` and ``phi`` read at the control intensity seen by the pulse
at ``tau + z'*u``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import kernels
from .errors import InvalidParameter, NonConvergence, WindowTooShort
from .params import C_LIGHT, ControlState, MultiModeCoherent, PhysicalParams
from .photon_stats import DEFAULT_CONTROL, SeriesControl
from .response import absorption_at, dispersion_at, group_index

log = logging.getLogger(__name__)

LOST_ENERGY_TOLERANCE = 1e-6
MAX_RETARDATION_ITERATIONS = 200


@dataclass(frozen=True)
class PulseEnvelope:
    t0: float
    dt: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex).copy()
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        if not self.dt > 0:
            raise InvalidParameter(f"dt must be > 0, got {self.dt!r}")
        if samples.ndim != 1 or samples.size < 8:
            raise InvalidParameter("an envelope needs at least 8 samples")

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (self.samples.size - 1)

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.dt)

    def peak_time(self) -> float:
        """Time of the |E|^2 maximum, refined by a three-point parabola."""
        p = np.abs(self.samples) ** 2
        i = int(np.argmax(p))
        offset = 0.0
        if 0 < i < p.size - 1:
            den = p[i - 1] - 2 * p[i] + p[i + 1]
            if den < 0:
                offset = 0.5 * (p[i - 1] - p[i + 1]) / den
        return self.t0 + (i + offset) * self.dt

    def intensity_fwhm(self) -> float:
        """Full width at half maximum of |E|^2, from the outermost crossings."""
        p = np.abs(self.samples) ** 2
        if p.max() == 0:
            return 0.0
        above = np.flatnonzero(p >= 0.5 * p.max())
        return float((above[-1] - above[0] + 1) * self.dt)

    def at(self, t) -> np.ndarray:
        """Linear interpolation, zero outside the window."""
        t = np.asarray(t, dtype=float)
        x = self.times
        return np.interp(t, x, self.samples.real, 0.0, 0.0) + 1j * np.interp(t, x, self.samples.imag, 0.0, 0.0)


@dataclass(frozen=True)
class ConstantProfile:
    alpha_sq: float

    def __post_init__(self):
        if not self.alpha_sq >= 0:
            raise InvalidParameter(f"alpha_sq must be >= 0, got {self.alpha_sq!r}")

    duration = math.inf

    def __call__(self, t):
        return np.full(np.shape(t), float(self.alpha_sq))


@dataclass(frozen=True)
class SampledProfile:
    """Mean control photon number ``|alpha(t)|^2`` on a uniform grid; zero outside it."""

    t0: float
    dt: float
    alpha_sq_samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.asarray(self.alpha_sq_samples, dtype=float).copy()
        s.setflags(write=False)
        object.__setattr__(self, "alpha_sq_samples", s)
        if not self.dt > 0:
            raise InvalidParameter(f"dt must be > 0, got {self.dt!r}")
        if s.ndim != 1 or s.size < 2:
            raise InvalidParameter("a sampled profile needs at least 2 samples")
        if np.any(~(s >= 0)):
            raise InvalidParameter("profile samples must be non-negative")

    @classmethod
    def flat(cls, alpha_sq: float, duration: float, t0: float = 0.0, n: int = 2):
        return cls(t0, duration / (n - 1), np.full(n, float(alpha_sq)))

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.alpha_sq_samples.size)

    @property
    def duration(self) -> float:
        return self.dt * (self.alpha_sq_samples.size - 1)

    def __call__(self, t):
        return np.interp(np.asarray(t, dtype=float), self.times, self.alpha_sq_samples, 0.0, 0.0)


ControlProfile = Union[ConstantProfile, SampledProfile]


@dataclass(frozen=True)
class PropagationResult:
    output: PulseEnvelope
    transmitted_fraction: float
    peak_delay: float


def make_gaussian_envelope(t_center: float, fwhm: float, t0: float, dt: float, n: int) -> PulseEnvelope:
    """Unit-peak Gaussian whose intensity |E|^2 has full width ``fwhm``."""
    if not fwhm > 0:
        raise InvalidParameter(f"fwhm must be > 0, got {fwhm!r}")
    t_end = t0 + dt * (n - 1)
    if t0 > t_center - 3 * fwhm or t_end < t_center + 3 * fwhm:
        raise WindowTooShort(
            f"window [{t0:g}, {t_end:g}] s does not cover +-3 fwhm around {t_center:g} s"
        )
    t = t0 + dt * np.arange(n)
    return PulseEnvelope(t0, dt, np.exp(-2.0 * math.log(2.0) * ((t - t_center) / fwhm) ** 2))


def _check_depth(params, z):
    if not (0 < z <= params.length * (1 + 1e-12)):
        raise InvalidParameter(f"z must lie in (0, L={params.length}], got {z!r}")


def _check_adiabatic(params, env):
    t1 = env.intensity_fwhm()
    if t1 <= 1.0 / params.gamma:
        log.warning("probe duration %.3g s is not longer than 1/gamma = %.3g s; "
                    "adiabatic elimination is outside its validity range", t1, 1.0 / params.gamma)


def _check_window(env: PulseEnvelope, tau: np.ndarray):
    """Raise if input energy falls outside the retarded times the output grid samples."""
    if env.energy == 0:
        return
    t = env.times
    outside = (t < tau.min() - 0.5 * env.dt) | (t > tau.max() + 0.5 * env.dt)
    lost = float(np.sum(np.abs(env.samples[outside]) ** 2) * env.dt) / env.energy
    if lost > LOST_ENERGY_TOLERANCE:
        raise WindowTooShort(f"{lost:.3g} of the pulse energy leaves the sampling window")


def _result(env, out_samples):
    out = PulseEnvelope(env.t0, env.dt, out_samples)
    frac = out.energy / env.energy if env.energy > 0 else 0.0
    return PropagationResult(out, frac, out.peak_time() - env.peak_time())


def propagate_constant(params: PhysicalParams, state: ControlState, envelope: PulseEnvelope, z: float,
                       ctrl: SeriesControl = DEFAULT_CONTROL, carrier_detuning: float = 0.0) -> PropagationResult:
    """Propagate through depth ``z`` with a time-independent control state.

    The group delay uses the resonant group index; ``carrier_detuning`` only
    moves the point where absorption and phase are read.
    """
    _check_depth(params, z)
    _check_adiabatic(params, envelope)
    kappa, _ = absorption_at(params, state, carrier_detuning, ctrl)
    phi, _ = dispersion_at(params, state, carrier_detuning, ctrl)
    u = group_index(params, state, ctrl).u
    tau = envelope.times - z * u
    _check_window(envelope, tau)
    factor = np.exp(complex(-0.5 * kappa, phi) * z)
    return _result(envelope, envelope.at(tau) * factor)


def _inverse_velocity(params, n_modes, intensities, ctrl):
    out = np.empty(intensities.shape)
    cache = {}
    for i, a in enumerate(intensities.flat):
        if a not in cache:
            cache[a] = group_index(params, MultiModeCoherent(float(a), n_modes), ctrl).u
        out.flat[i] = cache[a]
    return out


def _retarded_times(params, n_modes, profile, times, z, ctrl):
    tau = times.copy()
    for _ in range(MAX_RETARDATION_ITERATIONS):
        u = _inverse_velocity(params, n_modes, profile(tau), ctrl)
        new = times - z * u
        if np.max(np.abs(new - tau)) <= 1e-12 * max(1.0, np.max(np.abs(times))) + 1e-18:
            return new, u
        tau = new
    raise NonConvergence(
        "retarded time did not settle; the control varies too fast for the slow-variation condition"
    )


def propagate_timedep(params: PhysicalParams, n_modes: int, profile: ControlProfile, envelope: PulseEnvelope,
                      z: float, quad_steps: int = 64, ctrl: SeriesControl = DEFAULT_CONTROL,
                      carrier_detuning: float = 0.0) -> PropagationResult:
    """Propagate under a multi-mode coherent control with time-varying mean photon number.

    For each output time ``t`` the retarded time solves
    ``tau = t - z*u(|alpha(tau)|^2)``; ``u`` is then held fixed while the
    attenuation and phase are integrated over depth by the trapezoid rule
    with ``quad_steps`` panels.
    """
    _check_depth(params, z)
    if quad_steps < 8:
        raise InvalidParameter(f"quad_steps must be >= 8, got {quad_steps!r}")
    _check_adiabatic(params, envelope)

    tau, u = _retarded_times(params, n_modes, profile, envelope.times, z, ctrl)
    _check_window(envelope, tau)
    t1 = envelope.intensity_fwhm()
    if profile.duration <= t1 + np.max(np.abs(u)) * params.length:
        log.warning("control duration %.3g s does not exceed T1 + u L = %.3g s",
                    profile.duration, t1 + np.max(np.abs(u)) * params.length)

    zq = np.linspace(0.0, z, quad_steps + 1)
    when = tau[:, None] + zq[None, :] * u[:, None]
    mu = profile(when) / n_modes

    gt = complex(params.Gamma, carrier_detuning)
    g0t = complex(params.gamma0, -(carrier_detuning - params.delta2))
    gn2 = np.full(mu.size, params.g2**2 / (gt * g0t) * n_modes)
    d, terms = kernels.poisson_inverse_many(mu.ravel(), gn2, ctrl.rel_tolerance, ctrl.max_terms)
    if np.any(terms < 0):
        raise NonConvergence("coherent series did not converge inside the depth quadrature")
    eta = (d / gt).reshape(mu.shape)
    kappa = 2.0 * params.g1**2 * params.n_atoms / C_LIGHT * eta.real
    phi = -params.g1**2 * params.n_atoms / C_LIGHT * eta.imag
    rate = -0.5 * kappa + 1j * phi
    h = z / quad_steps
    exponent = h * (rate[:, 1:-1].sum(axis=1) + 0.5 * (rate[:, 0] + rate[:, -1]))
    return _result(envelope, envelope.at(tau) * np.exp(exponent))


def control_photon_count(profile: SampledProfile, length: float) -> tuple[np.ndarray, np.ndarray, float]:
    """Photon flux ``(c/L)|alpha(t)|^2`` into the interaction volume and its time integral.

    Returns ``(times, flux, n_c)``; the integral is the trapezoid rule over
    the profile samples, exact for the piecewise-linear profile.
    """
    if not isinstance(profile, SampledProfile):
        raise InvalidParameter("photon count needs a finite sampled control window")
    if not length > 0:
        raise InvalidParameter(f"length must be > 0, got {length!r}")
    flux = C_LIGHT / length * profile.alpha_sq_samples
    n_c = float(profile.dt * (flux.sum() - 0.5 * (flux[0] + flux[-1])))
    return profile.times, flux, n_c
