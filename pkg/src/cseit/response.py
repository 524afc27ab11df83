"""Linear probe response: absorption, phase modulation, group index.

Normalised columns follow the figure conventions: absorption in units of
``2 g1^2 N/(c Gamma)`` and phase modulation in units of ``g1^2 N/(c Gamma)``,
so a bare two-level resonance has ``kappa_norm = 1``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .errors import InvalidParameter, NoSignChange, NonConvergence
from .params import (
    C_LIGHT,
    ClassicalIntensity,
    CollectiveFock,
    ControlState,
    GenericDistribution,
    MultiModeCoherent,
    PhysicalParams,
    make_detunings,
)
from .photon_stats import DEFAULT_CONTROL, SeriesControl, expectation_D

log = logging.getLogger(__name__)

DIVERGENCE_THRESHOLD = 1e-12  # |n_g| below this times g1^2 N / Gamma^2 counts as zero


@dataclass(frozen=True)
class SpectrumResult:
    delta1_grid: np.ndarray
    kappa: np.ndarray
    phi: np.ndarray
    kappa_norm: np.ndarray
    phi_norm: np.ndarray

    def __len__(self):
        return len(self.delta1_grid)


@dataclass(frozen=True)
class GroupVelocityResult:
    """Group index at two-photon resonance.

    ``n_g`` is the medium contribution to the group index, ``v_g = c/n_g``
    (signed; negative means superluminal) and ``u = (1 + n_g)/c`` is the mean
    inverse group velocity including the vacuum term. ``v_g`` is infinite
    when ``divergent`` is set.
    """

    n_g: float
    v_g: float
    u: float
    divergent: bool = False


@dataclass(frozen=True)
class CrossoverResult:
    bracket: tuple
    continuous_root: float
    n2_values: np.ndarray
    n_g_values: np.ndarray


def absorption_at(params: PhysicalParams, state: ControlState, delta1: float,
                  ctrl: SeriesControl = DEFAULT_CONTROL) -> tuple[float, float]:
    """Absorption coefficient ``(kappa [1/m], kappa_norm)`` at probe detuning ``delta1``."""
    resp = expectation_D(state, make_detunings(params, delta1), ctrl)
    kappa_norm = resp.eta.real * params.Gamma
    return kappa_norm * params.absorption_unit, kappa_norm


def dispersion_at(params: PhysicalParams, state: ControlState, delta1: float,
                  ctrl: SeriesControl = DEFAULT_CONTROL) -> tuple[float, float]:
    """Phase-modulation coefficient ``(phi [1/m], phi_norm)``; ``phi = -(g1^2 N/c) Im(eta)``."""
    resp = expectation_D(state, make_detunings(params, delta1), ctrl)
    phi_norm = -resp.eta.imag * params.Gamma
    return phi_norm * params.dispersion_unit, phi_norm


def classical_absorption_at(params: PhysicalParams, omega_c_sq: float, delta1: float) -> tuple[float, float]:
    """Absorption with a classical control of squared Rabi frequency ``omega_c_sq``."""
    if not omega_c_sq >= 0:
        raise InvalidParameter(f"omega_c_sq must be >= 0, got {omega_c_sq!r}")
    dets = make_detunings(params, delta1)
    g0t = dets.gamma0_tilde
    kappa_norm = (g0t / (dets.gamma_tilde * g0t + omega_c_sq)).real * params.Gamma
    return kappa_norm * params.absorption_unit, kappa_norm


def _d_over_grid(params, state, grid, ctrl):
    gt = params.Gamma + 1j * grid
    g0t = params.gamma0 - 1j * (grid - params.delta2)
    if isinstance(state, MultiModeCoherent):
        G = params.g2**2 / (gt * g0t)
        mu = np.full(grid.shape, state.photons_per_mode)
        d, terms = kernels.poisson_inverse_many(mu, G * state.n_modes, ctrl.rel_tolerance, ctrl.max_terms)
        bad = np.flatnonzero(terms < 0)
        if bad.size:
            raise NonConvergence(
                f"series did not converge at delta1={grid[bad[0]]!r} rad/s ({ctrl.max_terms} terms)"
            )
        return d, gt
    d = np.empty(grid.shape, dtype=complex)
    for i, x in enumerate(grid):
        try:
            d[i] = expectation_D(state, make_detunings(params, float(x)), ctrl).d_value
        except NonConvergence as exc:
            raise NonConvergence(f"at delta1={x!r} rad/s: {exc}") from exc
    return d, gt


def spectrum(params: PhysicalParams, state: ControlState, grid, ctrl: SeriesControl = DEFAULT_CONTROL) -> SpectrumResult:
    """Absorption and dispersion on a strictly increasing grid of probe detunings (rad/s)."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1:
        raise InvalidParameter("grid must be a non-empty 1-D sequence")
    if np.any(np.diff(grid) <= 0):
        raise InvalidParameter("grid must be strictly increasing")
    d, gt = _d_over_grid(params, state, grid, ctrl)
    eta = d / gt
    kappa_norm = eta.real * params.Gamma
    phi_norm = -eta.imag * params.Gamma
    return SpectrumResult(
        delta1_grid=grid,
        kappa=kappa_norm * params.absorption_unit,
        phi=phi_norm * params.dispersion_unit,
        kappa_norm=kappa_norm,
        phi_norm=phi_norm,
    )


def classical_spectrum(params: PhysicalParams, omega_c_sq: float, grid) -> SpectrumResult:
    """Closed-form classical-control spectrum; same layout as :func:`spectrum`."""
    return spectrum(params, ClassicalIntensity(omega_c_sq), grid)


def _group_sum_normalised(params, state, ctrl):
    """Group index in units of g1^2 N / Gamma^2, at delta1 = delta2 = 0."""
    G2 = params.Gamma**2
    a = params.gamma0**2 / G2
    b = params.gamma0 / params.Gamma

    def term(x):
        return (x - a) / (b + x) ** 2

    if isinstance(state, MultiModeCoherent):
        x = params.g2**2 * state.n_modes / G2
        s, terms = kernels.poisson_group_sum(state.photons_per_mode, x, a, b, ctrl.rel_tolerance, ctrl.max_terms)
        if terms < 0:
            raise NonConvergence(f"group-index series did not converge in {ctrl.max_terms} terms")
        return s
    if isinstance(state, CollectiveFock):
        return term(params.g2**2 * state.n_modes * state.k / G2)
    if isinstance(state, ClassicalIntensity):
        return term(state.omega_c_sq / G2)
    if isinstance(state, GenericDistribution):
        x = params.g2**2 * state.n_modes / G2
        return math.fsum(p * term(x * k) for k, p in state.probabilities)
    raise TypeError(f"not a control state: {state!r}")


def _velocity(params, n_g):
    u = (1.0 + n_g) / C_LIGHT
    if abs(n_g) < DIVERGENCE_THRESHOLD * params.group_index_unit:
        return GroupVelocityResult(n_g, math.inf, u, divergent=True)
    return GroupVelocityResult(n_g, C_LIGHT / n_g, u)


def group_index(params: PhysicalParams, state: ControlState, ctrl: SeriesControl = DEFAULT_CONTROL) -> GroupVelocityResult:
    """Probe group index at exact one- and two-photon resonance.

    Averages ``g1^2 N (g2^2 I2 - gamma0^2) / (Gamma gamma0 + g2^2 I2)^2`` over
    the control photon statistics.
    """
    n_g = params.group_index_unit * _group_sum_normalised(params, state, ctrl)
    return _velocity(params, n_g)


def _coherent_group_continuous(params, alpha_sq, n2, ctrl):
    # real-valued N2 relaxation used only for root bracketing
    G2 = params.Gamma**2
    s, terms = kernels.poisson_group_sum(
        alpha_sq / n2, params.g2**2 * n2 / G2, params.gamma0**2 / G2, params.gamma0 / params.Gamma,
        ctrl.rel_tolerance, ctrl.max_terms,
    )
    if terms < 0:
        raise NonConvergence(f"group-index series did not converge at N2={n2}")
    return s


def find_crossover(params: PhysicalParams, alpha_sq: float, n2_range=(1, 30),
                   ctrl: SeriesControl = DEFAULT_CONTROL, classical: bool = False) -> CrossoverResult:
    """Locate the mode number where the group index changes sign.

    Scans the integers in ``n2_range`` (inclusive) and returns the first
    adjacent pair with opposite signs, plus the root of the continuous-N2
    relaxation inside that pair. With ``classical=True`` the control is the
    classical field of equal intensity, which has no vacuum component.
    """
    lo, hi = int(n2_range[0]), int(n2_range[1])
    if lo < 1 or hi <= lo:
        raise InvalidParameter(f"bad mode-number range {n2_range!r}")
    n2 = np.arange(lo, hi + 1)
    if classical:
        state = ClassicalIntensity(params.g2**2 * alpha_sq)
        values = np.full(n2.shape, _group_sum_normalised(params, state, ctrl))
    else:
        values = np.array([_coherent_group_continuous(params, alpha_sq, float(n), ctrl) for n in n2])
    sign = np.sign(values)
    flips = np.flatnonzero(sign[:-1] * sign[1:] <= 0)
    if flips.size == 0:
        raise NoSignChange(f"group index keeps sign {int(sign[0]):+d} for N2 in [{lo}, {hi}]")
    if flips.size > 1:
        log.warning("group index changes sign %d times in [%d, %d]; using the first", flips.size, lo, hi)
    i = flips[0]
    a, b = float(n2[i]), float(n2[i + 1])
    if values[i] == 0:
        root = a
    elif values[i + 1] == 0:
        root = b
    elif classical:
        root = a
    else:
        root = brentq(lambda x: _coherent_group_continuous(params, alpha_sq, x, ctrl), a, b, xtol=1e-9)
    return CrossoverResult((int(a), int(b)), float(root), n2, values * params.group_index_unit)


def group_index_scan(params: PhysicalParams, alpha_sq: float, n2_list,
                     ctrl: SeriesControl = DEFAULT_CONTROL) -> list[tuple[int, GroupVelocityResult]]:
    return [(int(n), group_index(params, MultiModeCoherent(alpha_sq, int(n)), ctrl)) for n in n2_list]


def transparency_peak(params: PhysicalParams, state: ControlState, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Depth of the transparency dip, ``1 - kappa_norm(delta1=0)``."""
    return 1.0 - absorption_at(params, state, 0.0, ctrl)[1]


def transparency_peak_scan(params: PhysicalParams, alpha_sq: float, n2_list,
                           ctrl: SeriesControl = DEFAULT_CONTROL) -> list[tuple[int, float, float]]:
    """Rows ``(N2, T(N2), T(N2)/T(1))`` for coherent controls of fixed total intensity."""
    n2_list = [int(n) for n in n2_list]
    if not n2_list or min(n2_list) < 1:
        raise InvalidParameter("n2_list must be non-empty with entries >= 1")
    ref = transparency_peak(params, MultiModeCoherent(alpha_sq, 1), ctrl)
    rows = []
    for n in n2_list:
        t = ref if n == 1 else transparency_peak(params, MultiModeCoherent(alpha_sq, n), ctrl)
        rows.append((n, t, t / ref))
    return rows
