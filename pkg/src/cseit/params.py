"""Physical parameters, complex detunings and control-field states.

All rates are angular frequencies in rad/s. Lab values quoted as
``x/2pi = f MHz`` convert with :func:`mhz_over_2pi`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import InvalidParameter

C_LIGHT = 299_792_458.0  # m/s
TWO_PI = 2.0 * math.pi


def mhz_over_2pi(value: float) -> float:
    """Convert a linear frequency in MHz (the ``x/2pi`` form) to rad/s."""
    return TWO_PI * 1e6 * value


@dataclass(frozen=True)
class PhysicalParams:
    """Atomic and field constants of the Lambda medium.

    Parameters
    ----------
    gamma : float
        Excited-state decay rate, rad/s. The coherence decay is ``Gamma = gamma/2``.
    gamma0 : float
        Ground-state coherence decay rate, rad/s. Must be strictly positive:
        the vacuum term of the group index divides by it.
    g1, g2 : float
        Probe and control single-photon couplings, rad/s.
    n_atoms : float
        Number of atoms in the interaction region.
    length : float
        Interaction length, m.
    delta2 : float
        Control one-photon detuning, rad/s.
    """

    gamma: float
    gamma0: float
    g1: float
    g2: float
    n_atoms: float
    length: float
    delta2: float = 0.0

    def __post_init__(self):
        checks = {
            "gamma": self.gamma > 0,
            "gamma0": self.gamma0 > 0,
            "g1": self.g1 > 0,
            "g2": self.g2 > 0,
            "n_atoms": self.n_atoms >= 1,
            "length": self.length > 0,
            "delta2": math.isfinite(self.delta2),
        }
        for name, ok in checks.items():
            value = getattr(self, name)
            if not ok or not math.isfinite(value):
                raise InvalidParameter(f"invalid {name}={value!r}")

    @property
    def Gamma(self) -> float:
        """Optical coherence decay rate gamma/2."""
        return 0.5 * self.gamma

    @property
    def absorption_unit(self) -> float:
        """2 g1^2 N / (c Gamma), the resonant two-level absorption coefficient (1/m)."""
        return 2.0 * self.g1**2 * self.n_atoms / (C_LIGHT * self.Gamma)

    @property
    def dispersion_unit(self) -> float:
        """g1^2 N / (c Gamma), 1/m."""
        return self.g1**2 * self.n_atoms / (C_LIGHT * self.Gamma)

    @property
    def group_index_unit(self) -> float:
        """g1^2 N / Gamma^2, the magnitude of the vacuum-control group index."""
        return self.g1**2 * self.n_atoms / self.Gamma**2


@dataclass(frozen=True)
class ComplexDetunings:
    gamma_tilde: complex
    gamma0_tilde: complex
    g_factor: complex


def make_detunings(params: PhysicalParams, delta1: float) -> ComplexDetunings:
    """Complex rates at probe detuning ``delta1`` (rad/s).

    ``Gamma~ = Gamma + i delta1`` and ``gamma0~ = gamma0 - i (delta1 - delta2)``;
    ``G = g2^2 / (Gamma~ gamma0~)``.
    """
    gt = complex(params.Gamma, delta1)
    g0t = complex(params.gamma0, -(delta1 - params.delta2))
    return ComplexDetunings(gt, g0t, params.g2**2 / (gt * g0t))


@dataclass(frozen=True)
class MultiModeCoherent:
    """Product of coherent states over ``n_modes`` modes, ``alpha_sq`` photons in total."""

    alpha_sq: float
    n_modes: int

    def __post_init__(self):
        if not (self.alpha_sq >= 0 and math.isfinite(self.alpha_sq)):
            raise InvalidParameter(f"alpha_sq must be >= 0, got {self.alpha_sq!r}")
        _check_modes(self.n_modes)

    @property
    def photons_per_mode(self) -> float:
        return self.alpha_sq / self.n_modes


@dataclass(frozen=True)
class CollectiveFock:
    """Intensity eigenstate with eigenvalue ``n_modes * k``."""

    k: int
    n_modes: int = 1

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise InvalidParameter(f"k must be a non-negative integer, got {self.k!r}")
        _check_modes(self.n_modes)


@dataclass(frozen=True)
class ClassicalIntensity:
    """Classical control of squared Rabi frequency ``omega_c_sq`` ((rad/s)^2)."""

    omega_c_sq: float

    def __post_init__(self):
        if not (self.omega_c_sq >= 0 and math.isfinite(self.omega_c_sq)):
            raise InvalidParameter(f"omega_c_sq must be >= 0, got {self.omega_c_sq!r}")


@dataclass(frozen=True)
class GenericDistribution:
    """Photon-number distribution ``{k: p_k}`` with intensity eigenvalues ``n_modes * k``.

    This applies the coherent-state eigenvalue structure to an arbitrary
    distribution. It is a model, not a derivation, for non-coherent states.
    """

    probabilities: tuple
    n_modes: int = 1

    def __post_init__(self):
        pairs = tuple((int(k), float(p)) for k, p in self.probabilities)
        object.__setattr__(self, "probabilities", pairs)
        if not pairs:
            raise InvalidParameter("empty distribution")
        for k, p in pairs:
            if k < 0 or not (p >= 0):
                raise InvalidParameter(f"bad entry (k={k}, p={p})")
        total = math.fsum(p for _, p in pairs)
        if abs(total - 1.0) > 1e-12:
            raise InvalidParameter(f"probabilities sum to {total!r}, not 1")
        _check_modes(self.n_modes)

    @classmethod
    def truncated_poisson(cls, mu: float, k_max: int, n_modes: int = 1):
        """Poisson(mu) on 0..k_max, renormalised to unit mass."""
        logw = [-mu + k * math.log(mu) - math.lgamma(k + 1) if mu > 0 else (0.0 if k == 0 else -math.inf)
                for k in range(k_max + 1)]
        w = [math.exp(x) for x in logw]
        total = math.fsum(w)
        return cls(tuple((k, x / total) for k, x in enumerate(w)), n_modes)


ControlState = Union[MultiModeCoherent, CollectiveFock, ClassicalIntensity, GenericDistribution]


def _check_modes(n_modes):
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidParameter(f"n_modes must be an integer >= 1, got {n_modes!r}")


def mean_intensity(state: ControlState, params: PhysicalParams) -> float:
    """Mean dimensionless photon number <I2> of the control state."""
    if isinstance(state, MultiModeCoherent):
        return state.alpha_sq
    if isinstance(state, CollectiveFock):
        return state.n_modes * state.k
    if isinstance(state, GenericDistribution):
        return state.n_modes * math.fsum(k * p for k, p in state.probabilities)
    if isinstance(state, ClassicalIntensity):
        return state.omega_c_sq / params.g2**2
    raise TypeError(f"not a control state: {state!r}")


def equivalent_classical_intensity(state: ControlState, params: PhysicalParams) -> float:
    """Squared Rabi frequency of the classical field with the same mean intensity."""
    if isinstance(state, ClassicalIntensity):
        return state.omega_c_sq
    return params.g2**2 * mean_intensity(state, params)
