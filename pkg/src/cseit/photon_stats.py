"""Expectation of the resolvent (1 + G I2)^-1 over control-field photon statistics.

For a multi-mode coherent state with ``mu`` photons per mode the intensity
operator acts on Poisson-distributed collective Fock components with
eigenvalues ``N2*k``, giving

    D = e^-mu sum_k mu^k/k! / (1 + G N2 k)
      = e^-mu 1F1(1/(G N2); 1 + 1/(G N2); mu).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidParameter, NonConvergence
from .params import (
    ClassicalIntensity,
    CollectiveFock,
    ComplexDetunings,
    ControlState,
    GenericDistribution,
    MultiModeCoherent,
)


@dataclass(frozen=True)
class SeriesControl:
    rel_tolerance: float = 1e-12
    max_terms: int = 10_000

    def __post_init__(self):
        if not (0 < self.rel_tolerance < 1):
            raise InvalidParameter(f"rel_tolerance must lie in (0, 1), got {self.rel_tolerance!r}")
        if self.max_terms < 10:
            raise InvalidParameter(f"max_terms must be >= 10, got {self.max_terms!r}")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class ComplexResponse:
    d_value: complex
    eta: complex
    terms_used: int


def coherent_D(mu: float, gn2: complex, ctrl: SeriesControl = DEFAULT_CONTROL) -> tuple[complex, int]:
    """Poisson average of 1/(1 + gn2*k) with mean ``mu``.

    Returns ``(D, terms_used)``.
    """
    if not (mu >= 0 and math.isfinite(mu)):
        raise InvalidParameter(f"mu must be finite and >= 0, got {mu!r}")
    gn2 = complex(gn2)
    if not (math.isfinite(gn2.real) and math.isfinite(gn2.imag)):
        raise InvalidParameter(f"gn2 must be finite, got {gn2!r}")
    value, terms = kernels.poisson_inverse_sum(float(mu), gn2, ctrl.rel_tolerance, ctrl.max_terms)
    if terms < 0:
        raise NonConvergence(
            f"coherent series did not converge in {ctrl.max_terms} terms (mu={mu}, gn2={gn2})"
        )
    return value, terms


def coherent_D_many(mu, gn2, ctrl: SeriesControl = DEFAULT_CONTROL) -> np.ndarray:
    """Vectorised :func:`coherent_D` over 1-D arrays (broadcast together)."""
    mu, gn2 = np.broadcast_arrays(np.asarray(mu, dtype=float), np.asarray(gn2, dtype=complex))
    shape = mu.shape
    mu = mu.ravel()
    gn2 = gn2.ravel()
    if np.any(~(mu >= 0)) or not np.all(np.isfinite(mu)):
        raise InvalidParameter("mu must be finite and >= 0")
    values, terms = kernels.poisson_inverse_many(mu, gn2, ctrl.rel_tolerance, ctrl.max_terms)
    bad = np.flatnonzero(terms < 0)
    if bad.size:
        i = bad[0]
        raise NonConvergence(
            f"coherent series did not converge in {ctrl.max_terms} terms (mu={mu[i]}, gn2={gn2[i]})"
        )
    return values.reshape(shape)


def kummer_1F1(a: complex, b: complex, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Confluent hypergeometric 1F1(a; b; x) for real ``x >= 0`` by direct series."""
    b = complex(b)
    if not (x >= 0 and math.isfinite(x)):
        raise InvalidParameter(f"x must be finite and >= 0, got {x!r}")
    nearest = round(b.real)
    if nearest <= 0 and abs(b - nearest) <= ctrl.rel_tolerance * max(1.0, abs(b)):
        raise InvalidParameter(f"b={b} is a non-positive integer")
    value, terms = kernels.hyp1f1_series(complex(a), b, float(x), ctrl.rel_tolerance, ctrl.max_terms)
    if terms < 0:
        raise NonConvergence(f"1F1 series did not converge in {ctrl.max_terms} terms (a={a}, b={b}, x={x})")
    return value


def expectation_D(
    state: ControlState, dets: ComplexDetunings, ctrl: SeriesControl = DEFAULT_CONTROL
) -> ComplexResponse:
    """<(1 + G I2)^-1> for ``state``; ``eta = D / Gamma~``.

    A classical control replaces ``g2^2 I2`` by ``Omega_c^2``, so
    ``D = Gt g0t / (Gt g0t + Omega_c^2)`` with no series.
    """
    G = dets.g_factor
    if isinstance(state, MultiModeCoherent):
        d, terms = coherent_D(state.photons_per_mode, G * state.n_modes, ctrl)
    elif isinstance(state, CollectiveFock):
        d, terms = 1.0 / (1.0 + G * state.n_modes * state.k), 1
    elif isinstance(state, ClassicalIntensity):
        prod = dets.gamma_tilde * dets.gamma0_tilde
        d, terms = prod / (prod + state.omega_c_sq), 1
    elif isinstance(state, GenericDistribution):
        gn2 = G * state.n_modes
        d = sum(p / (1.0 + gn2 * k) for k, p in state.probabilities)
        terms = len(state.probabilities)
    else:
        raise TypeError(f"not a control state: {state!r}")
    d = complex(d)
    return ComplexResponse(d, d / dets.gamma_tilde, terms)
