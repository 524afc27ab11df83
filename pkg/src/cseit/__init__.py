"""Electromagnetically induced transparency driven by a quantum control field.

A weak probe in cold Lambda atoms sees a control field prepared in a
multi-mode coherent state (or a Fock state, a classical field, or an
arbitrary photon-number distribution). The package evaluates the probe
absorption, dispersion and group index, and propagates probe wave packets.
"""
from .errors import InvalidParameter, NoSignChange, NonConvergence, WindowTooShort
from .kernels import BACKEND
from .params import (
    C_LIGHT,
    ClassicalIntensity,
    CollectiveFock,
    ComplexDetunings,
    GenericDistribution,
    MultiModeCoherent,
    PhysicalParams,
    equivalent_classical_intensity,
    make_detunings,
    mean_intensity,
    mhz_over_2pi,
)
from .photon_stats import ComplexResponse, SeriesControl, coherent_D, expectation_D, kummer_1F1
from .pulse import (
    ConstantProfile,
    PropagationResult,
    PulseEnvelope,
    SampledProfile,
    control_photon_count,
    make_gaussian_envelope,
    propagate_constant,
    propagate_timedep,
)
from .response import (
    GroupVelocityResult,
    SpectrumResult,
    absorption_at,
    classical_absorption_at,
    dispersion_at,
    find_crossover,
    group_index,
    spectrum,
    transparency_peak_scan,
)

__version__ = "0.1.0"
