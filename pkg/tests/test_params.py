import math

import pytest
from hypothesis import given, strategies as st

from cseit.errors import InvalidParameter
from cseit.params import (
    ClassicalIntensity,
    CollectiveFock,
    GenericDistribution,
    MultiModeCoherent,
    PhysicalParams,
    equivalent_classical_intensity,
    make_detunings,
    mean_intensity,
    mhz_over_2pi,
)
from conftest import GAMMA_HALF, make_params


def test_unit_conversion():
    assert mhz_over_2pi(6.0) == pytest.approx(2 * math.pi * 6e6)
    p = make_params()
    assert p.Gamma == pytest.approx(2 * math.pi * 3e6)


@pytest.mark.parametrize("field,value", [
    ("gamma", 0.0), ("gamma", -1.0), ("gamma0", 0.0), ("gamma0", -1e3),
    ("g1", 0.0), ("g2", -1.0), ("n_atoms", 0.5), ("length", 0.0), ("delta2", math.nan),
])
def test_rejects_bad_parameters(field, value):
    with pytest.raises(InvalidParameter, match=field):
        make_params(**{field: value})


def test_params_are_immutable(ref_params):
    with pytest.raises(AttributeError):
        ref_params.gamma = 1.0


def test_detunings_at_resonance(ref_params):
    d = make_detunings(ref_params, 0.0)
    assert d.gamma_tilde == ref_params.Gamma
    assert d.gamma0_tilde == ref_params.gamma0
    assert d.g_factor.imag == 0.0
    assert d.g_factor.real == pytest.approx(ref_params.g2**2 / (ref_params.Gamma * ref_params.gamma0))
    assert d.g_factor.real == pytest.approx(750.0)


def test_detunings_one_linewidth(ref_params):
    G = ref_params.Gamma
    d = make_detunings(ref_params, G)
    assert d.gamma_tilde == complex(G, G)
    assert d.gamma0_tilde == complex(ref_params.gamma0, -G)


def test_two_photon_resonance():
    p = make_params(delta2=1.7e7)
    d = make_detunings(p, 1.7e7)
    assert d.gamma0_tilde == p.gamma0


@given(st.floats(-1e10, 1e10), st.floats(-1e9, 1e9))
def test_real_parts_fixed(delta1, delta2):
    p = make_params(delta2=delta2)
    d = make_detunings(p, delta1)
    assert d.gamma_tilde.real == p.Gamma
    assert d.gamma0_tilde.real == p.gamma0
    assert math.isfinite(abs(d.g_factor))


def test_equivalent_classical_intensity_examples(ref_params):
    G = ref_params.Gamma
    assert equivalent_classical_intensity(MultiModeCoherent(3, 7), ref_params) == pytest.approx(0.75 * G**2)
    assert equivalent_classical_intensity(CollectiveFock(0, 4), ref_params) == 0.0
    dist = GenericDistribution(((0, 0.5), (2, 0.5)), n_modes=2)
    assert equivalent_classical_intensity(dist, ref_params) == pytest.approx(ref_params.g2**2 * 2)
    assert equivalent_classical_intensity(ClassicalIntensity(1.5e14), ref_params) == 1.5e14


@given(st.floats(0, 1e3), st.integers(1, 1000), st.integers(1, 1000))
def test_equivalent_intensity_ignores_mode_number(alpha_sq, n1, n2):
    p = make_params()
    a = equivalent_classical_intensity(MultiModeCoherent(alpha_sq, n1), p)
    b = equivalent_classical_intensity(MultiModeCoherent(alpha_sq, n2), p)
    assert a == b


def test_mean_intensity_of_classical_state(ref_params):
    s = ClassicalIntensity(ref_params.g2**2 * 5)
    assert mean_intensity(s, ref_params) == pytest.approx(5)


@pytest.mark.parametrize("make", [
    lambda: MultiModeCoherent(-1.0, 1),
    lambda: MultiModeCoherent(1.0, 0),
    lambda: MultiModeCoherent(1.0, 2.5),
    lambda: CollectiveFock(-1, 1),
    lambda: ClassicalIntensity(-2.0),
    lambda: GenericDistribution(((0, 0.5), (1, 0.4))),
    lambda: GenericDistribution(((0, 1.2), (1, -0.2))),
    lambda: GenericDistribution(()),
])
def test_invalid_states(make):
    with pytest.raises(InvalidParameter):
        make()


def test_truncated_poisson_is_normalised():
    d = GenericDistribution.truncated_poisson(3.0, 60, n_modes=4)
    assert math.fsum(p for _, p in d.probabilities) == pytest.approx(1.0, abs=1e-12)
    assert d.probabilities[3][1] == pytest.approx(math.exp(-3) * 27 / 6, rel=1e-12)
