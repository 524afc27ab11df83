"""Acceptance gate: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
every criterion as PASS or FAIL with the measured number. Thresholds are the
stated ones and are never loosened to make a line green.
"""
import cmath
import math

import mpmath
import numpy as np
import pytest

from cseit.cli import execute
from cseit.config import bundled_configs, load
from cseit.params import (
    ClassicalIntensity,
    CollectiveFock,
    GenericDistribution,
    MultiModeCoherent,
    equivalent_classical_intensity,
)
from cseit.photon_stats import SeriesControl, coherent_D, kummer_1F1
from cseit.pulse import (
    ConstantProfile,
    make_gaussian_envelope,
    propagate_constant,
    propagate_timedep,
)
from cseit.response import (
    absorption_at,
    find_crossover,
    group_index,
    group_index_scan,
    spectrum,
    transparency_peak_scan,
)

from conftest import rel

# brute-force mpmath series at 50 digits, frozen before the kernels were written
ORACLE_KAPPA0 = {
    1: 0.050334819161109478301,
    3: 0.36809483749580296232,
    6: 0.60660749135551063313,
    10: 0.74085022867486841083,
}
ORACLE_PEAK_RATIO_10 = 0.27288540904091124623


def max_gap_to_classical(params, state, half_width=3.0, points=6001):
    grid = np.linspace(-half_width, half_width, points) * params.Gamma
    omega_sq = equivalent_classical_intensity(state, params)
    quantum = spectrum(params, state, grid).kappa_norm
    classical = spectrum(params, ClassicalIntensity(omega_sq), grid).kappa_norm
    gap = np.abs(quantum - classical)
    i = int(np.argmax(gap))
    return gap[i], grid[i] / params.Gamma, abs(quantum[points // 2] - classical[points // 2])


def test_c01_photon_count(criterion):
    n_c = execute(load(bundled_configs()["photon_count_sec3"])).scalars["n_c"]
    criterion(rel(n_c, 3e4) < 0.01, f"n_c = {n_c:.6g}, rel. error to 3e4 = {rel(n_c, 3e4):.2e} (limit 1e-2)")


def test_c02_vacuum_lorentzian(criterion, ref_params):
    grid = np.linspace(-5, 5, 1001) * ref_params.Gamma
    got = spectrum(ref_params, CollectiveFock(0), grid).kappa_norm
    want = ref_params.Gamma**2 / (ref_params.Gamma**2 + grid**2)
    err = float(np.max(np.abs(got - want)))
    criterion(err < 1e-12, f"max |kappa_norm - Lorentzian| = {err:.2e} (limit 1e-12)")


def test_c03_mode_ordering(criterion, ref_params):
    values = {n: absorption_at(ref_params, MultiModeCoherent(3.0, n), 0.0)[1] for n in (1, 3, 6, 10)}
    seq = [values[n] for n in (1, 3, 6, 10)]
    increasing = all(a < b for a, b in zip(seq, seq[1:]))
    # the k = 0 term alone contributes exp(-mu) and every other term has a positive real part
    above_floor = all(values[n] > math.exp(-3.0 / n) for n in values)
    worst = max(rel(values[n], ORACLE_KAPPA0[n]) for n in values)
    ok = increasing and above_floor and worst < 1e-9
    criterion(ok, f"kappa_norm(0) = {', '.join(f'{v:.6f}' for v in seq)}; increasing={increasing}, "
                  f"above vacuum floor={above_floor}, max rel. error to oracle = {worst:.1e} (limit 1e-9)")


def test_c04_single_mode_matches_classical(criterion, ref_params):
    """Single-mode coherent control against the classical field of equal intensity.

    The quantum curve is a Poisson(3) mixture of Fock-state windows with
    Omega_k^2 = 0.25 k Gamma^2. On resonance the k = 0 (vacuum) component
    alone leaves kappa_norm >= exp(-3) = 0.0498 while the classical value is
    about 4e-4, so the two curves can never coincide there; off resonance the
    mixture broadens the window relative to the single classical one and the
    gap grows further. The measured maximum exceeds the threshold, and this
    line is expected to be red.
    """
    state = MultiModeCoherent(3.0, 1)
    assert equivalent_classical_intensity(state, ref_params) == pytest.approx(0.75 * ref_params.Gamma**2)
    gap, where, at_zero = max_gap_to_classical(ref_params, state)
    criterion(gap < 0.06, f"max gap = {gap:.4f} at delta1 = {where:+.3f} Gamma, resonance gap = "
                          f"{at_zero:.4f} (vacuum weight exp(-3) = {math.exp(-3):.4f}) (limit 0.06)")


def test_c05_classical_limit_spectrum(criterion, fig2b_params):
    """Ten-mode control with |alpha|^2 = 36 against the equal-intensity classical field.

    Each mode carries mu = 3.6 photons, so the vacuum weight exp(-3.6) = 0.027
    bounds kappa_norm(0) from below while the classical value is about 6e-4.
    The gap on resonance alone exceeds 0.02, so this line is expected to be red.
    """
    gap, where, at_zero = max_gap_to_classical(fig2b_params, MultiModeCoherent(36.0, 10))
    criterion(gap < 0.02, f"max gap = {gap:.4f} at delta1 = {where:+.3f} Gamma, resonance gap = "
                          f"{at_zero:.4f} (vacuum weight exp(-3.6) = {math.exp(-3.6):.4f}) (limit 0.02)")


def test_c06_peak_decreases_with_modes(criterion, ref_params):
    rows = transparency_peak_scan(ref_params, 3.0, range(1, 31))
    ratios = [r for _, _, r in rows]
    decreasing = all(a > b for a, b in zip(ratios, ratios[1:]))
    at10 = ratios[9]
    err = rel(at10, ORACLE_PEAK_RATIO_10)
    criterion(decreasing and err < 1e-9,
              f"strictly decreasing={decreasing}, T(10)/T(1) = {at10:.10f}, rel. error to oracle = {err:.1e} (limit 1e-9)")


def test_c07_group_index_crossover(criterion, ref_params, ref_params_rad_per_s):
    """Sign change of the probe group index with the number of control modes.

    The published figure places the crossover at roughly N2 = 7; the series
    evaluated here puts it near 3.85 under both readings of the gamma0 unit.
    """
    report = []
    ok = True
    for label, params in (("gamma0/2pi = 1 kHz", ref_params), ("gamma0 = 1e3 rad/s", ref_params_rad_per_s)):
        signs = [np.sign(r.n_g) for _, r in group_index_scan(params, 3.0, range(1, 31))]
        changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
        root = find_crossover(params, 3.0, (1, 30)).continuous_root
        ok &= changes == 1 and 3.0 <= root <= 10.0
        report.append(f"{label}: {changes} sign change(s), root {root:.6f}")
    criterion(ok, "; ".join(report) + " (need exactly one change, root in [3, 10])")


def test_c08_series_matches_kummer(criterion):
    ctrl = SeriesControl(rel_tolerance=1e-15)
    worst = 0.0
    for mu in (0.1, 1.0, 3.0, 10.0):
        for mag in np.logspace(-2, 4, 13):
            for phase in np.linspace(-0.75, 0.75, 7) * math.pi:
                gn2 = mag * cmath.exp(1j * phase)
                d, _ = coherent_D(mu, gn2)
                a = 1.0 / gn2
                closed = math.exp(-mu) * kummer_1F1(a, 1.0 + a, mu, ctrl)
                exact = complex(mpmath.exp(-mu) * mpmath.hyp1f1(a, 1 + a, mu))
                worst = max(worst, rel(d, closed), rel(d, exact))
    criterion(worst < 1e-10, f"max rel. difference over 364 grid points = {worst:.2e} (limit 1e-10)")


def test_c09_classical_limit_convergence(criterion):
    target = 1.0 / 11.0
    errs = {}
    for mu in (50.0, 500.0):
        d, _ = coherent_D(mu, 10.0 / mu)
        errs[mu] = abs(d - target) / target
    ok = errs[50.0] < 0.05 and errs[500.0] < 0.005
    criterion(ok, f"rel. error {errs[50.0]:.4f} at mu = 50 (limit 0.05), {errs[500.0]:.5f} at mu = 500 (limit 0.005)")


def test_c10_propagation_consistency(criterion, ref_params):
    env = make_gaussian_envelope(0.0, 1e-6, -5e-6, 1e-8, 1501)
    L = ref_params.length
    a = propagate_constant(ref_params, MultiModeCoherent(3.0, 1), env, L).transmitted_fraction
    b = propagate_timedep(ref_params, 1, ConstantProfile(3.0), env, L).transmitted_fraction
    kappa, _ = absorption_at(ref_params, CollectiveFock(0), 0.0)
    beer = propagate_constant(ref_params, CollectiveFock(0), env, 2.0 / kappa).transmitted_fraction
    ok = rel(b, a) < 1e-6 and abs(beer - math.exp(-2)) <= 1e-3
    criterion(ok, f"timedep vs constant rel. diff = {rel(b, a):.1e} (limit 1e-6); "
                  f"vacuum at kappa z = 2: {beer:.6f} vs exp(-2) = {math.exp(-2):.6f} (limit 1e-3)")


def test_c11_distribution_matches_coherent(criterion, ref_params):
    worst = 0.0
    for n2 in (1, 2, 3, 4, 6, 10, 20, 30):
        mu = 3.0 / n2
        coherent = group_index(ref_params, MultiModeCoherent(3.0, n2)).n_g
        generic = group_index(ref_params, GenericDistribution.truncated_poisson(mu, 60, n2)).n_g
        worst = max(worst, rel(generic, coherent))
    criterion(worst < 1e-9, f"max rel. difference in n_g over N2 in 1..30 = {worst:.1e} (limit 1e-9)")


def test_fig2a_classical_reference_is_exact(ref_params):
    """Sanity anchor for criterion 4: the classical curve itself is the closed form."""
    omega_sq = 0.75 * ref_params.Gamma**2
    got = absorption_at(ref_params, ClassicalIntensity(omega_sq), 0.0)[1]
    gt, g0 = ref_params.Gamma, ref_params.gamma0
    assert got == pytest.approx(gt * g0 / (gt * g0 + omega_sq), rel=1e-12)

