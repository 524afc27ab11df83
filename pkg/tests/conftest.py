import math

import pytest

from cseit.params import PhysicalParams, mhz_over_2pi

GAMMA = mhz_over_2pi(6.0)
GAMMA_HALF = 0.5 * GAMMA
G1 = mhz_over_2pi(13.02)

_ACCEPTANCE = []


def make_params(gamma0=mhz_over_2pi(1e-3), g2=0.5 * GAMMA_HALF, **kw):
    base = dict(gamma=GAMMA, gamma0=gamma0, g1=G1, g2=g2, n_atoms=1000, length=0.03, delta2=0.0)
    base.update(kw)
    return PhysicalParams(**base)


@pytest.fixture
def ref_params():
    """Reference hollow-fibre parameter set, gamma0/2pi = 1e-3 MHz."""
    return make_params()


@pytest.fixture
def ref_params_rad_per_s():
    """Same set with gamma0 = 1e-3 rad/us."""
    return make_params(gamma0=1e3)


@pytest.fixture
def fig2b_params():
    return make_params(g2=0.06 * GAMMA)


@pytest.fixture
def criterion(request):
    def check(ok, detail):
        _ACCEPTANCE.append((request.node.name, bool(ok), detail))
        assert ok, detail

    return check


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


def rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a)


__all__ = ["GAMMA", "GAMMA_HALF", "make_params", "rel", "math"]
