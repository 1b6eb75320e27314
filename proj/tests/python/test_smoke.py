import math

import numpy as np
import pytest

import halfwave


def test_version():
    assert halfwave.version() == halfwave.__version__ == "0.1.0"


def test_gaussian_two_pi():
    t = np.linspace(-8.0, 8.0, 2048)
    u = np.exp(-math.pi * t * t)
    assert halfwave.gagliardo_seminorm_sq(u, -8.0, 8.0) == pytest.approx(2 * math.pi, rel=0.01)
    assert halfwave.half_derivative_energy(u, -8.0, 8.0) == pytest.approx(1.0, rel=0.01)


def test_half_half_is_first_difference():
    rng = np.random.default_rng(3)
    u = rng.standard_normal(200)
    dt = 0.01
    hh = halfwave.gl_derivative(halfwave.gl_derivative(u, dt, 0.5), dt, 0.5)
    d1 = np.diff(u, prepend=0.0) / dt
    assert np.max(np.abs(hh - d1)) <= 1e-12 * np.max(np.abs(d1))


def test_hardy_and_errors():
    t = np.linspace(0.0, 10.0, 10001)
    value, divergent = halfwave.hardy_term(np.minimum(t, 1.0), 10.0)
    assert value == pytest.approx(0.5 + math.log(10.0), rel=1e-3)
    assert not divergent
    with pytest.raises(halfwave.DecayViolation):
        halfwave.spectral_derivative(np.ones(64), 0.0, 1.0)
    with pytest.raises(ValueError):
        halfwave.gl_derivative(np.ones(8), 0.1, 0.5, "sideways")


def test_audit():
    assert halfwave.audit_flux("p_laplacian", 3.0, samples=5000)["passed"]
    broken = halfwave.audit_flux("broken", 2.0, samples=5000)
    assert not broken["passed"]
    assert broken["monotonicity_violations"] == 5000


def test_heat_solve():
    m, n, t_max = 33, 129, 1.0
    x = np.linspace(0.0, 1.0, m)[:, None]
    t = np.linspace(0.0, t_max, n)[None, :]
    exact = np.exp(-math.pi**2 * t) * np.sin(math.pi * x)
    g = np.zeros((m, n))
    g[:, 0] = exact[:, 0]
    u, info = halfwave.solve("p_laplacian", 2.0, 0.0, 0.0, 1.0, t_max, np.zeros((m, n)), g, tol=1e-11)
    assert u.shape == (m, n)
    assert info["residual_dual_norm"] <= 1e-11
    assert np.max(np.abs(u - exact)) < 2e-2


def test_suite_rows():
    assert "fraccalc" in halfwave.suite_names()
    rows = halfwave.run_suite("fraccalc")
    assert rows and all(r["pass"] for r in rows)
