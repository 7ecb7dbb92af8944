import cmath
import math

import numpy as np
import pytest
from scipy import integrate

from conftest import coefficients
from stokes2 import dispersion as disp
from stokes2 import riemann
from stokes2.errors import NonNegativeArgument, SpecularLimit
from stokes2.params import ProblemParams
from stokes2.solution import (
    compute_coefficients,
    distribution,
    distribution_at_wall,
    velocity_profile,
    wall_factor,
    wall_factor_closed_form,
    wall_velocity,
)
from stokes2.verify import bc_residual, moment_residual, route_residual

SQRT_PI = math.sqrt(math.pi)
CASES = [(0.1, 1.0), (0.1, 0.5), (1.0, 1.0), (1.0, 0.5), (0.5, 0.75), (3.0, 0.25)]


def test_diffuse_limit():
    ec = coefficients(0.3, 1.0, U0=2.0)
    assert ec.d == 0 and ec.Qkappa == 0 and ec.S == 2.0


def test_S_identity():
    ec = coefficients(0.1, 0.5)
    assert abs(ec.S * (1 + ec.Qkappa) - 1.0) < 1e-14
    assert abs(ec.S - (0.5 + ec.d)) < 1e-14


def test_discrete_coefficient():
    ec = coefficients(0.1)
    sd = ec.sd
    assert abs(ec.a0 * sd.eta0 * riemann.X_of_z(sd.eta0, sd) - 2 * SQRT_PI) < 1e-12


def test_specular_limit():
    p = ProblemParams(0.2, 1e-7)
    with pytest.raises(SpecularLimit):
        compute_coefficients(riemann.spectral_data(p), p)


@pytest.mark.parametrize("omega1,q", CASES)
def test_boundary_condition_reproduced(omega1, q):
    assert bc_residual(coefficients(omega1, q)) < 1e-9


@pytest.mark.parametrize("omega1,q", CASES)
def test_moment_condition(omega1, q):
    assert moment_residual(coefficients(omega1, q)) < 1e-9


@pytest.mark.parametrize("omega1,q", CASES)
def test_routes_agree(omega1, q):
    assert route_residual(coefficients(omega1, q)) < 1e-9


def test_wall_factor_kappa0_value():
    # diffuse wall at omega1 = 1: (1 - i)(sqrt(1+i) - 1)/sqrt(1+i)
    r = cmath.sqrt(1 + 1j)
    expect = (1 - 1j) * (r - 1) / r
    amp, phase = wall_velocity(coefficients(1.0))
    assert amp == pytest.approx(abs(expect), rel=1e-12)
    assert phase == pytest.approx(cmath.phase(expect), abs=1e-12)


@pytest.mark.parametrize("omega1", [0.05, 0.3, 2.0])
def test_wall_factor_closed_forms(omega1):
    ec = coefficients(omega1, 0.6)
    assert abs(wall_factor(ec) - wall_factor_closed_form(ec)) < 1e-12


def test_profile_starts_at_wall_factor_and_decays():
    ec = coefficients(0.2, 0.8)
    x = np.linspace(0, 60, 121)
    u = velocity_profile(x, ec).values
    assert abs(u[0] - wall_factor(ec)) < 1e-12
    assert abs(u[-1]) < 1e-4
    with pytest.raises(NonNegativeArgument):
        velocity_profile([-1.0], ec)


def test_linear_in_wall_speed():
    e1, e3 = coefficients(0.4, 0.5, 1.0), coefficients(0.4, 0.5, 3.0)
    x = [0.0, 1.0, 5.0]
    assert np.allclose(velocity_profile(x, e3).values, 3 * velocity_profile(x, e1).values, atol=1e-14)
    assert abs(distribution_at_wall(-0.7, e3) - 3 * distribution_at_wall(-0.7, e1)) < 1e-13


def test_distribution_argument_checks():
    ec = coefficients(1.0)
    with pytest.raises(NonNegativeArgument):
        distribution_at_wall(0.5, ec)
    with pytest.raises(NonNegativeArgument):
        distribution(0.0, 0.0, ec)


def test_distribution_decays_into_gas():
    ec = coefficients(1.0)
    h = distribution(30.0, np.array([-1.0, 0.5, 2.0]), ec).values
    assert np.max(np.abs(h)) < 1e-3


def test_continuous_coefficient_is_regular():
    ec = coefficients(0.1, 0.5)
    eta = np.geomspace(1e-3, 6, 50)
    a = ec.a(eta)
    assert np.all(np.isfinite(a))
    assert abs(a[-1]) < 1e-10


def _pv_moment(eta):
    # PV Int exp(-mu^2) mu / (mu - eta) dmu
    f = lambda m: m * math.exp(-m * m)  # noqa: E731
    return integrate.quad(f, -12, 12, weight="cauchy", wvar=eta, epsabs=1e-13)[0]


@pytest.mark.parametrize("eta", [0.2, 0.9, 2.5])
def test_eigenfunction_moment_continuous(eta):
    w = 0.4
    lam = -1j * w + disp.lambda0_pv(eta)[0]
    moment = -eta * _pv_moment(eta) / SQRT_PI + eta * lam
    assert abs(moment + 1j * w * eta) < 1e-10


def test_eigenfunction_moment_discrete():
    p = ProblemParams(0.1)
    eta0 = riemann.find_eta0(p)
    f = lambda m: np.exp(-m * m) * m * eta0 / (SQRT_PI * (eta0 - m))  # noqa: E731
    re = integrate.quad(lambda m: f(m).real, -12, 12, limit=200)[0]
    im = integrate.quad(lambda m: f(m).imag, -12, 12, limit=200)[0]
    assert abs(complex(re, im) + 1j * 0.1 * eta0) < 1e-9
