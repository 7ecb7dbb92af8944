import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from stokes2 import dispersion as disp
from stokes2.errors import CriticalFrequency, NonPositiveArgument, OnRealAxis
from stokes2.params import ProblemParams, QuadratureConfig


def lambda0_ref(z):
    # 1 + z Z(z) with the plasma dispersion function Z = i sqrt(pi) w(z), Im z > 0
    if z.imag < 0:
        z = -z
    return 1 + 1j * math.sqrt(math.pi) * z * special.wofz(z)


@pytest.mark.parametrize("z", [0.3 + 0.2j, 2 - 1j, -1 + 0.01j, 5j, 8 + 3j, -0.5 - 4j, 1e-3 + 1e-3j])
def test_lambda0_matches_faddeeva(z):
    assert abs(disp.lambda0(z) - lambda0_ref(z)) < 1e-12


@pytest.mark.parametrize("mu", [1e-4, 0.3, 0.92, 2.0, 4.5, 6.5])
def test_pv_matches_dawson(mu):
    assert disp.lambda0_pv(mu)[0] == pytest.approx(1 - 2 * mu * special.dawsn(mu), abs=1e-13)


def test_pv_against_cauchy_weight():
    mu = 1.3
    f = lambda t: t * math.exp(-t * t) / math.sqrt(math.pi)  # noqa: E731
    val, _ = integrate.quad(f, -12, 12, weight="cauchy", wvar=mu)
    assert disp.lambda0_pv(mu)[0] == pytest.approx(val, abs=1e-10)


complex_off_axis = st.builds(
    complex,
    st.floats(-8, 8, allow_nan=False),
    st.one_of(st.floats(0.01, 6), st.floats(-6, -0.01)),
)


@settings(max_examples=40, deadline=None)
@given(complex_off_axis, st.floats(0.01, 5))
def test_lambda_is_even(z, w):
    p = ProblemParams(w)
    assert abs(disp.lambda_(-z, p) - disp.lambda_(z, p)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 6.0), st.floats(0.05, 5))
def test_plemelj_jump_and_mean(mu, w):
    p = ProblemParams(w)
    lp, lm = disp.boundary_values(mu, p)
    eps = 1e-7
    above = disp.lambda_(mu + 1j * eps, p)
    assert abs((lp - lm) / 2j - disp.s_function(mu)) < 1e-14
    assert abs((lp + lm) / 2 - (-1j * w + disp.lambda0_pv(mu)[0])) < 1e-14
    assert abs(above - lp) < 1e-5


@pytest.mark.parametrize("arg", [math.pi / 4, math.pi / 2, 3 * math.pi / 4])
def test_laurent_tail_sixth_order(arg):
    p = ProblemParams(0.5)
    consts = []
    for r in (10.0, 14.0, 20.0):
        z = r * cmath.exp(1j * arg)
        consts.append(abs(disp.lambda_(z, p) - disp.laurent_tail(z, 0.5)) * r**6)
    # the constant of the next term, 15/8
    assert max(consts) < 2.5
    assert max(consts) / min(consts) < 1.3


def test_lambda0_on_real_axis_rejected():
    with pytest.raises(OnRealAxis):
        disp.lambda0(1.5)
    assert disp.lambda0(0.0) == pytest.approx(1.0)


def test_boundary_values_need_positive_mu():
    with pytest.raises(NonPositiveArgument):
        disp.boundary_values(0.0, ProblemParams(1.0))


def test_G_at_origin_is_one():
    assert abs(disp.coefficient_G(1e-9, ProblemParams(0.4)) - 1) < 1e-8


def test_critical_frequencies():
    assert disp.critical_frequency() == pytest.approx(0.73276, abs=1e-4)
    mu_c = 0.9241388730
    assert disp.transition_frequency() == pytest.approx(math.sqrt(math.pi) * mu_c * math.exp(-mu_c**2), abs=1e-8)


@pytest.mark.parametrize("w", [0.6972, 0.7330])
def test_guard_band(w):
    with pytest.raises(CriticalFrequency):
        disp.index_kappa(ProblemParams(w))


@pytest.mark.parametrize("w,kappa", [(0.05, 1), (0.1, 1), (0.3, 1), (0.69, 1), (0.7, 0), (0.8, 0), (1, 0), (3, 0), (10, 0)])
def test_index(w, kappa):
    assert disp.index_kappa(ProblemParams(w)) == kappa


def test_index_stable_under_refinement():
    fine = QuadratureConfig(nodes=24, panel=0.125)
    for w in (0.2, 0.69, 0.71, 2.0):
        assert disp.index_kappa(ProblemParams(w), fine) == disp.index_kappa(ProblemParams(w))
