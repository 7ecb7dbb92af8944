import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stokes2 import dispersion as disp
from stokes2 import riemann
from stokes2.errors import OnCut, WrongIndex
from stokes2.params import ProblemParams, QuadratureConfig

FREQS = [0.05, 0.1, 0.5, 1.0, 3.0]


@pytest.fixture(scope="module", params=FREQS)
def sd(request):
    return riemann.spectral_data(ProblemParams(request.param))


def test_identities(sd):
    res = riemann.identity_residuals(sd)
    for name in ("boundary_relation", "representation", "factorization", "X0_closed_form"):
        assert res[name] < 1e-6, name
    if sd.kappa == 1:
        assert res["eta0_residual"] < 1e-8


def test_zeta_anchor_and_decay(sd):
    p = sd.params
    assert riemann.zeta(0.0, sd.kappa, p) == pytest.approx(-math.pi * sd.kappa)
    assert abs(riemann.zeta(6.5, sd.kappa, p)) < 1e-15


def test_zeta_grid_matches_pointwise(sd):
    g = sd.zeta_grid
    idx = [0, len(g.nodes) // 3, len(g.nodes) - 1]
    direct = riemann.zeta(g.nodes[idx], sd.kappa, sd.params)
    assert np.allclose(direct, g.values[idx], atol=1e-14)


def test_zeta_prime_by_differences():
    p = ProblemParams(0.3)
    t, h = 1.1, 1e-5
    fd = (riemann.zeta(t + h, 1, p) - riemann.zeta(t - h, 1, p)) / (2 * h)
    assert abs(riemann.zeta_prime(t, p)[0] - fd) < 1e-8


def test_X_tends_to_power_at_infinity(sd):
    # X(z) ~ z^{-kappa} as z -> infinity away from the cut
    z = 400j
    assert abs(riemann.X_of_z(z, sd) * z**sd.kappa - 1) < 1e-2


@settings(max_examples=25, deadline=None)
@given(st.floats(-5, 5), st.floats(0.05, 5))
def test_factorisation_off_axis(re, im):
    sd = riemann.spectral_data(ProblemParams(0.1))
    z = complex(re, im)
    lam = disp.lambda_(z, sd.params)
    rhs = 1j * 0.1 * (z * z - sd.eta0**2) * riemann.X_of_z(z, sd) * riemann.X_of_z(-z, sd)
    assert abs(lam - rhs) <= 1e-8 * max(1.0, abs(lam))


def test_eta0_static_limit():
    vals = []
    for w in (1e-2, 1e-3, 1e-4):
        eta0 = riemann.find_eta0(ProblemParams(w))
        vals.append(abs(eta0 * 2 * math.sqrt(w) / (1 + 1j) - 1))
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-2


def test_eta0_root_and_half_plane():
    for w in (0.05, 0.1, 0.5):
        p = ProblemParams(w)
        eta0 = riemann.find_eta0(p)
        assert abs(disp.lambda_(eta0, p)) < 1e-8
        assert ((1 - 1j * w) / eta0).real > 0


def test_find_eta0_wrong_index():
    with pytest.raises(WrongIndex):
        riemann.find_eta0(ProblemParams(1.0))


def test_on_cut_rejected():
    with pytest.raises(OnCut):
        riemann.V_of_z(1.5 + 0j, 1, ProblemParams(0.1))


def test_slip_constant():
    assert riemann.slip_constant() == pytest.approx(1.0162, abs=2e-4)
    V1 = riemann.V1_constant(1, ProblemParams(1e-3))
    assert V1.real == pytest.approx(riemann.slip_constant(), abs=2e-3)


def test_spectral_data_independent_of_q():
    a = riemann.spectral_data(ProblemParams(0.4, 1.0))
    b = riemann.spectral_data(ProblemParams(0.4, 0.3))
    assert a.V1 == b.V1 and a.eta0 == b.eta0
    assert b.params.q == 0.3


def test_V1_converged_under_refinement():
    fine = QuadratureConfig(nodes=24, panel=0.125, tol=1e-12)
    for w in (0.1, 2.0):
        p = ProblemParams(w)
        a = riemann.spectral_data(p).V1
        b = riemann.spectral_data(p, fine).V1
        assert abs(a - b) < 1e-10


def test_X_zero_closed_form_values():
    sd = riemann.spectral_data(ProblemParams(1.0))
    assert sd.X_at_zero**2 == pytest.approx(1 + 1j, abs=1e-10)
    assert cmath.phase(sd.X_at_zero) > 0
