"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary of all
criteria is printed at the end of the session.
"""

import csv
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE, coefficients
from stokes2 import cli
from stokes2 import dispersion as disp
from stokes2 import observables as obs
from stokes2 import riemann
from stokes2.errors import CriticalFrequency
from stokes2.oracle import oracle_moments, solve_kinetic
from stokes2.params import ProblemParams
from stokes2.solution import velocity_profile
from stokes2.verify import bc_residual, moment_residual


def record(num, ok, detail):
    ACCEPTANCE.append((num, bool(ok), detail))
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_critical_frequency():
    disp.critical_frequency.cache_clear()
    disp._line_rule.cache_clear()
    t0 = time.perf_counter()
    w = disp.critical_frequency()
    dt = time.perf_counter() - t0
    record(1, abs(w - 0.733) <= 0.001 and dt < 1.0, f"omega1*={w:.6f} in {dt:.3f}s")


def test_slip_constant():
    V1 = riemann.V1_constant(1, ProblemParams(1e-3))
    c_m = 2 * V1.real / math.sqrt(math.pi)
    ok = abs(V1.real - 1.016) <= 0.002 and abs(c_m - 2 * 1.016 / math.sqrt(math.pi)) < 3e-3
    record(2, ok, f"Re V1={V1.real:.5f}, C_m={c_m:.5f}")


def test_free_molecular_coefficients():
    t0 = time.perf_counter()
    c0, c1, c2 = obs.free_molecular_coefficients()
    dt = time.perf_counter() - t0
    ok = abs(c0 - 0.282) <= 1e-3 and abs(c1 - 0.053) <= 1e-3 and abs(c2 - 0.022) <= 1e-3 and dt < 1.0
    ok &= abs(c0 - 1 / (2 * math.sqrt(math.pi))) < 1e-12
    record(3, ok, f"c0={c0:.5f} c1={c1:.5f} c2={c2:.5f} in {dt:.3f}s")


def _index_switch(lo=0.66, hi=0.78, step=5e-4):
    prev = None
    for w in np.arange(lo, hi, step):
        try:
            k = disp.index_kappa(ProblemParams(float(w)))
        except CriticalFrequency:
            continue
        if prev is not None and k != prev[1]:
            return 0.5 * (prev[0] + w)
        prev = (w, k)
    return float("nan")


def test_index_dichotomy():
    expect = {0.05: 1, 0.1: 1, 0.3: 1, 0.7: 1, 0.8: 0, 1.0: 0, 3.0: 0, 10.0: 0}
    got = {w: disp.index_kappa(ProblemParams(w)) for w in expect}
    wrong = {w: k for w, k in got.items() if k != expect[w]}
    switch = _index_switch()
    ok = not wrong and abs(switch - 0.733) <= 0.002
    record(4, ok, f"mismatched kappa {wrong or 'none'}; index switches at {switch:.4f}")


def test_factorisation_identities():
    worst, eta0_worst = 0.0, 0.0
    for w in (0.05, 0.1, 0.5, 1.0, 3.0):
        res = riemann.identity_residuals(riemann.spectral_data(ProblemParams(w)))
        eta0_worst = max(eta0_worst, res.pop("eta0_residual", 0.0))
        worst = max(worst, max(res.values()))
    record(5, worst < 1e-6 and eta0_worst < 1e-8,
           f"max identity residual {worst:.2e}, max |lambda(eta0)| {eta0_worst:.2e}")


def test_closed_form_X0():
    worst = 0.0
    for w in (0.05, 0.1, 0.5, 1.0, 3.0):
        sd = riemann.spectral_data(ProblemParams(w))
        target = 1 + 1j / w if sd.kappa == 0 else 1j * (1 - 1j * w) / (w * sd.eta0**2)
        worst = max(worst, abs(sd.X_at_zero**2 - target) / abs(target))
    record(6, worst < 1e-6, f"max relative error of X(0)^2 {worst:.2e}")


def test_oracle_equivalence():
    t0 = time.perf_counter()
    worst = {"A": 0.0, "friction": 0.0, "W": 0.0}
    for w in (0.1, 0.5, 1.0, 3.0):
        for q in (1.0, 0.75, 0.5):
            p = ProblemParams(w, q)
            U, ff, W = oracle_moments(solve_kinetic(p))
            o = obs.wall_observables(p)
            worst["A"] = max(worst["A"], abs(U - o.A_kappa) / abs(o.A_kappa))
            worst["friction"] = max(worst["friction"], abs(ff - o.friction_factor) / abs(o.friction_factor))
            worst["W"] = max(worst["W"], abs(W - o.dissipation_normalized) / abs(o.dissipation_normalized))
    dt = time.perf_counter() - t0
    ok = worst["A"] < 0.01 and worst["friction"] < 0.01 and worst["W"] < 0.015 and dt < 120
    record(7, ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f" in {dt:.1f}s")


def _hydro_deviation(w):
    ec = coefficients(w)
    x = np.linspace(0.0, 10.0 / math.sqrt(w), 400)
    u = velocity_profile(x, ec).values
    return float(np.max(np.abs(u - obs.hydrodynamic_reference(x, w))))


def test_hydrodynamic_limit():
    devs = [_hydro_deviation(w) for w in (0.1, 0.03, 0.01)]
    ok = devs[0] > devs[1] > devs[2] and devs[2] < 0.03
    record(8, ok, "max_x |U/U0 - Stokes layer| = " + ", ".join(f"{d:.4f}" for d in devs))


def test_knudsen_series():
    errs = {}
    for kn in (0.01, 0.05):
        f = obs.friction_factor(coefficients(obs.omega1_of(kn)))
        errs[kn] = abs(f - obs.knudsen_series_factor(kn, 1.0)) / abs(f)
    same = all(obs.slip_form(kn, 1.0) == obs.diffuse_slip_form(kn) for kn in (0.01, 0.05, 0.1))
    ok = errs[0.01] < 0.01 and errs[0.05] < 0.05 and same and obs.slip_lengths(0.05, 1.0).L1 == 0
    record(9, ok, f"Kn=0.01 {errs[0.01]:.2e}, Kn=0.05 {errs[0.05]:.2e}, q=1 forms identical: {same}")


def test_boundary_condition_reproduction():
    worst_bc, worst_m = 0.0, 0.0
    for w in (0.1, 1.0):
        for q in (0.5, 1.0):
            ec = coefficients(w, q)
            worst_bc = max(worst_bc, bc_residual(ec))
            worst_m = max(worst_m, moment_residual(ec))
    record(10, worst_bc < 1e-6 and worst_m < 1e-6, f"h(0,mu>0) - 2S {worst_bc:.1e}, moment {worst_m:.1e}")


def _read(path):
    lines = path.read_text().splitlines()
    rows = list(csv.reader(lines[1:]))
    return lines[0], rows[0], np.array(rows[1:], dtype=float)


def _interior_maxima(y):
    return int(np.sum((y[1:-1] > y[:-2]) & (y[1:-1] > y[2:])))


@pytest.fixture(scope="module")
def figures(tmp_path_factory):
    out = tmp_path_factory.mktemp("figures")
    assert cli.main(["figures", "-o", str(out)]) == 0
    return out


def test_figure_data(figures):
    files = sorted(p.name for p in figures.iterdir())
    notes = []
    ok = files == [f"fig{i}.csv" for i in range(1, 6)]
    for name in files:
        head, cols, data = _read(figures / name)
        ok &= head.startswith("# stokes2-kinetic v0.1.0") and len(cols) == 5
        ok &= data[0, 0] == pytest.approx(0.02) and data[-1, 0] == pytest.approx(10.0)
    _, _, f1 = _read(figures / "fig1.csv")
    a = f1[:, 2]
    fig1_ok = bool(np.all(np.diff(a) < 0) and abs(a[-1] - 0.5) < 0.01)
    notes.append(f"fig1 q=1 decreasing to {a[-1]:.4f}: {fig1_ok}")
    _, _, f5 = _read(figures / "fig5.csv")
    nonneg = bool(np.all(f5[:, 2:] >= 0))
    maxima = [_interior_maxima(f5[:, j]) for j in (2, 3, 4)]
    notes.append(f"fig5 W/W0 >= 0: {nonneg}, interior maxima per curve {maxima}")
    ok &= fig1_ok and nonneg and maxima == [1, 1, 1]
    record(11, ok, "; ".join(notes))
