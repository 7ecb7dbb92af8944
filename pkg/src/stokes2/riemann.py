"""Factorisation of G = lambda^+/lambda^- on the half-line (0, inf).

    zeta(t) = ln G(t) / (2i) - pi*kappa      (branch with ln G(0) = 0)
    V(z)    = (1/pi) Int_0^inf zeta(t) dt / (t - z)
    X(z)    = z^(-kappa) exp V(z)            X^+ = G X^- on the cut
    V1      = -(1/pi) Int_0^inf zeta(t) dt

Integrals over (0, inf) are truncated at ``cfg.cutoff``; zeta decays like
exp(-t^2) so the tail is below double precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np
from scipy import optimize

from . import dispersion as disp
from .errors import OnCut, RootPolishFailure, WrongIndex, ZeroArgument
from .params import DEFAULT_CONFIG, ProblemParams, QuadratureConfig, finite
from .quadrature import half_line_breaks, panel_rule, refine_adaptive, refine_near

REP_PROBES = (-1.0 + 0j, -2j, 1 + 1j, -0.5 - 0.5j)
FACTOR_PROBES = (-2j, 1 + 1j, -0.5 - 0.5j, 0.3 + 1.5j)


def _log_lambda_plus(lp, kappa):
    # kappa = 1: lambda^+ circles the origin without crossing the negative
    # imaginary axis, so cut the logarithm there; kappa = 0: lambda^+ never
    # crosses the negative real axis and the principal branch is continuous.
    if kappa == 1:
        return np.log(np.abs(lp)) + 1j * (np.angle(-1j * lp) + math.pi / 2)
    return np.log(lp)


def log_G(t, kappa: int, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Continuous branch of ln G on t > 0 anchored by ln G(0) = 0."""
    return 2j * (zeta(t, kappa, p, cfg) + math.pi * kappa)


def _log1p_complex(u):
    # numpy's complex log1p is only absolutely accurate for small |u|
    x, y = u.real, u.imag
    return 0.5 * np.log1p(x * (2.0 + x) + y * y) + 1j * np.arctan2(y, 1.0 + x)


def zeta(eta, kappa: int, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """zeta(eta) = ln G(eta)/(2i) - pi*kappa, complex in general.

    ``eta`` may be a scalar or an array of positive reals; ``eta = 0`` returns
    the anchor value -pi*kappa.
    """
    scalar = np.ndim(eta) == 0
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    out = np.full(eta.shape, -math.pi * kappa, dtype=complex)
    pos = eta > 0
    if pos.any():
        t = eta[pos]
        lp, lm = disp.boundary_values(t, p, cfg)
        # Im lambda^- = -(s + omega1) < 0, so its principal log is continuous
        lnG = _log_lambda_plus(lp, kappa) - np.log(lm)
        # G = 1 + 2is/lambda^-; where G is close to 1 use log1p so that zeta
        # keeps full relative precision in the Gaussian tail
        u = 2j * disp.s_function(t) / lm
        small = np.abs(u) < 0.5
        turns = np.round((lnG - _log1p_complex(u)).imag / (2 * math.pi))
        z = lnG / 2j - math.pi * kappa
        z[small] = _log1p_complex(u[small]) / 2j + math.pi * (turns[small] - kappa)
        out[pos] = z
    return complex(out[0]) if scalar else out


def zeta_prime(eta, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG):
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    lp, lm = disp.boundary_values(eta, p, cfg)
    dl0 = disp.lambda0_pv_derivative(eta, cfg)
    ds = disp.s_derivative(eta)
    return ((dl0 + 1j * ds) / lp - (dl0 - 1j * ds) / lm) / 2j


@dataclass(frozen=True)
class ZetaGrid:
    """Composite rule on [0, T] resolved for zeta, plus zeta on its nodes."""

    kappa: int
    breaks: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray

    def panel_values(self, p, cfg, breaks):
        """zeta on the rule built from ``breaks``, reusing unchanged panels."""
        n = cfg.nodes
        known = {(a, b): i for i, (a, b) in enumerate(zip(self.breaks[:-1], self.breaks[1:]))}
        nodes, weights = panel_rule(breaks, n)
        vals = np.empty(nodes.shape, dtype=complex)
        fresh = []
        for j, (a, b) in enumerate(zip(breaks[:-1], breaks[1:])):
            i = known.get((a, b))
            if i is None:
                fresh.append(j)
            else:
                vals[j * n:(j + 1) * n] = self.values[i * n:(i + 1) * n]
        if fresh:
            idx = np.concatenate([np.arange(j * n, (j + 1) * n) for j in fresh])
            vals[idx] = zeta(nodes[idx], self.kappa, p, cfg)
        return nodes, weights, vals


def zeta_grid(kappa: int, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> ZetaGrid:
    # the factorisation depends on omega1 only
    return _zeta_grid(kappa, p.omega1, cfg)


@lru_cache(maxsize=64)
def _zeta_grid(kappa: int, omega1: float, cfg: QuadratureConfig) -> ZetaGrid:
    p = ProblemParams(omega1)
    base = half_line_breaks(cfg.cutoff, cfg.panel, cfg.grade)
    f = lambda t: zeta(t, kappa, p, cfg)  # noqa: E731
    breaks = refine_adaptive(f, base, cfg.nodes, cfg.tol)
    nodes, weights = panel_rule(breaks, cfg.nodes)
    vals = f(nodes)
    for arr in (breaks, nodes, weights, vals):
        arr.flags.writeable = False
    return ZetaGrid(kappa, breaks, nodes, weights, vals)


def V_pv(eta, kappa: int, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Principal value of V on the cut, vectorised over eta > 0."""
    g = zeta_grid(kappa, p, cfg)
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    T = cfg.cutoff
    ze = zeta(eta, kappa, p, cfg)
    diff = g.nodes[None, :] - eta[:, None]
    close = np.abs(diff) < 1e-13
    with np.errstate(divide="ignore", invalid="ignore"):
        quot = (g.values[None, :] - ze[:, None]) / diff
    if close.any():
        rows = np.nonzero(close.any(axis=1))[0]
        zp = zeta_prime(eta[rows], p, cfg)
        for r, d in zip(rows, zp):
            quot[r, close[r]] = d
    log_term = np.log(np.abs(T - eta)) - np.log(eta)
    return finite((quot @ g.weights + ze * log_term) / math.pi, "V_pv")


def X_cut(eta, kappa: int, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """X on the cut in the geometric-mean convention eta^-kappa exp V_pv(eta),
    i.e. sqrt(X^+ X^-)."""
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    return eta ** (-kappa) * np.exp(V_pv(eta, kappa, p, cfg))


def V_of_z(z: complex, kappa: int, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Cauchy integral V(z) for z off the positive real half-line."""
    z = complex(z)
    if abs(z.imag) < cfg.pv_eps and z.real > -cfg.pv_eps:
        raise OnCut(f"V requested on the cut at {z}")
    g = zeta_grid(kappa, p, cfg)
    breaks = refine_near(g.breaks, z)
    nodes, weights, vals = g.panel_values(p, cfg, breaks)
    return complex(finite(np.dot(weights, vals / (nodes - z)) / math.pi, "V"))


def X_of_z(z: complex, sd: "SpectralData", p: ProblemParams | None = None,
           cfg: QuadratureConfig | None = None) -> complex:
    """Factorising function X(z) = z^-kappa exp V(z); z = 0 gives the limit."""
    p = p or sd.params
    cfg = cfg or sd.cfg
    z = complex(z)
    if z == 0:
        return sd.X_at_zero
    if abs(z.imag) < cfg.pv_eps and z.real > -cfg.pv_eps:
        if abs(z) < cfg.pv_eps and sd.kappa == 1:
            raise ZeroArgument("X(z) at z = 0 with kappa = 1 is only defined as a limit")
        raise OnCut(f"X requested on the cut at {z}")
    return z ** (-sd.kappa) * cmath.exp(V_of_z(z, sd.kappa, p, cfg))


def X_boundary(mu: float, sd: "SpectralData", eps: float = 1e-6):
    """Limits X^+(mu), X^-(mu) taken from off-axis values of X.

    Linear extrapolation in the offset: X(mu + i*eps) is analytic in eps up
    to the cut, so 2 X(mu + i eps) - X(mu + 2 i eps) leaves an O(eps^2) error.
    """
    up = 2 * X_of_z(mu + 1j * eps, sd) - X_of_z(mu + 2j * eps, sd)
    dn = 2 * X_of_z(mu - 1j * eps, sd) - X_of_z(mu - 2j * eps, sd)
    return up, dn


def X_zero(kappa: int, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """lim X(z) as z -> 0 off the cut.

    With zeta(0) = -pi*kappa, V(z) = (1/pi) Int (zeta - zeta(0))/(t - z) dt
    + kappa*[Log(-z) - ln T] + o(1), and z^-1 (-z) = -1.
    """
    g = zeta_grid(kappa, p, cfg)
    reg = np.dot(g.weights, (g.values + math.pi * kappa) / g.nodes) / math.pi
    return complex((-1.0 / cfg.cutoff) ** kappa * cmath.exp(reg))


def V1_constant(kappa: int, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """V1 = -(1/pi) Int_0^inf zeta(t) dt."""
    g = zeta_grid(kappa, p, cfg)
    return complex(-np.dot(g.weights, g.values) / math.pi)


def slip_constant(cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Static limit of V1: -(1/pi) Int [arccot(lambda0_pv/s) - pi] dt.

    Proportional to the isothermal slip coefficient of the BGK model.
    """
    base = half_line_breaks(cfg.cutoff, cfg.panel, cfg.grade)
    f = lambda t: np.arctan2(disp.s_function(t), disp.lambda0_pv(t, cfg)) - math.pi  # noqa: E731
    t, w = panel_rule(refine_adaptive(f, base, cfg.nodes, cfg.tol), cfg.nodes)
    return float(-np.dot(w, f(t)) / math.pi)


@dataclass(frozen=True)
class SpectralData:
    """Everything downstream formulas consume for one (omega1, q)."""

    params: ProblemParams
    cfg: QuadratureConfig
    kappa: int
    eta0: complex | None
    V1: complex
    X_at_zero: complex
    zeta_grid: ZetaGrid = field(repr=False)

    @property
    def lambda_inf(self) -> complex:
        return -1j * self.params.omega1


def _eta0_probe(omega1: float) -> complex:
    return 1j * max(1.0, 1.0 / math.sqrt(omega1))


def _select_eta0(eta, omega1):
    # of the pair +-eta0 keep the one with Re[(1 - i omega1)/eta0] > 0
    return eta if ((1 - 1j * omega1) / eta).real > 0 else -eta


def find_eta0(p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG, kappa: int | None = None) -> complex:
    """Discrete zero eta0 of lambda (exists only when kappa = 1).

    Seeded from the factorisation lambda(z) = i omega1 (z^2 - eta0^2) X(z) X(-z)
    at a probe point on the imaginary axis, then polished by a complex secant
    iteration on lambda.
    """
    if kappa is None:
        kappa = disp.index_kappa(p, cfg)
    if kappa != 1:
        raise WrongIndex("lambda has no zeros in the cut plane when kappa = 0")
    zs = _eta0_probe(p.omega1)
    Xp = zs ** -1 * cmath.exp(V_of_z(zs, 1, p, cfg))
    Xm = (-zs) ** -1 * cmath.exp(V_of_z(-zs, 1, p, cfg))
    seed = _select_eta0(cmath.sqrt(zs * zs - disp.lambda_(zs, p, cfg) / (1j * p.omega1 * Xp * Xm)), p.omega1)
    f = lambda z: disp.lambda_(z, p, cfg)  # noqa: E731
    try:
        root = complex(optimize.newton(f, seed, x1=seed * (1 + 1e-4), tol=1e-15, rtol=1e-14, maxiter=100))
    except (RuntimeError, ArithmeticError) as exc:
        raise RootPolishFailure(str(exc)) from exc
    root = _select_eta0(root, p.omega1)
    if abs(f(root)) > 10 * cfg.tol:
        raise RootPolishFailure(f"|lambda(eta0)| = {abs(f(root)):.3e}")
    return root


def spectral_data(p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> SpectralData:
    core = _spectral_core(p.omega1, cfg)
    return core if core.params == p else replace(core, params=p)


@lru_cache(maxsize=64)
def _spectral_core(omega1: float, cfg: QuadratureConfig) -> SpectralData:
    p = ProblemParams(omega1)
    kappa = disp.index_kappa(p, cfg)
    g = zeta_grid(kappa, p, cfg)
    eta0 = find_eta0(p, cfg, kappa) if kappa == 1 else None
    return SpectralData(
        params=p,
        cfg=cfg,
        kappa=kappa,
        eta0=eta0,
        V1=V1_constant(kappa, p, cfg),
        X_at_zero=X_zero(kappa, p, cfg),
        zeta_grid=g,
    )


def sinzeta_over_X(sd: SpectralData, eta=None):
    """sin(zeta(eta)) / X(eta) on the cut; defaults to the zeta-grid nodes."""
    p, cfg = sd.params, sd.cfg
    if eta is None:
        eta, ze = sd.zeta_grid.nodes, sd.zeta_grid.values
    else:
        eta = np.atleast_1d(np.asarray(eta, dtype=float))
        ze = zeta(eta, sd.kappa, p, cfg)
    return np.sin(ze) / X_cut(eta, sd.kappa, p, cfg)


def representation_rhs(z: complex, sd: SpectralData) -> complex:
    """Right side of the integral representation of 1/X(z):
    z - V1 - (1/pi) Int sin zeta / (X (t - z)) for kappa = 1, and
    1 - (1/pi) Int sin zeta / (X (t - z)) for kappa = 0."""
    g = sd.zeta_grid
    integral = np.dot(g.weights, sinzeta_over_X(sd) / (g.nodes - z)) / math.pi
    head = z - sd.V1 if sd.kappa == 1 else 1.0
    return complex(head - integral)


def X0_closed_form(sd: SpectralData) -> complex:
    """X(0)^2 from the factorisation of lambda at z = 0."""
    w = sd.params.omega1
    if sd.kappa == 0:
        return 1 + 1j / w
    return 1j * sd.params.z0 / (w * sd.eta0**2)


def identity_residuals(sd: SpectralData, p: ProblemParams | None = None,
                       cfg: QuadratureConfig | None = None) -> dict[str, float]:
    """Maximum relative residual of each factorisation identity on the probe grid."""
    p = p or sd.params
    cfg = cfg or sd.cfg
    out = {}

    rel = []
    for mu in (0.1, 0.7, 1.5, 3.0):
        up, dn = X_boundary(mu, sd)
        G = complex(disp.coefficient_G(mu, p, cfg))
        rel.append(abs(up - G * dn) / abs(up))
    out["boundary_relation"] = max(rel)

    rel = []
    for z in REP_PROBES:
        lhs = 1 / X_of_z(z, sd)
        rel.append(abs(lhs - representation_rhs(z, sd)) / abs(lhs))
    out["representation"] = max(rel)

    rel = []
    for z in FACTOR_PROBES:
        lam = disp.lambda_(z, p, cfg)
        XX = X_of_z(z, sd) * X_of_z(-z, sd)
        rhs = 1j * p.omega1 * (z * z - sd.eta0**2) * XX if sd.kappa == 1 else sd.lambda_inf * XX
        rel.append(abs(lam - rhs) / abs(lam))
    out["factorization"] = max(rel)

    closed = X0_closed_form(sd)
    out["X0_closed_form"] = abs(sd.X_at_zero**2 - closed) / abs(closed)
    if sd.kappa == 1:
        out["eta0_residual"] = abs(disp.lambda_(sd.eta0, p, cfg))
    return out
