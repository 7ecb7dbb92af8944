"""Expansion coefficients, distribution function and velocity field.

The solution is the sum of the decaying discrete mode (kappa = 1 only) and
an integral over the continuous spectrum eta in (0, inf):

    h(x, mu) = a0 exp(-x z0/eta0) Phi(eta0, mu)
               + Int_0^inf exp(-x z0/eta) Phi(eta, mu) a(eta) deta

    a0     = 2 sqrt(pi) S / (eta0 X(eta0))
    a(eta) = 2 S sin zeta(eta) / (sqrt(pi) eta X(eta) (eta - eta0)^kappa)
    S      = U0 q + d = U0 / (1 + Q),   Q = 2 sqrt(pi) (1-q)/q i omega1 (V1 - kappa eta0)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import dispersion as disp
from . import riemann
from .errors import NonNegativeArgument, SpecularLimit
from .params import ProblemParams, QuadratureConfig, finite
from .quadrature import half_line_breaks, panel_rule, refine_near
from .riemann import SpectralData

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class _SpectrumRule:
    """Rule on the continuous spectrum with sin(zeta)/X sampled on its nodes."""

    breaks: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    g: np.ndarray  # sin zeta / X on the nodes


@dataclass(frozen=True)
class ExpansionCoefficients:
    a0: complex
    d: complex
    Qkappa: complex
    S: complex
    U0: float
    sd: SpectralData = field(repr=False)
    rule: _SpectrumRule = field(repr=False)

    def kernel(self, eta):
        """sin zeta / (X (eta - eta0)^kappa) at arbitrary eta > 0."""
        eta = np.atleast_1d(np.asarray(eta, dtype=float))
        return riemann.sinzeta_over_X(self.sd, eta) / self._pole(eta)

    def _pole(self, eta):
        return eta - self.sd.eta0 if self.sd.kappa == 1 else np.ones_like(eta)

    def a(self, eta):
        """Continuous-spectrum coefficient a(eta)."""
        eta = np.atleast_1d(np.asarray(eta, dtype=float))
        return 2 * self.S * self.kernel(eta) / (SQRT_PI * eta)

    @property
    def rule_kernel(self):
        return self.rule.g / self._pole(self.rule.nodes)


def _spectrum_rule(sd: SpectralData) -> _SpectrumRule:
    g = sd.zeta_grid
    breaks = g.breaks
    if sd.kappa == 1:
        breaks = refine_near(breaks, sd.eta0)
    nodes, weights, vals = g.panel_values(sd.params, sd.cfg, breaks)
    X = riemann.X_cut(nodes, sd.kappa, sd.params, sd.cfg)
    return _SpectrumRule(breaks, nodes, weights, np.sin(vals) / X)


def friction_moment_factor(sd: SpectralData) -> complex:
    """W = 2 sqrt(pi) i omega1 (V1 - kappa eta0): the wall moment of h per S."""
    shift = sd.eta0 if sd.kappa == 1 else 0.0
    return 2 * SQRT_PI * 1j * sd.params.omega1 * (sd.V1 - shift)


def compute_coefficients(sd: SpectralData, p: ProblemParams | None = None, U0: float = 1.0,
                         cfg: QuadratureConfig | None = None) -> ExpansionCoefficients:
    p = p or sd.params
    q = p.q
    if q < 1e-6:
        raise SpecularLimit("q < 1e-6: Q diverges in the specular limit")
    W = friction_moment_factor(sd)
    if q == 1.0:
        Q, d = 0j, 0j
    else:
        Q = (1 - q) / q * W
        d = (1 - q) * U0 * (1 - W) / (1 + Q)
    S = U0 / (1 + Q)
    a0 = 0j
    if sd.kappa == 1:
        a0 = 2 * SQRT_PI * S / (sd.eta0 * riemann.X_of_z(sd.eta0, sd))
    return ExpansionCoefficients(
        a0=complex(a0), d=complex(d), Qkappa=complex(Q), S=complex(S), U0=float(U0),
        sd=sd, rule=_spectrum_rule(sd),
    )


@dataclass(frozen=True)
class VelocityProfile:
    x_grid: np.ndarray
    values: np.ndarray
    U0: float = 1.0


@dataclass(frozen=True)
class DistributionSlice:
    x: float
    mu_grid: np.ndarray
    values: np.ndarray


def velocity_profile(x_grid, ec: ExpansionCoefficients, sd: SpectralData | None = None,
                     p: ProblemParams | None = None, cfg: QuadratureConfig | None = None) -> VelocityProfile:
    """Complex amplitude U_y(x) (the exp(-i omega1 t) factor stripped)."""
    sd = sd or ec.sd
    p = p or sd.params
    x = np.atleast_1d(np.asarray(x_grid, dtype=float))
    if np.any(x < 0):
        raise NonNegativeArgument("profile needs x >= 0")
    z0 = p.z0
    r = ec.rule
    kern = ec.rule_kernel / r.nodes
    cont = (np.exp(-np.outer(x, z0 / r.nodes)) * kern) @ r.weights / math.pi
    disc = 0.0
    if sd.kappa == 1:
        disc = np.exp(-x * z0 / sd.eta0) / (sd.eta0 * riemann.X_of_z(sd.eta0, sd))
    vals = ec.S * z0 * (disc + cont)
    return VelocityProfile(x, finite(vals, "velocity profile"), ec.U0)


def wall_factor(ec: ExpansionCoefficients, sd: SpectralData | None = None) -> complex:
    """A_kappa = U_y(0)/U0 through the integral representations at z = 0."""
    sd = sd or ec.sd
    z0 = sd.params.z0
    X0 = sd.X_at_zero
    if sd.kappa == 1:
        bracket = 1 + 1 / (sd.eta0 * X0)
    else:
        bracket = 1 - 1 / X0
    return complex(ec.S / ec.U0 * z0 * bracket)


def wall_factor_closed_form(ec: ExpansionCoefficients, sd: SpectralData | None = None) -> complex:
    """A_kappa with X(0) eliminated through the factorisation of lambda.

    kappa = 1: (z0 - sqrt(omega1 z0) e^{-i pi/4}) / (1 + Q1); the minus sign
    follows from X(0) -> -sqrt(2) in the static limit.
    kappa = 0: (1 - i w)(sqrt(w + i) - sqrt(w)) / (sqrt(w + i)(1 + Q0)).
    """
    sd = sd or ec.sd
    w = sd.params.omega1
    z0 = sd.params.z0
    if sd.kappa == 1:
        num = z0 - cmath.sqrt(w * z0) * cmath.exp(-1j * math.pi / 4)
        return complex(num / (1 + ec.Qkappa))
    r = cmath.sqrt(w + 1j)
    return complex(z0 * (r - math.sqrt(w)) / (r * (1 + ec.Qkappa)))


def wall_velocity(ec: ExpansionCoefficients, sd: SpectralData | None = None,
                  p: ProblemParams | None = None, cfg: QuadratureConfig | None = None):
    """(|A_kappa|, arg A_kappa)."""
    A = wall_factor(ec, sd)
    return abs(A), cmath.phase(A)


def distribution_at_wall(mu: float, ec: ExpansionCoefficients, sd: SpectralData | None = None,
                         p: ProblemParams | None = None, cfg: QuadratureConfig | None = None) -> complex:
    """Closed-form h(0, mu) of molecules arriving at the wall (mu < 0)."""
    sd = sd or ec.sd
    mu = float(mu)
    if mu >= 0:
        raise NonNegativeArgument("wall distribution of incoming molecules needs mu < 0")
    X = riemann.X_of_z(mu, sd)
    if sd.kappa == 1:
        return complex(2 * ec.S * (1 - 1 / ((mu - sd.eta0) * X)))
    return complex(2 * ec.S * (1 - 1 / X))


def _continuum_rule_near(ec: ExpansionCoefficients, z: complex):
    """Spectrum rule refined near z, with the kernel recomputed where needed."""
    r = ec.rule
    breaks = refine_near(r.breaks, complex(z))
    if len(breaks) == len(r.breaks):
        return r.nodes, r.weights, ec.rule_kernel
    nodes, weights = panel_rule(breaks, ec.sd.cfg.nodes)
    return nodes, weights, ec.kernel(nodes)


def distribution(x: float, mu, ec: ExpansionCoefficients, sd: SpectralData | None = None) -> DistributionSlice:
    """h(x, mu) from the eigenfunction expansion, for mu of either sign.

    For mu > 0 the continuum integral is a principal value and the
    delta-function part of the eigenfunctions contributes
    exp(-x z0/mu + mu^2) lambda(mu) a(mu).
    """
    sd = sd or ec.sd
    p, cfg = sd.params, sd.cfg
    x = float(x)
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    out = np.empty(mu.shape, dtype=complex)
    z0, T = p.z0, cfg.cutoff
    for i, m in enumerate(mu):
        disc = 0j
        if sd.kappa == 1:
            disc = ec.a0 * sd.eta0 / (SQRT_PI * (sd.eta0 - m)) * cmath.exp(-x * z0 / sd.eta0)
        coef = 2 * ec.S / math.pi
        if m < 0:
            nodes, weights, kern = _continuum_rule_near(ec, m)
            k = coef * np.exp(-x * z0 / nodes) * kern
            out[i] = disc + np.dot(weights, k / (nodes - m))
            continue
        if m == 0:
            raise NonNegativeArgument("h(x, 0) is not defined by the expansion")
        nodes, weights, kern = ec.rule.nodes, ec.rule.weights, ec.rule_kernel
        k = coef * np.exp(-x * z0 / nodes) * kern

        def k_at(t):
            return coef * np.exp(-x * z0 / t) * ec.kernel(t)

        km = complex(k_at(m)[0])
        diff = nodes - m
        close = np.abs(diff) < 1e-12
        with np.errstate(divide="ignore", invalid="ignore"):
            quot = (k - km) / diff
        if close.any():
            h = min(1e-6, 0.25 * m)
            quot[close] = (k_at(m + h)[0] - k_at(m - h)[0]) / (2 * h)
        pv = np.dot(weights, quot) + km * (math.log(abs(T - m)) - math.log(m))
        lam = -1j * p.omega1 + disp.lambda0_pv(m, cfg)[0]
        point = cmath.exp(-x * z0 / m + m * m) * lam * ec.a(m)[0]
        out[i] = disc + pv + point
    return DistributionSlice(x, mu, finite(out, "distribution"))


def wall_moment(ec: ExpansionCoefficients, n_panels: int = 28) -> complex:
    """Int_{-inf}^{inf} exp(-mu^2) mu h(0, mu) dmu with h from the expansion
    (reconstruction for mu > 0, closed form for mu < 0)."""
    sd = ec.sd
    cfg = sd.cfg
    breaks = half_line_breaks(cfg.cutoff, cfg.cutoff / n_panels, cfg.grade)
    # an order different from the spectrum rule keeps the nodes apart
    t, w = panel_rule(breaks, cfg.nodes + 3)
    plus = distribution(0.0, t, ec).values
    minus = np.array([distribution_at_wall(-m, ec) for m in t])
    weight = w * np.exp(-t * t) * t
    return complex(np.dot(weight, plus) - np.dot(weight, minus))


def moment_target(ec: ExpansionCoefficients) -> complex:
    """Right side q (U0 - d/(1 - q)) of the wall moment condition.

    At q = 1, d/(1 - q) is replaced by its limit U0 (1 - W), giving W U0.
    """
    q = ec.sd.params.q
    if q == 1.0:
        return complex(friction_moment_factor(ec.sd) * ec.U0)
    return complex(q * (ec.U0 - ec.d / (1 - q)))
