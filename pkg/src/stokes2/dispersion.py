"""Dispersion function of the oscillating-plate BGK problem.

    lambda0(z) = (1/sqrt(pi)) Int_{-inf}^{inf} exp(-t^2) t dt / (t - z)
    lambda(z)  = -i*omega1 + lambda0(z)

On the positive real axis the two boundary values are
lambda^{+-}(mu) = -i*omega1 + lambda0_pv(mu) +- i*s(mu) with the real
s(mu) = sqrt(pi) mu exp(-mu^2), and G = lambda^+ / lambda^-.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np
from scipy import optimize

from .errors import (
    BranchTrackingFailure,
    CriticalFrequency,
    MaximizationFailure,
    NonPositiveArgument,
    OnRealAxis,
    ZeroDenominator,
)
from .params import DEFAULT_CONFIG, ProblemParams, QuadratureConfig, finite
from .quadrature import panel_rule, symmetric_breaks

SQRT_PI = math.sqrt(math.pi)

# Densities whose Hilbert transforms give lambda0 and its derivative.
def _dens(t):
    return t * np.exp(-t * t) / SQRT_PI


def _dens_d1(t):
    return (1.0 - 2.0 * t * t) * np.exp(-t * t) / SQRT_PI


def _dens_d2(t):
    return (4.0 * t**3 - 6.0 * t) * np.exp(-t * t) / SQRT_PI


@lru_cache(maxsize=32)
def _line_rule(cfg: QuadratureConfig):
    return panel_rule(symmetric_breaks(cfg.cutoff, cfg.panel), cfg.nodes)


def s_function(mu):
    """Jump density s(mu) = sqrt(pi) mu exp(-mu^2)."""
    mu = np.asarray(mu, dtype=float)
    return SQRT_PI * mu * np.exp(-mu * mu)


def s_derivative(mu):
    mu = np.asarray(mu, dtype=float)
    return SQRT_PI * (1.0 - 2.0 * mu * mu) * np.exp(-mu * mu)


def _pv_line(f, fprime, mu, cfg):
    """Principal value of Int_{-T}^{T} f(t)/(t - mu) dt for real mu (array).

    The singularity is removed by subtracting f(mu); the difference quotient
    is entire, so the panel rule converges spectrally for every mu.
    """
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    t, w = _line_rule(cfg)
    T = cfg.cutoff
    fm = f(mu)
    diff = t[None, :] - mu[:, None]
    close = np.abs(diff) < 1e-13
    with np.errstate(divide="ignore", invalid="ignore"):
        quot = (f(t)[None, :] - fm[:, None]) / diff
    if close.any():
        quot = np.where(close, fprime(mu)[:, None], quot)
    with np.errstate(divide="ignore"):
        log_term = np.log(np.abs(T - mu)) - np.log(np.abs(T + mu))
    log_term = np.where(np.isfinite(log_term), log_term, 0.0)
    return quot @ w + fm * log_term


def lambda0_pv(mu, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Real principal value of lambda0 on the real axis (vectorised)."""
    out = _pv_line(_dens, _dens_d1, mu, cfg)
    return finite(out, "lambda0_pv")


def lambda0_pv_derivative(mu, cfg: QuadratureConfig = DEFAULT_CONFIG):
    return finite(_pv_line(_dens_d1, _dens_d2, mu, cfg), "lambda0_pv'")


def lambda0(z: complex, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Cauchy integral lambda0(z) for z off the real axis.

    z = 0 is accepted as a limit point (both boundary values equal 1 there).
    """
    z = complex(z)
    if abs(z.imag) < cfg.pv_eps:
        if abs(z.real) < cfg.pv_eps:
            return complex(lambda0_pv(0.0, cfg)[0])
        raise OnRealAxis(f"lambda0 requested on the real axis at {z}")
    t, w = _line_rule(cfg)
    T = cfg.cutoff
    if abs(z.imag) < 1.0 and abs(z.real) < T + 1.0:
        # singularity subtraction; exp(-z^2) stays O(e) in this strip
        fz = z * cmath.exp(-z * z) / SQRT_PI
        val = np.dot(w, (_dens(t) - fz) / (t - z)) + fz * cmath.log((z - T) / (z + T))
    else:
        val = np.dot(w, _dens(t) / (t - z))
    return complex(finite(val, "lambda0"))


def lambda_(z: complex, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Dispersion function lambda(z) = -i*omega1 + lambda0(z)."""
    return -1j * p.omega1 + lambda0(z, cfg)


def boundary_values(mu, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """(lambda^+(mu), lambda^-(mu)) for mu > 0. Vectorised over mu."""
    mu_arr = np.asarray(mu, dtype=float)
    if np.any(mu_arr <= 0):
        raise NonPositiveArgument("boundary values need mu > 0")
    base = lambda0_pv(mu_arr.ravel(), cfg).reshape(mu_arr.shape) - 1j * p.omega1
    s = s_function(mu_arr)
    lp, lm = base + 1j * s, base - 1j * s
    if np.ndim(mu) == 0:
        return complex(lp), complex(lm)
    return lp, lm


def coefficient_G(mu, p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """G(mu) = lambda^+(mu) / lambda^-(mu)."""
    lp, lm = boundary_values(mu, p, cfg)
    if np.any(np.abs(lm) < 1e3 * np.finfo(float).tiny):
        raise ZeroDenominator("lambda^- vanishes")
    return lp / lm


def _radicand(mu, cfg):
    return s_function(mu) ** 2 - lambda0_pv(mu, cfg) ** 2


@lru_cache(maxsize=8)
def critical_frequency(cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """max over mu > 0 of sqrt(s^2 - lambda0_pv^2), where the radicand is >= 0.

    This is the conventional critical frequency (~0.7328). The index of G
    actually changes at :func:`transition_frequency` (~0.6973); both are
    excluded by the guard band.
    """
    mu = np.linspace(1e-3, cfg.cutoff, 4001)
    r = _radicand(mu, cfg)
    k = int(np.argmax(r))
    if r[k] < 0 or k == 0 or k == len(mu) - 1:
        raise MaximizationFailure("radicand has no interior nonnegative maximum")
    res = optimize.minimize_scalar(
        lambda m: -_radicand(np.array([m]), cfg)[0],
        bracket=(mu[k - 1], mu[k], mu[k + 1]),
        method="brent",
        tol=1e-12,
    )
    if not res.success or not mu[k - 1] <= res.x <= mu[k + 1]:
        raise MaximizationFailure("Brent search left the bracket")
    return float(math.sqrt(-res.fun))


@lru_cache(maxsize=8)
def transition_frequency(cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Frequency at which the zero of lambda reaches the real axis.

    lambda^+(mu) = 0 requires lambda0_pv(mu) = 0 and s(mu) = omega1, so the
    transition sits at s(mu_c) with lambda0_pv(mu_c) = 0.
    """
    mu_c = optimize.brentq(lambda m: lambda0_pv(m, cfg)[0], 0.5, 1.5, xtol=1e-15)
    return float(s_function(mu_c))


def check_guard(omega1: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> None:
    for w in (transition_frequency(cfg), critical_frequency(cfg)):
        if abs(omega1 - w) <= cfg.guard:
            raise CriticalFrequency(
                f"omega1={omega1} within {cfg.guard} of the critical frequency {w:.6f}"
            )


def _arg_increments(t, p, cfg):
    G = coefficient_G(t, p, cfg)
    return np.angle(G[1:] / G[:-1]), G


def index_kappa(p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG, max_depth: int = 30) -> int:
    """Winding number of arg G(t), t from 0 to infinity, with arg G(0) = 0.

    The argument is followed on a dense grid; any step whose increment
    exceeds pi/4 is bisected until the increments are small.
    """
    check_guard(p.omega1, cfg)
    t = np.concatenate((np.geomspace(1e-8, 0.05, 60), np.linspace(0.05, cfg.cutoff, 1400)[1:]))
    total = 0.0
    incr, _ = _arg_increments(t, p, cfg)
    for k, d in enumerate(incr):
        if abs(d) <= math.pi / 4:
            total += d
            continue
        total += _refined_increment(t[k], t[k + 1], p, cfg, max_depth)
    kappa = total / (2 * math.pi)
    kappa_int = int(round(kappa))
    if abs(kappa - kappa_int) > 1e-3:
        raise BranchTrackingFailure(f"arg G does not close on a multiple of 2pi ({kappa})")
    return kappa_int


def _refined_increment(a, b, p, cfg, max_depth):
    pieces = [(a, b, 0)]
    total = 0.0
    while pieces:
        lo, hi, depth = pieces.pop()
        d = float(np.angle(coefficient_G(hi, p, cfg) / coefficient_G(lo, p, cfg)))
        if abs(d) <= math.pi / 4:
            total += d
            continue
        if depth >= max_depth:
            if abs(d) > math.pi / 2:
                raise BranchTrackingFailure("argument jump persists after maximal refinement")
            total += d
            continue
        m = 0.5 * (lo + hi)
        pieces.append((m, hi, depth + 1))
        pieces.append((lo, m, depth + 1))
    return total


def laurent_tail(z: complex, omega1: float) -> complex:
    """Three-term expansion of lambda at infinity."""
    return -1j * omega1 - 1.0 / (2 * z * z) - 3.0 / (4 * z**4)
