"""Wall observables: friction, dissipation and the two asymptotic regimes.

The friction force on the plate per unit area is F = -2 U0 p f exp(-i omega1 t)
with the dimensionless factor

    f = i omega1 (V1 - kappa eta0) / (1 + Q)

and the mean dissipated power is W = W0 Re f, W0 = U0^2 p / sqrt(beta).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import dispersion as disp
from . import riemann
from .errors import DomainOfValidity, DomainOfValidityWarning, InvalidParameter, NonPositiveArgument
from .params import DEFAULT_CONFIG, ProblemParams, QuadratureConfig
from .quadrature import half_line_breaks, panel_rule
from .riemann import SpectralData
from .solution import ExpansionCoefficients, compute_coefficients, wall_factor

SQRT_PI = math.sqrt(math.pi)
KN_SERIES_LIMIT = 0.3
FREE_MOLECULAR_MIN = 3.0


def knudsen_of(omega1: float) -> float:
    """Kn = (sqrt(pi)/2) sqrt(omega1)."""
    if not omega1 > 0:
        raise NonPositiveArgument("omega1 must be positive")
    return 0.5 * SQRT_PI * math.sqrt(omega1)


def omega1_of(kn: float) -> float:
    """Inverse of :func:`knudsen_of`."""
    if not kn > 0:
        raise NonPositiveArgument("Kn must be positive")
    return (2.0 * kn / SQRT_PI) ** 2


def friction_factor(ec: ExpansionCoefficients) -> complex:
    sd = ec.sd
    shift = sd.eta0 if sd.kappa == 1 else 0.0
    return complex(1j * sd.params.omega1 * (sd.V1 - shift) / (1 + ec.Qkappa))


def _wrap(phase: float) -> float:
    return math.remainder(phase, 2 * math.pi)


def friction_force(ec: ExpansionCoefficients, sd: SpectralData | None = None,
                   p: ProblemParams | None = None, cfg: QuadratureConfig | None = None):
    """(amplitude, phase, factor) of the friction force per 2 U0 p.

    The phase is that of the force itself, -f, which equals
    arg(V1 - kappa eta0) - pi/2 - arg(1 + Q) modulo 2 pi.
    """
    sd = sd or ec.sd
    f = friction_factor(ec)
    shift = sd.eta0 if sd.kappa == 1 else 0.0
    phase = cmath.phase(sd.V1 - shift) - math.pi / 2 - cmath.phase(1 + ec.Qkappa)
    return abs(f), _wrap(phase), f


def dissipation_power(ec: ExpansionCoefficients, sd: SpectralData | None = None,
                      p: ProblemParams | None = None, U0: float | None = None,
                      cfg: QuadratureConfig | None = None, *, pressure: float | None = None,
                      beta: float | None = None) -> float:
    """W/W0 = Re conj(f); dimensional W when both pressure and beta are given."""
    ratio = float(np.conj(friction_factor(ec)).real)
    if pressure is None or beta is None:
        return ratio
    U0 = ec.U0 if U0 is None else U0
    return ratio * U0 * U0 * pressure / math.sqrt(beta)


def hydrodynamic_reference(x, omega1: float):
    """Stokes-layer amplitude exp(-x z0/eta0c), eta0c = (1+i)/(2 sqrt(omega1))."""
    if not omega1 > 0:
        raise NonPositiveArgument("omega1 must be positive")
    eta0c = (1 + 1j) / (2 * math.sqrt(omega1))
    z0 = 1 - 1j * omega1
    out = np.exp(-np.asarray(x, dtype=float) * z0 / eta0c)
    return complex(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SlipLengths:
    C_m: float
    L: float
    L1: float


def slip_lengths(kn: float, q: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> SlipLengths:
    """Slip lengths L = C_m Kn and L1 = ((1-q)/q) sqrt(pi omega1)."""
    if not 0 < q <= 1:
        raise InvalidParameter("q must lie in (0, 1]")
    c_m = 2 * riemann.slip_constant(cfg) / SQRT_PI
    w = omega1_of(kn)
    return SlipLengths(c_m, c_m * kn, (1 - q) / q * math.sqrt(math.pi * w))


def friction_knudsen_expansion(kn: float, q: float = 1.0, terms: int = 2,
                               cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Small-Kn series of the friction force per -2 sqrt(2/pi) U0 p e^{-i pi/4}:

        Kn - (1 - i)(C_m + 2(1-q)/q) Kn^2

    Beyond Kn = 0.3 the series is returned with a DomainOfValidityWarning.
    """
    if not kn > 0:
        raise NonPositiveArgument("Kn must be positive")
    if terms not in (1, 2):
        raise InvalidParameter("terms must be 1 or 2")
    if not 0 < q <= 1:
        raise InvalidParameter("q must lie in (0, 1]")
    if kn > KN_SERIES_LIMIT:
        warnings.warn(f"Kn={kn} beyond the slip-series range", DomainOfValidityWarning, stacklevel=2)
    val = complex(kn)
    if terms == 2:
        c_m = 2 * riemann.slip_constant(cfg) / SQRT_PI
        val -= (1 - 1j) * (c_m + 2 * (1 - q) / q) * kn * kn
    return val


def knudsen_series_factor(kn: float, q: float = 1.0, terms: int = 2,
                          cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """The series expressed as the friction factor f."""
    return math.sqrt(2 / math.pi) * cmath.exp(-1j * math.pi / 4) * friction_knudsen_expansion(kn, q, terms, cfg)


def slip_form(kn: float, q: float = 1.0, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Slip-regime force per -U0 p: sqrt(2 omega1)(1 - L - L1) e^{-i(pi/4 - L - L1)}."""
    sl = slip_lengths(kn, q, cfg)
    tot = sl.L + sl.L1
    return math.sqrt(2 * omega1_of(kn)) * (1 - tot) * cmath.exp(-1j * (math.pi / 4 - tot))


def diffuse_slip_form(kn: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Diffuse-wall slip formula per -U0 p: sqrt(2 omega1)(1 - L) e^{-i(pi/4 - L)}."""
    L = 2 * riemann.slip_constant(cfg) / SQRT_PI * kn
    return math.sqrt(2 * omega1_of(kn)) * (1 - L) * cmath.exp(-1j * (math.pi / 4 - L))


def free_molecular_coefficients(cfg: QuadratureConfig = DEFAULT_CONFIG):
    """(c0, c1, c2) of i omega1 V1 ~ c0 - i c1/omega1 - c2/omega1^2."""
    t, w = panel_rule(half_line_breaks(cfg.cutoff, cfg.panel, cfg.grade), cfg.nodes)
    s = disp.s_function(t)
    l0 = disp.lambda0_pv(t, cfg)
    c0 = np.dot(w, s) / math.pi
    c1 = np.dot(w, s * l0) / math.pi
    c2 = np.dot(w, s * l0 * l0 - s**3 / 3) / math.pi
    return float(c0), float(c1), float(c2)


def free_molecular_series(omega1: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Large-frequency series of i omega1 V1 (valid for omega1 >= 3)."""
    if omega1 < FREE_MOLECULAR_MIN:
        raise DomainOfValidity(f"free-molecular series needs omega1 >= {FREE_MOLECULAR_MIN}")
    c0, c1, c2 = free_molecular_coefficients(cfg)
    return complex(c0 - 1j * c1 / omega1 - c2 / omega1**2)


@dataclass(frozen=True)
class WallObservables:
    A_kappa: complex
    friction_factor: complex
    friction_amplitude: float
    friction_phase: float
    dissipation_normalized: float
    knudsen: float
    kappa: int

    @property
    def wall_amplitude(self) -> float:
        return abs(self.A_kappa)

    @property
    def wall_phase(self) -> float:
        return cmath.phase(self.A_kappa)


def wall_observables(p: ProblemParams, cfg: QuadratureConfig = DEFAULT_CONFIG, U0: float = 1.0) -> WallObservables:
    """Everything the plate feels, for one (omega1, q)."""
    sd = riemann.spectral_data(p, cfg)
    ec = compute_coefficients(sd, p, U0, cfg)
    amp, phase, f = friction_force(ec)
    return WallObservables(
        A_kappa=wall_factor(ec),
        friction_factor=f,
        friction_amplitude=amp,
        friction_phase=phase,
        dissipation_normalized=dissipation_power(ec),
        knudsen=knudsen_of(p.omega1),
        kappa=sd.kappa,
    )
