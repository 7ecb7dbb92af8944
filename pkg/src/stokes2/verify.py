"""Self-consistency checks shared by the ``verify`` command and the tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import riemann
from .observables import wall_observables
from .params import ProblemParams, QuadratureConfig
from .solution import (
    ExpansionCoefficients,
    compute_coefficients,
    distribution,
    distribution_at_wall,
    moment_target,
    velocity_profile,
    wall_factor,
    wall_factor_closed_form,
    wall_moment,
)

BC_GRID = np.concatenate([np.geomspace(1e-3, 0.1, 5), np.linspace(0.2, 6.0, 30)])
IDENTITY_LIMIT = 1e-6
ETA0_LIMIT = 1e-8
ORACLE_LIMIT = 1e-2
ORACLE_DISSIPATION_LIMIT = 1.5e-2


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: float

    @property
    def passed(self) -> bool:
        return bool(self.value < self.limit)


def bc_residual(ec: ExpansionCoefficients, mu=BC_GRID) -> float:
    """max |h(0, mu) - 2S| over mu > 0 for the reconstructed distribution."""
    h = distribution(0.0, mu, ec).values
    return float(np.max(np.abs(h - 2 * ec.S)))


def moment_residual(ec: ExpansionCoefficients) -> float:
    return float(abs(wall_moment(ec) - moment_target(ec)))


def route_residual(ec: ExpansionCoefficients) -> float:
    """Closed-form wall quantities against quadrature of the expansion."""
    a_closed = wall_factor_closed_form(ec)
    a_quad = complex(velocity_profile([0.0], ec).values[0])
    errs = [abs(a_closed - wall_factor(ec)), abs(a_closed - a_quad)]
    for m in (-0.05, -0.5, -1.5, -3.0):
        errs.append(abs(distribution_at_wall(m, ec) - complex(distribution(0.0, m, ec).values[0])))
    return float(max(errs))


def run_checks(p: ProblemParams, cfg: QuadratureConfig, oracle: bool = False) -> list[Check]:
    sd = riemann.spectral_data(p, cfg)
    ec = compute_coefficients(sd, p, 1.0, cfg)
    tol10 = 10 * cfg.tol
    checks = []
    for name, val in riemann.identity_residuals(sd).items():
        limit = ETA0_LIMIT if name == "eta0_residual" else IDENTITY_LIMIT
        checks.append(Check(name, float(val), limit))
    checks.append(Check("bc_reproduction", bc_residual(ec), tol10))
    checks.append(Check("moment_condition", moment_residual(ec), tol10))
    checks.append(Check("route_equivalence", route_residual(ec), tol10))
    if oracle:
        from .oracle import oracle_moments, solve_kinetic

        obs = wall_observables(p, cfg)
        U, ff, W = oracle_moments(solve_kinetic(p))
        checks.append(Check("oracle_wall_velocity", abs(U - obs.A_kappa) / abs(obs.A_kappa), ORACLE_LIMIT))
        checks.append(Check("oracle_friction", abs(ff - obs.friction_factor) / abs(obs.friction_factor),
                            ORACLE_LIMIT))
        checks.append(Check("oracle_dissipation",
                            abs(W - obs.dissipation_normalized) / abs(obs.dissipation_normalized),
                            ORACLE_DISSIPATION_LIMIT))
    return checks
