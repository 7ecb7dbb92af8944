"""Oscillating-plate (second Stokes) problem for a rarefied BGK gas.

Analytic solution by Riemann-problem factorisation, with a discrete-ordinates
solver kept alongside as an independent check.
"""

__version__ = "0.1.0"

from .dispersion import boundary_values, coefficient_G, critical_frequency, index_kappa, lambda0, lambda_
from .errors import Stokes2Error
from .observables import (
    WallObservables,
    dissipation_power,
    free_molecular_series,
    friction_force,
    friction_knudsen_expansion,
    hydrodynamic_reference,
    knudsen_of,
    wall_observables,
)
from .oracle import OracleConfig, OracleSolution, oracle_moments, solve_kinetic
from .params import DEFAULT_CONFIG, ProblemParams, QuadratureConfig
from .riemann import SpectralData, V1_constant, X_of_z, V_of_z, find_eta0, identity_residuals, spectral_data, zeta
from .solution import (
    ExpansionCoefficients,
    compute_coefficients,
    distribution_at_wall,
    velocity_profile,
    wall_velocity,
)

__all__ = [
    "DEFAULT_CONFIG",
    "ExpansionCoefficients",
    "OracleConfig",
    "OracleSolution",
    "ProblemParams",
    "QuadratureConfig",
    "SpectralData",
    "Stokes2Error",
    "V1_constant",
    "V_of_z",
    "WallObservables",
    "X_of_z",
    "boundary_values",
    "coefficient_G",
    "compute_coefficients",
    "critical_frequency",
    "dissipation_power",
    "distribution_at_wall",
    "find_eta0",
    "free_molecular_series",
    "friction_force",
    "friction_knudsen_expansion",
    "hydrodynamic_reference",
    "identity_residuals",
    "index_kappa",
    "knudsen_of",
    "lambda0",
    "lambda_",
    "oracle_moments",
    "solve_kinetic",
    "spectral_data",
    "velocity_profile",
    "wall_observables",
    "wall_velocity",
    "zeta",
]
