"""Problem parameters and quadrature settings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameter, NonFiniteResult


@dataclass(frozen=True)
class ProblemParams:
    """Physical input: dimensionless frequency omega1 = omega*tau and
    tangential-momentum accommodation coefficient q."""

    omega1: float
    q: float = 1.0
    z0: complex = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.omega1) and self.omega1 > 0):
            raise InvalidParameter(f"omega1 must be positive, got {self.omega1!r}")
        if not (0 < self.q <= 1):
            raise InvalidParameter(f"q must lie in (0, 1], got {self.q!r}")
        object.__setattr__(self, "omega1", float(self.omega1))
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "z0", complex(1.0, -self.omega1))


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for every singular and semi-infinite integral.

    nodes      Gauss-Legendre order per panel
    cutoff     truncation T of integrals over (0, inf) and (-inf, inf)
    pv_eps     distance from a contour below which a point counts as on it
    tol        target relative error of adaptive refinement
    panel      base panel width
    grade      number of geometric panels clustered at tau = 0
    guard      half-width of the excluded band around the critical frequencies
    """

    nodes: int = 16
    cutoff: float = 7.0
    pv_eps: float = 1e-9
    tol: float = 1e-10
    panel: float = 0.25
    grade: int = 12
    guard: float = 1e-3

    def __post_init__(self):
        if self.nodes < 2:
            raise InvalidParameter("nodes must be >= 2")
        if self.cutoff < 6:
            raise InvalidParameter("cutoff must be >= 6")
        if self.tol < 100 * np.finfo(float).eps:
            raise InvalidParameter("tol below 100 machine epsilons")
        if self.pv_eps <= 0 or self.panel <= 0 or self.guard <= 0:
            raise InvalidParameter("pv_eps, panel and guard must be positive")

    def replace(self, **changes) -> "QuadratureConfig":
        from dataclasses import replace

        return replace(self, **changes)


DEFAULT_CONFIG = QuadratureConfig()


def finite(value, what="result"):
    """Return ``value`` unchanged, raising NonFiniteResult on NaN/Inf."""
    if not np.all(np.isfinite(value)):
        raise NonFiniteResult(f"non-finite {what}")
    return value
