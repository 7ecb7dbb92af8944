"""Discrete-ordinates solver of the kinetic boundary-value problem.

    mu dh/dx + z0 h = rho(x),   rho = (1/sqrt(pi)) Int exp(-mu^2) h dmu
    h(0, mu) = 2 S  (mu > 0),   h(x_max, mu) = 0  (mu < 0)

Velocities are half-range Gauss-Hermite nodes mirrored about zero. Along
each characteristic the equation is integrated exactly over a cell with a
piecewise-linear source, and the source equation (I - K) rho = b is solved
by GMRES, which accelerates plain source iteration.

Nothing here uses the analytic factorisation; the module is an independent
check on it.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from .errors import InvalidParameter, NoConvergence, SpecularLimit, TruncationTooShort
from .params import ProblemParams

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class OracleConfig:
    n_mu: int = 64
    n_x: int = 2000
    x_max: float | None = None  # None: chosen from the decay rate of the Stokes layer
    sweep_tol: float = 1e-9
    max_iters: int = 400
    grading: float = 4.0  # exponential clustering of cells toward the wall; 0 = uniform

    def __post_init__(self):
        if self.n_mu < 2 or self.n_mu % 2:
            raise InvalidParameter("n_mu must be an even integer >= 2")
        if self.n_x < 10:
            raise InvalidParameter("n_x must be >= 10")
        if self.x_max is not None and self.x_max <= 0:
            raise InvalidParameter("x_max must be positive")
        if self.sweep_tol <= 0 or self.max_iters < 1 or self.grading < 0:
            raise InvalidParameter("sweep_tol, max_iters and grading must be positive")


@dataclass(frozen=True)
class OracleSolution:
    x: np.ndarray
    mu: np.ndarray
    weights: np.ndarray  # include exp(-mu^2)
    h: np.ndarray  # shape (len(x), len(mu))
    d: complex
    S: complex
    U0: float
    U_wall: complex
    friction_factor: complex
    iterations: int
    params: ProblemParams = field(repr=False)

    @property
    def velocity(self) -> np.ndarray:
        return (self.h @ self.weights) / (2 * SQRT_PI)

    def moment_residual(self) -> float:
        """Residual of the wall moment condition (zero by construction at q = 1)."""
        q = self.params.q
        if q == 1.0:
            return 0.0
        lhs = np.dot(self.weights * self.mu, self.h[0])
        return float(abs(lhs - q * (self.U0 - self.d / (1 - q))))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "mu", "re_h", "im_h"])
            for i, xi in enumerate(self.x):
                for j, mj in enumerate(self.mu):
                    v = self.h[i, j]
                    w.writerow([f"{xi:.10g}", f"{mj:.10g}", f"{v.real:.12e}", f"{v.imag:.12e}"])


@lru_cache(maxsize=16)
def half_range_hermite(n: int):
    """Nodes and weights of Int_0^inf exp(-mu^2) f(mu) dmu.

    The recurrence is built by a discretised Stieltjes procedure on a fine
    Gauss-Legendre grid and then diagonalised (Golub-Welsch).
    """
    t, w = np.polynomial.legendre.leggauss(400)
    grid = np.concatenate([np.linspace(0, 3, 13), np.linspace(3.5, 12, 18)])
    xs, ws = [], []
    for a, b in zip(grid[:-1], grid[1:]):
        xs.append(0.5 * (b - a) * t + 0.5 * (a + b))
        ws.append(0.5 * (b - a) * w)
    x = np.concatenate(xs)
    wt = np.concatenate(ws) * np.exp(-x * x)
    alpha, beta = np.zeros(n), np.zeros(n)
    p_prev, p = np.zeros_like(x), np.ones_like(x)
    norm_prev = 1.0
    for k in range(n):
        norm = np.dot(wt, p * p)
        alpha[k] = np.dot(wt, x * p * p) / norm
        beta[k] = norm / norm_prev if k else norm
        p_prev, p = p, (x - alpha[k]) * p - (beta[k] * p_prev if k else 0.0)
        norm_prev = norm
        # rescale to keep the recurrence in range
        scale = math.sqrt(np.dot(wt, p * p))
        p, p_prev, norm_prev = p / scale, p_prev / scale, norm_prev / scale**2
    J = np.diag(alpha) + np.diag(np.sqrt(beta[1:]), 1) + np.diag(np.sqrt(beta[1:]), -1)
    nodes, vecs = np.linalg.eigh(J)
    weights = beta[0] * vecs[0] ** 2
    return nodes, weights


def velocity_rule(n_mu: int):
    """Symmetric rule on the full line: (mu, w) with w including exp(-mu^2)."""
    t, w = half_range_hermite(n_mu // 2)
    return np.concatenate([-t[::-1], t]), np.concatenate([w[::-1], w])


def spatial_grid(x_max: float, n_x: int, grading: float) -> np.ndarray:
    u = np.linspace(0.0, 1.0, n_x + 1)
    if grading == 0:
        return x_max * u
    return x_max * np.expm1(grading * u) / math.expm1(grading)


def auto_x_max(omega1: float, tol: float) -> float:
    # slowest decay is the Stokes-layer mode exp(-x z0 / eta), eta ~ (1+i)/(2 sqrt(omega1))
    rate = math.sqrt(omega1) * abs(1 - omega1) if omega1 < 0.7 else 0.5
    rate = max(min(rate, 1.0), 1e-3)
    return max(40.0, 1.2 * math.log(1.0 / tol) / rate)


def _cell_weights(tau):
    """(exp(-tau), w_a, w_b) for exact integration with a linear source."""
    e = np.exp(-tau)
    small = np.abs(tau) < 0.25
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        wa = (1 - e * (1 + tau)) / tau**2
        w1 = (1 - e) / tau
    if small.any():
        ts = tau[small]
        sa, s1, term = np.zeros_like(ts), np.zeros_like(ts), np.ones_like(ts)
        for k in range(14):
            sa += term / (k + 2)
            s1 += term / (k + 1)
            term = term * (-ts) / (k + 1)
        wa = np.where(small, 0, wa)
        w1 = np.where(small, 0, w1)
        wa[small], w1[small] = sa, s1
    return e, wa, w1 - wa


class _Sweeper:
    """Transport sweeps for a fixed grid; the source rho is the unknown."""

    def __init__(self, x, mu, weights, z0):
        self.x, self.mu, self.w, self.z0 = x, mu, weights, z0
        self.pos = mu > 0
        dx = np.diff(x)
        tau = z0 * dx[:, None] / np.abs(mu)[None, :]
        e, wa, wb = _cell_weights(tau.ravel())
        shape = tau.shape
        e = e.reshape(shape)
        ca = (tau.ravel() / z0 * wa).reshape(shape)
        cb = (tau.ravel() / z0 * wb).reshape(shape)
        p, m = self.pos, ~self.pos
        self.fwd = (e[:, p].copy(), ca[:, p].copy(), cb[:, p].copy())
        self.bwd = (e[:, m].copy(), ca[:, m].copy(), cb[:, m].copy())

    def sweep(self, rho, inflow):
        """h on the grid for source rho and wall inflow (mu > 0)."""
        nx = len(self.x)
        e, ca, cb = self.fwd
        hp = np.empty((nx, e.shape[1]), dtype=complex)
        hp[0] = inflow
        for k in range(nx - 1):
            hp[k + 1] = e[k] * hp[k] + ca[k] * rho[k] + cb[k] * rho[k + 1]
        e, ca, cb = self.bwd
        hm = np.empty((nx, e.shape[1]), dtype=complex)
        hm[-1] = 0.0
        for k in range(nx - 2, -1, -1):
            hm[k] = e[k] * hm[k + 1] + ca[k] * rho[k + 1] + cb[k] * rho[k]
        # mu is sorted, negative nodes first
        return np.concatenate([hm, hp], axis=1)

    def moment(self, h):
        return (h @ self.w) / SQRT_PI


def _solve_unit(sw: _Sweeper, oc: OracleConfig):
    """Solution with wall inflow 2 (i.e. S = 1)."""
    n = len(sw.x)
    zero = np.zeros(n, dtype=complex)
    b = sw.moment(sw.sweep(zero, 2.0))

    def matvec(r):
        r = np.asarray(r, dtype=complex).ravel()
        return r - sw.moment(sw.sweep(r, 0.0))

    A = LinearOperator((n, n), matvec=matvec, dtype=complex)
    count = [0]

    def cb(_):
        count[0] += 1

    rho, info = gmres(A, b, rtol=oc.sweep_tol, atol=0.0, restart=60, maxiter=oc.max_iters,
                      callback=cb, callback_type="pr_norm")
    if info != 0:
        raise NoConvergence(f"GMRES stopped after {count[0]} iterations (info={info})")
    h = sw.sweep(rho, 2.0)
    return h, count[0]


def solve_kinetic(p: ProblemParams, U0: float = 1.0, oc: OracleConfig = OracleConfig()) -> OracleSolution:
    """Converged discrete-ordinates solution for (omega1, q) and wall speed U0.

    The problem is linear in S = U0 q + d, so one solve with S = 1 is scaled
    and S is then fixed by the wall moment condition.
    """
    if p.q < 1e-6:
        raise SpecularLimit("q < 1e-6 is not supported")
    x_max = oc.x_max if oc.x_max is not None else auto_x_max(p.omega1, oc.sweep_tol)
    x = spatial_grid(x_max, oc.n_x, oc.grading)
    mu, w = velocity_rule(oc.n_mu)
    sw = _Sweeper(x, mu, w, p.z0)
    h1, iters = _solve_unit(sw, oc)
    # outgoing density at x_max, weighted like every moment of h
    pos = mu > 0
    outflow = np.dot(w[pos], np.abs(h1[-1, pos])) / SQRT_PI
    if outflow > 10 * oc.sweep_tol:
        raise TruncationTooShort(f"|h(x_max)| = {outflow:.2e}; increase x_max")
    q = p.q
    if q == 1.0:
        S = complex(U0)
    else:
        M1 = np.dot(w * mu, h1[0])
        S = complex(q * U0 / ((1 - q) * M1 + q))
    h = S * h1
    d = S - U0 * q
    U_wall = complex(np.dot(w, h[0]) / (2 * SQRT_PI))
    ff = complex(np.dot(w * mu, h[0]) / (2 * SQRT_PI * U0))
    return OracleSolution(x=x, mu=mu, weights=w, h=h, d=complex(d), S=S, U0=float(U0),
                          U_wall=U_wall, friction_factor=ff, iterations=iters, params=p)


def oracle_moments(sol: OracleSolution, p: ProblemParams | None = None):
    """(U_wall/U0, friction factor, W/W0) of an oracle solution."""
    ff = sol.friction_factor
    return sol.U_wall / sol.U0, ff, float(np.conj(ff).real)
