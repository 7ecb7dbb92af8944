"""Composite Gauss-Legendre rules on panel breakpoints.

Everything here works on a sorted array of breakpoints; a rule is the pair
(nodes, weights) obtained by mapping an n-point Gauss-Legendre rule onto
every panel.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import QuadratureDivergence


@lru_cache(maxsize=16)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_rule(breaks, n: int):
    """Nodes and weights of the n-point rule on every panel of ``breaks``."""
    breaks = np.asarray(breaks, dtype=float)
    x, w = _leggauss(n)
    a, b = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b) + half * x).ravel()
    weights = (half * w).ravel()
    return nodes, weights


def half_line_breaks(cutoff: float, width: float, grade: int) -> np.ndarray:
    """Uniform panels on [0, cutoff] with the first one split geometrically
    towards 0 (``grade`` levels), where integrands carry t*log(t) terms."""
    n = max(1, int(np.ceil(cutoff / width)))
    uniform = np.linspace(0.0, cutoff, n + 1)
    first = uniform[1]
    graded = first * 2.0 ** -np.arange(grade, 0, -1)
    return np.concatenate(([0.0], graded, uniform[1:]))


def symmetric_breaks(cutoff: float, width: float) -> np.ndarray:
    n = max(1, int(np.ceil(cutoff / width)))
    return np.linspace(-cutoff, cutoff, 2 * n + 1)


def refine_adaptive(f, breaks, n: int, tol: float, max_splits: int = 4000) -> np.ndarray:
    """Bisect panels until the n-point rule on each panel agrees with the
    rule on its two halves to ``tol`` (relative to the total integral of |f|).

    ``f`` is vectorised and may be complex valued.
    """
    breaks = list(np.asarray(breaks, dtype=float))
    x, w = _leggauss(n)

    def integral(a, b):
        h = 0.5 * (b - a)
        return h * np.dot(w, f(0.5 * (a + b) + h * x))

    nodes, weights = panel_rule(breaks, n)
    scale = max(np.sum(weights * np.abs(f(nodes))), 1e-300)

    out = []
    stack = [(a, b) for a, b in zip(breaks[:-1], breaks[1:])][::-1]
    splits = 0
    while stack:
        a, b = stack.pop()
        m = 0.5 * (a + b)
        coarse = integral(a, b)
        fine = integral(a, m) + integral(m, b)
        if abs(coarse - fine) <= tol * scale or (b - a) < 1e-12:
            out.append(a)
            continue
        splits += 1
        if splits > max_splits:
            raise QuadratureDivergence("adaptive refinement exceeded its panel budget")
        stack.append((m, b))
        stack.append((a, m))
    out.append(breaks[-1])
    return np.array(out)


def refine_near(breaks, z: complex, ratio: float = 1.5) -> np.ndarray:
    """Split panels until every panel's half-width is at most
    dist(z, panel)/ratio, so an analytic integrand times 1/(t - z) stays
    resolved. Panels far from z are returned untouched."""
    out = [breaks[0]]
    for a, b in zip(breaks[:-1], breaks[1:]):
        stack = [(a, b)]
        pieces = []
        while stack:
            lo, hi = stack.pop()
            xr = min(max(z.real, lo), hi)
            dist = abs(complex(xr, 0.0) - z)
            if 0.5 * (hi - lo) * ratio <= dist or (hi - lo) < 1e-14:
                pieces.append(hi)
                continue
            m = 0.5 * (lo + hi)
            # split at the projection of z when it falls inside the panel
            if lo < xr < hi and min(xr - lo, hi - xr) > 0.25 * (hi - lo):
                m = xr
            stack.append((m, hi))
            stack.append((lo, m))
        out.extend(sorted(pieces))
    return np.array(out)
