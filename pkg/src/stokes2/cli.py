"""Command-line front end.

    stokes2 wall-velocity --omega1 1 --q 1
    stokes2 friction --omega1 0.02:10:60:log --q 1 0.5 --format json
    stokes2 figures --output figs/
    stokes2 verify --oracle --omega1 0.5 --q 0.5

Exit status: 0 ok, 1 failed invariant, 2 invalid input. Quadrature settings
may be read from a JSON file named by $STOKES2_CONFIG and overridden by flags.
"""

from __future__ import annotations

import argparse
import cmath
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import dispersion as disp
from .errors import Stokes2Error
from .observables import wall_observables
from .params import DEFAULT_CONFIG, ProblemParams, QuadratureConfig

CONFIG_ENV = "STOKES2_CONFIG"
DEFAULT_SWEEP = "0.02:10:60:log"
FIG_Q = {"fig1": (1.0, 0.75, 0.5), "fig2": (1.0, 0.75, 0.5), "fig3": (1.0, 0.75, 0.5),
         "fig4": (1.0, 0.75, 0.5), "fig5": (1.0, 0.5, 0.25)}
FIG_COLUMN = {
    "fig1": ("wall_amplitude", "|A_kappa| per U0"),
    "fig2": ("wall_phase", "arg A_kappa [rad]"),
    "fig3": ("friction_amplitude", "|friction| per 2 U0 p"),
    "fig4": ("friction_phase", "friction phase [rad]"),
    "fig5": ("dissipation_normalized", "W per W0"),
}


class SpecError(Exception):
    """Invalid command-line specification (exit status 2)."""


@dataclass
class Sweep:
    values: list[float]
    label: str
    excised: list[float] = field(default_factory=list)


def parse_sweep(text: str, cfg: QuadratureConfig) -> Sweep:
    """A single value or start:stop:count[:log|lin]; guard-band points are dropped."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            vals = [float(parts[0])]
        elif len(parts) in (3, 4):
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            kind = parts[3] if len(parts) == 4 else "log"
            if kind not in ("log", "lin") or count < 1 or start <= 0 or stop <= 0:
                raise ValueError
            space = np.geomspace if kind == "log" else np.linspace
            vals = [float(v) for v in space(start, stop, count)]
        else:
            raise ValueError
    except ValueError:
        raise SpecError(f"bad omega1 specification {text!r}") from None
    if any(not v > 0 for v in vals):
        raise SpecError("omega1 must be positive")
    centres = (disp.transition_frequency(cfg), disp.critical_frequency(cfg))
    keep, cut = [], []
    for v in vals:
        (cut if any(abs(v - c) <= cfg.guard for c in centres) else keep).append(v)
    if len(vals) == 1 and cut:
        raise SpecError(f"omega1={vals[0]} lies in the critical-frequency guard band")
    return Sweep(keep, text, cut)


def load_config(args) -> QuadratureConfig:
    opts = {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        try:
            opts.update(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read config file {path}: {exc}") from None
    for name in ("nodes", "cutoff", "tol", "panel", "guard"):
        val = getattr(args, name, None)
        if val is not None:
            opts[name] = val
    try:
        return DEFAULT_CONFIG.replace(**opts)
    except TypeError as exc:
        raise SpecError(f"unknown configuration key: {exc}") from None
    except Stokes2Error as exc:
        raise SpecError(str(exc)) from None


def _frequency(task):
    omega1, qs, cfg = task
    return [wall_observables(ProblemParams(omega1, q), cfg) for q in qs]


def evaluate(points, cfg, jobs: int):
    """Wall observables at (omega1, q) pairs, in input order.

    Work is grouped by omega1 so each worker factorises once per frequency.
    """
    groups: dict[float, list[float]] = {}
    for w, q in points:
        groups.setdefault(w, []).append(q)
    tasks = [(w, tuple(qs), cfg) for w, qs in groups.items()]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_frequency, tasks))
    else:
        results = [_frequency(t) for t in tasks]
    lookup = {(w, q): o for (w, qs, _), obs in zip(tasks, results) for q, o in zip(qs, obs)}
    return [lookup[pt] for pt in points]


# ---------------------------------------------------------------- output


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.12g}"


def header_line(omega1, q, kappa, normalization, extra: str = "") -> str:
    line = (f"# stokes2-kinetic v{__version__}, omega1={omega1}, q={q}, "
            f"kappa={kappa}, normalization={normalization}")
    return line + (f", {extra}" if extra else "")


def render(table: dict, fmt: str) -> str:
    """table: header fields, columns and rows."""
    if fmt == "json":
        body = {"header": table["header"], "columns": table["columns"],
                "rows": [[float(v) if not isinstance(v, int) else v for v in r] for r in table["rows"]]}
        return json.dumps(body, indent=1, sort_keys=True) + "\n"
    h = table["header"]
    extra = ", ".join(f"{k}={h[k]}" for k in sorted(h) if k not in ("omega1", "q", "kappa", "normalization"))
    out = io.StringIO()
    out.write(header_line(h["omega1"], h["q"], h["kappa"], h["normalization"], extra) + "\n")
    out.write(",".join(table["columns"]) + "\n")
    for r in table["rows"]:
        out.write(",".join(_fmt(v) for v in r) + "\n")
    return out.getvalue()


def emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------- commands


def _kappa_label(kappas):
    ks = sorted(set(kappas))
    return str(ks[0]) if len(ks) == 1 else "per-row"


def _point_table(args, cfg, columns, normalization, pick):
    sweep = parse_sweep(args.omega1, cfg)
    points = [(w, q) for w in sweep.values for q in args.q]
    obs = evaluate(points, cfg, args.jobs)
    rows = [[w, q, o.kappa, *pick(o)] for (w, q), o in zip(points, obs)]
    header = {"omega1": sweep.label, "q": " ".join(_fmt(q) for q in args.q),
              "kappa": _kappa_label(o.kappa for o in obs), "normalization": normalization}
    if sweep.excised:
        header["excised"] = " ".join(_fmt(w) for w in sweep.excised)
        print(f"note: {len(sweep.excised)} point(s) in the guard band were skipped", file=sys.stderr)
    return {"header": header, "columns": ["omega1", "q", "kappa", *columns], "rows": rows}


def cmd_wall_velocity(args, cfg):
    return _point_table(args, cfg, ["abs_A", "phase_A", "re_A", "im_A"], "per U0",
                        lambda o: [abs(o.A_kappa), cmath.phase(o.A_kappa), o.A_kappa.real, o.A_kappa.imag])


def cmd_friction(args, cfg):
    return _point_table(args, cfg, ["amplitude", "phase", "re_factor", "im_factor"], "per 2 U0 p",
                        lambda o: [o.friction_amplitude, o.friction_phase,
                                   o.friction_factor.real, o.friction_factor.imag])


def cmd_dissipation(args, cfg):
    return _point_table(args, cfg, ["W_over_W0"], "per W0", lambda o: [o.dissipation_normalized])


def _single(args, cfg):
    sweep = parse_sweep(args.omega1, cfg)
    if len(sweep.values) != 1 or len(args.q) != 1:
        raise SpecError("this command needs a single omega1 and a single q")
    return ProblemParams(sweep.values[0], args.q[0])


def _grid(text: str, what: str):
    try:
        a, b, n = text.split(":")
        return np.linspace(float(a), float(b), int(n))
    except ValueError:
        raise SpecError(f"bad {what} grid {text!r}; use start:stop:count") from None


def cmd_profile(args, cfg):
    from .riemann import spectral_data
    from .solution import compute_coefficients, velocity_profile

    p = _single(args, cfg)
    x = _grid(args.x, "x")
    if np.any(x < 0):
        raise SpecError("x must be nonnegative")
    ec = compute_coefficients(spectral_data(p, cfg), p, 1.0, cfg)
    u = velocity_profile(x, ec).values
    rows = [[xi, v.real, v.imag, abs(v), cmath.phase(v)] for xi, v in zip(x, u)]
    header = {"omega1": _fmt(p.omega1), "q": _fmt(p.q), "kappa": ec.sd.kappa, "normalization": "per U0"}
    return {"header": header, "columns": ["x", "re_U", "im_U", "abs_U", "phase_U"], "rows": rows}


def cmd_wall_distribution(args, cfg):
    from .riemann import spectral_data
    from .solution import compute_coefficients, distribution, distribution_at_wall

    p = _single(args, cfg)
    mu = _grid(args.mu, "mu")
    if np.any(mu == 0):
        raise SpecError("mu = 0 is not allowed")
    ec = compute_coefficients(spectral_data(p, cfg), p, 1.0, cfg)
    rows = []
    for m in mu:
        v = distribution_at_wall(m, ec) if m < 0 else complex(distribution(0.0, m, ec).values[0])
        rows.append([m, v.real, v.imag])
    header = {"omega1": _fmt(p.omega1), "q": _fmt(p.q), "kappa": ec.sd.kappa, "normalization": "per U0"}
    return {"header": header, "columns": ["mu", "re_h", "im_h"], "rows": rows}


def cmd_figures(args, cfg):
    out = Path(args.output or ".")
    out.mkdir(parents=True, exist_ok=True)
    sweep = parse_sweep(args.omega1 or DEFAULT_SWEEP, cfg)
    qs = sorted({q for v in FIG_Q.values() for q in v}, reverse=True)
    points = [(w, q) for w in sweep.values for q in qs]
    obs = dict(zip(points, evaluate(points, cfg, args.jobs)))
    ext = "json" if args.format == "json" else "csv"
    for name, (attr, norm) in FIG_COLUMN.items():
        fig_q = FIG_Q[name]
        rows = []
        for w in sweep.values:
            vals = [getattr(obs[(w, q)], attr) for q in fig_q]
            rows.append([w, obs[(w, fig_q[0])].kappa, *vals])
        header = {"omega1": sweep.label, "q": " ".join(_fmt(q) for q in fig_q), "kappa": "per-row",
                  "normalization": norm}
        if sweep.excised:
            header["excised"] = " ".join(_fmt(w) for w in sweep.excised)
        table = {"header": header, "columns": ["omega1", "kappa", *(f"q={_fmt(q)}" for q in fig_q)],
                 "rows": rows}
        (out / f"{name}.{ext}").write_text(render(table, args.format))
    return None


def cmd_verify(args, cfg):
    from .verify import run_checks

    sweep = parse_sweep(args.omega1, cfg)
    failed = False
    lines = []
    for w in sweep.values:
        for q in args.q:
            for check in run_checks(ProblemParams(w, q), cfg, oracle=args.oracle):
                mark = "PASS" if check.passed else "FAIL"
                failed |= not check.passed
                lines.append(f"{mark} omega1={_fmt(w)} q={_fmt(q)} {check.name}: "
                             f"{check.value:.3e} (limit {check.limit:.1e})")
    emit("\n".join(lines) + "\n", args.output)
    return 1 if failed else 0


COMMANDS = {
    "wall-velocity": cmd_wall_velocity,
    "friction": cmd_friction,
    "dissipation": cmd_dissipation,
    "profile": cmd_profile,
    "wall-distribution": cmd_wall_distribution,
    "figures": cmd_figures,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stokes2", description="Second Stokes problem for a rarefied gas.")
    parser.add_argument("--version", action="version", version=f"stokes2-kinetic {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        default = None if name == "figures" else "1"
        sp.add_argument("--omega1", default=default, help="value or start:stop:count[:log|lin]")
        sp.add_argument("--q", type=float, nargs="+", default=[1.0], help="accommodation coefficient(s)")
        sp.add_argument("--output", "-o", default=None, help="file (directory for figures); '-' is stdout")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--jobs", type=int, default=1)
        quad = sp.add_argument_group("quadrature overrides")
        quad.add_argument("--nodes", type=int)
        quad.add_argument("--cutoff", type=float)
        quad.add_argument("--tol", type=float)
        quad.add_argument("--panel", type=float)
        quad.add_argument("--guard", type=float)
        if name == "profile":
            sp.add_argument("--x", default="0:20:81", help="start:stop:count")
        if name == "wall-distribution":
            sp.add_argument("--mu", default="-4:4:41", help="start:stop:count")
        if name == "verify":
            sp.add_argument("--oracle", action="store_true", help="also run the discrete-ordinates check")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if any(not 0 < q <= 1 for q in args.q):
            raise SpecError("q must lie in (0, 1]")
        if args.jobs < 1:
            raise SpecError("--jobs must be >= 1")
        cfg = load_config(args)
        result = COMMANDS[args.command](args, cfg)
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Stokes2Error as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, dict):
        emit(render(result, args.format), args.output)
        return 0
    return int(result or 0)


if __name__ == "__main__":
    raise SystemExit(main())
