"""Command-line front end.

Each subcommand evaluates one quantity over a grid and writes CSV (header
row, 17 significant digits, so values round-trip exactly) to ``--out`` or
stdout, with an optional single-series SVG plot.

Settings come from a JSON document (``--config``, or the path in the
``BETASHIFT_CONFIG`` environment variable) and are overridden by flags.

Exit codes: 0 success, 1 oracle failure, 2 usage, 3 domain or range error,
4 divergence guard, 5 consistency error, 6 unsupported input, 7 size guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import eigen, oracle, singular, spectrum
from .errors import (BetaShiftError, ConsistencyError, DivergenceError, DomainError, RangeError,
                     SizeError, UnsupportedError)
from .kernel import BetaSpec, DigitSequence, make_context

CONFIG_ENV = "BETASHIFT_CONFIG"
MIN_TOL = 1e-13

EXIT_OK = 0
EXIT_ORACLE_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_DIVERGENCE = 4
EXIT_CONSISTENCY = 5
EXIT_UNSUPPORTED = 6
EXIT_SIZE = 7


def exit_code_for(exc: BaseException) -> int:
    """Map a library error to its process exit code."""
    for cls, code in ((DivergenceError, EXIT_DIVERGENCE), (ConsistencyError, EXIT_CONSISTENCY),
                      (UnsupportedError, EXIT_UNSUPPORTED), (SizeError, EXIT_SIZE),
                      (DomainError, EXIT_DOMAIN), (RangeError, EXIT_DOMAIN)):
        if isinstance(exc, cls):
            return code
    return EXIT_DOMAIN


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    """Resolved settings for one invocation.

    Grids are strings until :func:`parse_grid` reads them: either a comma
    list (``"-1,0,1"``) or ``"start:stop:count"``.
    """

    beta: str | None = None
    poly: str | None = None
    family: str | None = None
    digits: str | None = None
    t: float | None = None
    t_grid: str | None = None
    alpha_grid: str | None = None
    p: float | None = None
    x_grid: str | None = None
    tol: float = 1e-12
    depth: int = singular.DEFAULT_DEPTH
    out: str | None = None
    svg: str | None = None

    def beta_spec(self) -> BetaSpec:
        given = [k for k in ("beta", "poly", "family") if getattr(self, k) is not None]
        if len(given) > 1:
            raise DomainError("give only one of --beta, --poly and --family")
        digits = DigitSequence.parse(self.digits) if self.digits else None
        if self.family is not None:
            base = BetaSpec.from_tag(self.family)
            if digits is None:
                return base
            return BetaSpec(family=base.family, order=base.order, digits=digits)
        if self.poly is not None:
            coeffs = tuple(int(c) for c in str(self.poly).split(","))
            return BetaSpec(poly=coeffs, digits=digits)
        if self.beta is not None:
            return BetaSpec(value=str(self.beta), digits=digits)
        if digits is not None:
            return BetaSpec(digits=digits)
        raise DomainError("no beta given: use --beta, --poly, --family or --digits")

    def validate(self) -> None:
        if not self.tol >= MIN_TOL:
            raise DomainError(f"tolerance must be at least {MIN_TOL:g}")
        if self.depth < 1 or self.depth > singular.MAX_DEPTH:
            raise DomainError(f"depth must lie in [1, {singular.MAX_DEPTH}]")


def load_config(path: str | None) -> dict:
    """Read a JSON config; a missing ``path`` falls back to ``$BETASHIFT_CONFIG``."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DomainError("config must be a JSON object")
    known = {f.name for f in fields(RunConfig)}
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - known
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    for key in ("t_grid", "alpha_grid", "x_grid", "poly"):
        if isinstance(data.get(key), list):
            data[key] = ",".join(str(v) for v in data[key])
    return data


def parse_grid(text: str, lo: float = -math.inf, hi: float = math.inf, name: str = "grid") -> np.ndarray:
    """Parse ``"a,b,c"`` or ``"start:stop:count"`` into a sorted array within ``[lo, hi]``."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"{name}: expected start:stop:count")
        grid = np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
    else:
        grid = np.array([float(v) for v in text.split(",") if v.strip()], dtype=float)
    if grid.size == 0:
        raise DomainError(f"{name} is empty")
    if np.any(np.diff(grid) < 0):
        raise DomainError(f"{name} must be sorted")
    if grid[0] < lo or grid[-1] > hi or not np.all(np.isfinite(grid)):
        raise DomainError(f"{name} must lie in [{lo:g}, {hi:g}]")
    return grid


def _t_grid(cfg: RunConfig, default: str) -> np.ndarray:
    text = cfg.t_grid if cfg.t_grid is not None else (str(cfg.t) if cfg.t is not None else default)
    return parse_grid(text, -spectrum.T_CAP, spectrum.T_CAP, "t-grid")


def _x_grid(cfg: RunConfig) -> np.ndarray:
    return parse_grid(cfg.x_grid or "0:1:101", 0.0, 1.0, "x-grid")


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return "" if v is None else str(v)


def format_csv(header, rows) -> str:
    """CSV text with ``'%.17g'`` floats and ``\\n`` line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    return [first + i * step for i in range(int((hi - first) / step + 1e-9) + 1)]


def svg_plot(xs, ys, xlabel: str, ylabel: str, title: str = "") -> str:
    """One polyline on an 800x600 canvas with ticked axes."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    keep = np.isfinite(xs) & np.isfinite(ys)
    xs, ys = xs[keep], ys[keep]
    width, height = 800, 600
    left, right, top, bottom = 80, 30, 40, 60
    x0, x1 = (xs.min(), xs.max()) if xs.size else (0.0, 1.0)
    y0, y1 = (ys.min(), ys.max()) if ys.size else (0.0, 1.0)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def px(x):
        return left + (x - x0) / (x1 - x0) * (width - left - right)

    def py(y):
        return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
           f'width="{width}" height="{height}" font-family="sans-serif" font-size="12">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" y2="{height - bottom}" stroke="black"/>',
           f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" stroke="black"/>']
    for tx in _nice_ticks(x0, x1):
        x = px(tx)
        out.append(f'<line x1="{x:.2f}" y1="{height - bottom}" x2="{x:.2f}" y2="{height - bottom + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{height - bottom + 20}" text-anchor="middle">{tx:g}</text>')
    for ty in _nice_ticks(y0, y1):
        y = py(ty)
        out.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end">{ty:g}</text>')
    points = " ".join(f"{px(x):.3f},{py(y):.3f}" for x, y in zip(xs, ys))
    out.append(f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{points}"/>')
    out.append(f'<text x="{(left + width - right) / 2}" y="{height - 15}" text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="20" y="{(top + height - bottom) / 2}" text-anchor="middle" '
               f'transform="rotate(-90 20 {(top + height - bottom) / 2})">{ylabel}</text>')
    if title:
        out.append(f'<text x="{width / 2}" y="25" text-anchor="middle" font-size="14">{title}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _emit(cfg: RunConfig, header, rows, stdout) -> None:
    text = format_csv(header, rows)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _emit_svg(cfg: RunConfig, xs, ys, xlabel, ylabel, title) -> None:
    if cfg.svg:
        with open(cfg.svg, "w", encoding="utf-8") as fh:
            fh.write(svg_plot(xs, ys, xlabel, ylabel, title))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_lambda(cfg: RunConfig, stdout) -> int:
    """Columns: t, lambda, pressure, err_bound."""
    ctx = make_context(cfg.beta_spec())
    grid = _t_grid(cfg, "0")
    rows = []
    for t in grid:
        eig = eigen.leading_lambda(ctx, float(t), tol=cfg.tol)
        rows.append((eig.t, eig.lam, eig.log_lam, eig.err_bound))
    _emit(cfg, ("t", "lambda", "pressure", "err_bound"), rows, stdout)
    _emit_svg(cfg, grid, [r[2] for r in rows], "t", "pressure", ctx.spec.label())
    return EXIT_OK


def cmd_dim_sweep(cfg: RunConfig, stdout) -> int:
    """Columns: t, lambda, pressure, alpha, dim; or alpha, t, dim, extrapolated with --alpha-grid."""
    ctx = make_context(cfg.beta_spec())
    if cfg.alpha_grid is not None:
        grid = parse_grid(cfg.alpha_grid, 0.0, 1.0, "alpha-grid")
        points = [spectrum.alpha_dimension(ctx, float(a)) for a in grid]
        rows = [(p.alpha, p.t, p.dim, p.extrapolated) for p in points]
        _emit(cfg, ("alpha", "t", "dim", "extrapolated"), rows, stdout)
        _emit_svg(cfg, grid, [p.dim for p in points], "alpha", "dimension", ctx.spec.label())
        return EXIT_OK
    if cfg.t_grid is None and cfg.t is None:
        grid = spectrum.default_t_grid()
    else:
        grid = _t_grid(cfg, "0")
    points = spectrum.sweep(ctx, grid)
    rows = [(p.t, p.lam, p.pressure, p.alpha, p.dim) for p in points]
    _emit(cfg, ("t", "lambda", "pressure", "alpha", "dim"), rows, stdout)
    _emit_svg(cfg, [p.alpha for p in points], [p.dim for p in points], "alpha", "dimension",
              ctx.spec.label())
    return EXIT_OK


def cmd_distfn(cfg: RunConfig, stdout) -> int:
    """Columns: x, D_t (with --t) or x, F_p (with --p)."""
    ctx = make_context(cfg.beta_spec())
    xs = _x_grid(cfg)
    if (cfg.t is None) == (cfg.p is None):
        raise DomainError("distfn needs exactly one of --t and --p")
    if cfg.p is not None:
        grid = singular.distribution_grid(ctx, xs, p=cfg.p, depth=cfg.depth, tol=cfg.tol)
        name = "F_p"
    else:
        if abs(cfg.t) > spectrum.T_CAP:
            raise RangeError(f"|t| must be at most {spectrum.T_CAP:g}")
        grid = singular.distribution_grid(ctx, xs, t=cfg.t, depth=cfg.depth, tol=cfg.tol)
        name = "D_t"
    _emit(cfg, ("x", name), zip(grid.xs, grid.ys), stdout)
    _emit_svg(cfg, grid.xs, grid.ys, "x", name, f"{ctx.spec.label()} {name}")
    return EXIT_OK


def cmd_takagi(cfg: RunConfig, stdout) -> int:
    """Columns: x, G."""
    ctx = make_context(cfg.beta_spec())
    grid = singular.takagi_grid(ctx, _x_grid(cfg), depth=cfg.depth, tol=cfg.tol)
    _emit(cfg, ("x", "G"), zip(grid.xs, grid.ys), stdout)
    _emit_svg(cfg, grid.xs, grid.ys, "x", "G", ctx.spec.label())
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, stdout) -> int:
    """Pass/fail lines; exit code 1 when any check fails."""
    ctx = make_context(cfg.beta_spec())
    report = oracle.run_oracle_suite(ctx)
    text = "\n".join(report.lines()) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK if report.passed else EXIT_ORACLE_FAILED


def cmd_cbeta(cfg: RunConfig, stdout) -> int:
    """Columns: N, M, lower, upper, exact, numeric_estimate (N empty when all digits are 1)."""
    ctx = make_context(cfg.beta_spec())
    r = spectrum.c_beta_report(ctx)
    row = (r.N, r.M, r.lower, r.upper, math.nan if r.exact is None else r.exact, r.numeric_estimate)
    _emit(cfg, ("N", "M", "lower", "upper", "exact", "numeric_estimate"), [row], stdout)
    return EXIT_OK


def cmd_zeros(cfg: RunConfig, stdout) -> int:
    """Columns: t, mixing_rate, re, im, modulus; one row per zero, a nan row when there are none."""
    ctx = make_context(cfg.beta_spec())
    rows = []
    for t in _t_grid(cfg, "0"):
        t = float(t)
        zs = eigen.subleading_zeros(ctx, t)
        rate = eigen.mixing_rate_bound(ctx, t)
        if len(zs) == 0:
            rows.append((t, rate, math.nan, math.nan, math.nan))
        for z in zs:
            rows.append((t, rate, z.real, z.imag, abs(z)))
    _emit(cfg, ("t", "mixing_rate", "re", "im", "modulus"), rows, stdout)
    return EXIT_OK


COMMANDS = {
    "lambda": (cmd_lambda, "leading eigenvalue and pressure over a t-grid"),
    "dim-sweep": (cmd_dim_sweep, "dimension spectrum over a t-grid or alpha-grid"),
    "distfn": (cmd_distfn, "distribution function D_t or F_p on an x-grid"),
    "takagi": (cmd_takagi, "generalized Takagi function on an x-grid"),
    "oracle": (cmd_oracle, "brute-force and identity checks"),
    "cbeta": (cmd_cbeta, "bounds on the largest digit-1 frequency"),
    "zeros": (cmd_zeros, "subleading zeros of the determinant and mixing rate"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="betashift", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=f"{help_text}. {func.__doc__}")
        p.add_argument("--config", help=f"JSON config file (default ${CONFIG_ENV})")
        p.add_argument("--beta", help="numeric beta in (1, 2]")
        p.add_argument("--poly", help="integer coefficients, highest degree first, e.g. 1,-1,-1")
        p.add_argument("--family", help="dyadic, golden, tribonacci, multinacci:N or parry:M")
        p.add_argument("--digits", help="digits of 1 as PRE(PER), e.g. (10)")
        p.add_argument("--t", type=float, help="single temperature")
        p.add_argument("--t-grid", help="temperatures: a,b,c or start:stop:count "
                       "(write --t-grid=-5:5:11 when the grid starts negative)")
        p.add_argument("--alpha-grid", help="digit frequencies: a,b,c or start:stop:count")
        p.add_argument("--p", type=float, help="parameter p in (0, 1) for F_p")
        p.add_argument("--x-grid", help="points in [0, 1]: a,b,c or start:stop:count")
        p.add_argument("--tol", type=float, help=f"tolerance (>= {MIN_TOL:g})")
        p.add_argument("--depth", type=int, help="digit depth for distribution and Takagi sums")
        p.add_argument("--out", help="CSV output path (default stdout)")
        p.add_argument("--svg", help="SVG output path")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file values, then flags on top."""
    values = load_config(args.config)
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command][0](cfg, stdout)
    except BetaShiftError as exc:
        stderr.write(f"error: {exc}\n")
        return exit_code_for(exc)
    except (ValueError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
