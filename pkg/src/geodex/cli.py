"""geodex command-line driver.

Subcommands: verify, sum, psi, lfun, moment, explore.  Output formats: csv
(RFC 4180, 15 significant digits, header mandatory), json, svg (hand-rolled
polyline plots, no plotting dependency).  Exit codes: 0 pass, 1 assertion
failure, 2 input/data error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import geodesic
from .errors import ConfigError, DataFormatError, GeodexError
from .moment import make_params
from .moment.bounds import bound_suite, regime_envelope
from .moment.m1 import m1_center, m1_geometric
from .spectral import (load_bundled_dataset, load_spectral_data,
                       spectral_exponential_sum)

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_DATA = 2
EXIT_CONFIG = 3


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.15g}{x.imag:+.15g}i"
    if isinstance(x, float):
        return f"{x:.15g}"
    return str(x)


def _emit_rows(header, rows, args):
    if args.format == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        text = out.getvalue()
    elif args.format == "json":
        text = json.dumps({"header": list(header),
                           "rows": [[_fmt(v) for v in r] for r in rows]},
                          indent=1) + "\n"
    elif args.format == "svg":
        text = _svg_plot(header, rows)
    else:
        raise ConfigError(f"unknown format {args.format}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _svg_plot(header, rows, width=720, height=420) -> str:
    """Minimal polyline chart: column 0 on x, up to two numeric series."""
    xs = [float(r[0]) for r in rows]
    series = []
    for col in range(1, min(3, len(rows[0]))):
        try:
            ys = [float(abs(r[col]) if isinstance(r[col], complex) else r[col])
                  for r in rows]
        except (TypeError, ValueError):
            continue
        series.append((header[col], ys))
    if not xs or not series:
        return "<svg xmlns='http://www.w3.org/2000/svg'/>\n"
    x0, x1 = min(xs), max(xs)
    ally = [y for _, ys in series for y in ys]
    y0, y1 = min(ally), max(ally)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    m = 46

    def sx(x):
        return m + (width - 2 * m) * (x - x0) / (x1 - x0)

    def sy(y):
        return height - m - (height - 2 * m) * (y - y0) / (y1 - y0)

    colors = ("#1f6feb", "#d1242f")
    parts = [f"<svg xmlns='http://www.w3.org/2000/svg' width='{width}' height='{height}'>",
             f"<rect width='{width}' height='{height}' fill='white'/>",
             f"<line x1='{m}' y1='{height-m}' x2='{width-m}' y2='{height-m}' stroke='black'/>",
             f"<line x1='{m}' y1='{m}' x2='{m}' y2='{height-m}' stroke='black'/>",
             f"<text x='{width//2}' y='{height-10}' font-size='12'>{header[0]}</text>"]
    for (label, ys), color in zip(series, colors):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f"<polyline points='{pts}' fill='none' stroke='{color}' stroke-width='1.3'/>")
        parts.append(f"<text x='{width-m-150}' y='{m+14*(1+colors.index(color))}' "
                     f"font-size='12' fill='{color}'>{label}</text>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _load_dataset(args):
    path = args.data or os.environ.get("GEODEX_DATA")
    if path:
        return load_spectral_data(path)
    return load_bundled_dataset()


def _parse_grid(spec: str):
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as e:
        raise ConfigError(f"grid spec must be X0:X1:N, got {spec!r}") from e
    if n < 1 or not (b > a):
        raise ConfigError("grid needs X1 > X0 and N >= 1")
    return np.linspace(a, b, n)


def _sum_row(arg):
    X, T, theta, ts = arg
    logX = math.log(X)
    acc = complex(sum(np.exp(1j * np.asarray(ts) * logX)))
    k = geodesic.kappa(X)
    env = regime_envelope(X, T, theta) * max(math.log(T), 1.2) ** 2
    return (X, T, acc.real, acc.imag, abs(acc), k, env)


def cmd_sum(args) -> int:
    ds = _load_dataset(args)
    T = args.T
    if T > ds.t_max:
        print(f"error: T = {T} exceeds data coverage {ds.t_max:.3f}", file=sys.stderr)
        return EXIT_DATA
    ts = [f.t for f in ds.up_to(T)]
    grid = _parse_grid(args.grid)
    work = [(float(X), T, args.theta, ts) for X in grid]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as ex:
            rows = list(ex.map(_sum_row, work))
    else:
        rows = [_sum_row(w) for w in work]
    header = ("X", "T", "re_S", "im_S", "abs_S", "kappa", "regime_envelope")
    _emit_rows(header, rows, args)
    return EXIT_OK


def cmd_psi(args) -> int:
    ds = _load_dataset(args)
    grid = _parse_grid(args.grid)
    theta = args.theta
    rows = []
    for X in grid:
        X = float(X)
        g = geodesic.psi_gamma(X)
        resid = geodesic.explicit_formula_residual(X, args.T, ds)
        bound = X ** (2.0 / 3.0 + theta / 6.0) * math.log(X) ** 3
        rows.append((X, g.psi, X, resid, bound))
    header = ("X", "psi_gamma", "main_term", "explicit_formula_residual",
              "bound_X^(2/3+theta/6)log^3X")
    _emit_rows(header, rows, args)
    return EXIT_OK


def cmd_lfun(args) -> int:
    from .arith import zagier_l
    s = complex(args.re_s, args.im_s)
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        if n % 4 in (2, 3):
            val = 0j
        else:
            val = zagier_l(n, s).value
        rows.append((n, val.real, val.imag, abs(val)))
    header = ("n", "re_L", "im_L", "abs_L")
    _emit_rows(header, rows, args)
    return EXIT_OK


def cmd_moment(args) -> int:
    ds = _load_dataset(args)
    p = make_params(args.X, args.T)
    rows = []
    if abs(args.re_s - 0.5) < 1e-9 and args.im_s == 0.0:
        c = m1_center(p)
        rows.append(("s=1/2 closed form", c.value, c.err_bound, "", "", "", ""))
        header = ("row", "value", "err_bound", "sigma", "sigma_b",
                  "continuous", "discrepancy")
    else:
        s = complex(args.re_s, args.im_s)
        rep = m1_geometric(s, p)
        disc = ""
        lhs = ""
        if s.real > 1.5:
            from .moment.m1 import m1_spectral
            sv = m1_spectral(s, p, ds)
            lhs = sv.value
            disc = abs(sv.value - rep.geometric)
        rows.append((f"s={s}", rep.geometric, rep.budget, rep.sigma.value,
                     rep.sigma_b.value, rep.continuous.value, disc))
        if lhs != "":
            rows.append(("spectral side", lhs, sv.err_bound, "", "", "", ""))
        header = ("row", "value", "err_bound", "sigma", "sigma_b",
                  "continuous", "discrepancy")
    _emit_rows(header, rows, args)
    return EXIT_OK


def cmd_explore(args) -> int:
    ds = _load_dataset(args)
    rows = []
    for n in range(3, 9):
        zn = geodesic.trace_norm(n)
        xs = np.linspace(0.9 * zn, 1.1 * zn, 41)
        vals = [abs(spectral_exponential_sum(ds, args.T, float(X))) for X in xs]
        imax = int(np.argmax(vals))
        rows.append((n, zn, xs[imax], vals[imax], abs(xs[imax] - zn) <= (xs[1] - xs[0]) + 1e-9))
    header = ("n", "Z_n", "argmax_X", "peak_abs_S", "peak_within_one_step")
    _emit_rows(header, rows, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Run the library invariant suites; exit 0 iff everything passes."""
    results = []

    def check(name, fn):
        if args.suite != "all" and args.suite not in name:
            return
        try:
            fn()
            results.append((name, "pass", ""))
        except AssertionError as e:
            results.append((name, "FAIL", str(e)))
        except GeodexError as e:
            results.append((name, "ERROR", f"{type(e).__name__}: {e}"))

    def geodesic_suite():
        for t in range(3, 30):
            zt = geodesic.trace_norm(t)
            le = geodesic.log_eps(t * t - 4)
            assert abs(math.exp(2 * le) - zt) < 1e-11 * zt, f"Z_{t} mismatch"
        g = geodesic.psi_gamma(10.0)
        assert abs(g.psi - 2 * math.log((3 + math.sqrt(5)) / 2)) < 1e-12

    def arith_suite():
        from .arith import kloosterman, weil_bound
        for c in (7, 36, 97, 360):
            for (m, n) in ((1, 1), (1, 4), (2, 3)):
                assert abs(kloosterman(m, n, c)) <= weil_bound(m, n, c) + 1e-9

    def transform_suite():
        p = make_params(10.0, 5.0)
        from .moment.m1 import cosh_sum_identity_residual
        assert cosh_sum_identity_residual(p) < 1e-12

    def data_suite():
        ds = _load_dataset(args)
        assert len(ds.forms) > 10, "dataset too small"

    check("geodesic", geodesic_suite)
    check("arith", arith_suite)
    check("moment", transform_suite)
    check("data", data_suite)

    report = {"suites": [{"name": n, "status": s, "detail": d}
                         for (n, s, d) in results]}
    text = json.dumps(report, indent=1) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if any(s == "ERROR" for _, s, _ in results):
        return EXIT_DATA
    return EXIT_OK if all(s == "pass" for _, s, _ in results) else EXIT_ASSERT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="geodex",
        description="Spectral exponential sums, prime geodesics and "
                    "symmetric-square moment identities at desk scale.")
    ap.add_argument("--data", default=None, help="spectral data file "
                    "(default: $GEODEX_DATA or the bundled dataset)")
    ap.add_argument("--theta", type=float, default=1.0 / 6.0,
                    help="subconvexity exponent (default 1/6)")
    ap.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    ap.add_argument("--out", default=None, help="output file (default stdout)")
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run invariant suites")
    sp.add_argument("--suite", default="all")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("sum", help="spectral exponential sum over an X grid")
    sp.add_argument("--grid", required=True, help="X0:X1:N")
    sp.add_argument("--T", type=float, required=True)
    sp.set_defaults(fn=cmd_sum)

    sp = sub.add_parser("psi", help="prime-geodesic count and residuals")
    sp.add_argument("--grid", required=True, help="X0:X1:N")
    sp.add_argument("--T", type=float, default=15.0)
    sp.set_defaults(fn=cmd_psi)

    sp = sub.add_parser("lfun", help="generalized Dirichlet L values")
    sp.add_argument("--n-min", type=int, default=-8)
    sp.add_argument("--n-max", type=int, default=24)
    sp.add_argument("--re-s", type=float, default=2.0)
    sp.add_argument("--im-s", type=float, default=0.0)
    sp.set_defaults(fn=cmd_lfun)

    sp = sub.add_parser("moment", help="first-moment identity report")
    sp.add_argument("--X", type=float, default=10.0)
    sp.add_argument("--T", type=float, default=1.0)
    sp.add_argument("--re-s", type=float, default=2.0)
    sp.add_argument("--im-s", type=float, default=0.0)
    sp.set_defaults(fn=cmd_moment)

    sp = sub.add_parser("explore", help="kappa-peak scan near the norms Z_n")
    sp.add_argument("--T", type=float, default=25.0)
    sp.set_defaults(fn=cmd_explore)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.theta <= 0 or args.theta > 0.25:
            raise ConfigError("theta must lie in (0, 1/4]")
        return args.fn(args)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataFormatError, FileNotFoundError, OSError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except GeodexError as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
