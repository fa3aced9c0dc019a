"""Command line entry point: coefficients, curves, verification reports and figure data."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from .convolution import build_conv_spline
from .series import TruncationPolicy, dft_coeffs, eval_series_uniform, make_grid, uniform_points
from .splines import BSplineVariant, KernelVariant, build_bspline, build_kernel, build_spline
from .verify import SUITES, verify_identities

EXAMPLE_VALUES = (2.0, 1.0, 3.0, 2.0, 4.0, 1.0, 3.0, 1.0, 3.0)
DEFAULT_N = 9
# multiple of 9 so every node of the default grid is an output row
DEFAULT_SAMPLES = 576
DEFAULT_M_MAX = 2048


class ConfigError(ValueError):
    """Invalid command line configuration; the message names the offending flag."""


def _parse_values(text):
    if text is None:
        return None
    try:
        return [float(v) for v in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ConfigError(f"--values: cannot parse {text!r} as numbers") from exc


def _config(args):
    """Validate the shared flags and return ``(grid, values, coeffs, trunc)``."""
    values = _parse_values(args.values)
    N = args.n
    if values is None:
        if N != DEFAULT_N:
            raise ConfigError(f"--values: required when --n is not {DEFAULT_N}")
        values = list(EXAMPLE_VALUES)
    if N < 3 or N % 2 == 0:
        raise ConfigError(f"--n: grid size must be odd and >= 3, got {N}")
    if len(values) != N:
        raise ConfigError(f"--values: expected {N} values for --n {N}, got {len(values)}")
    if args.m_max < 1:
        raise ConfigError(f"--m-max: must be >= 1, got {args.m_max}")
    grid = make_grid(N)
    return grid, np.array(values), dft_coeffs(grid, values), TruncationPolicy(args.m_max)


def _check_samples(args):
    if args.samples < 1:
        raise ConfigError(f"--samples: must be >= 1, got {args.samples}")


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    return open(p, "w", newline=""), True


def write_text(path, text: str):
    fh, close = _open_out(path)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()


def curve_text(series, count: int, fmt: str = "csv") -> str:
    """Tabulate ``series`` on ``count`` uniform points of [0, 2 pi)."""
    ts = uniform_points(count)
    vals = eval_series_uniform(series, count)
    if fmt == "json":
        return json.dumps({"t": ts.tolist(), "value": vals.tolist()}) + "\n"
    rows = ["t,value"] + [f"{t:.17g},{v:.17g}" for t, v in zip(ts, vals)]
    return "\n".join(rows) + "\n"


def coeffs_text(coeffs, fmt: str = "json") -> str:
    if fmt == "csv":
        rows = ["k,a,b", f"0,{coeffs.a0:.17g},0"]
        rows += [f"{k},{a:.17g},{b:.17g}" for k, (a, b) in enumerate(zip(coeffs.a, coeffs.b), start=1)]
        return "\n".join(rows) + "\n"
    return json.dumps({"a0": coeffs.a0, "a": coeffs.a.tolist(), "b": coeffs.b.tolist()}, indent=2) + "\n"


def _choice(enum_cls, value, flag):
    try:
        return enum_cls(value)
    except ValueError:
        names = ", ".join(e.value for e in enum_cls)
        raise ConfigError(f"{flag}: expected one of {names}, got {value!r}") from None


def cmd_coeffs(args):
    _, _, coeffs, _ = _config(args)
    write_text(args.out, coeffs_text(coeffs, args.format or "json"))
    return 0


def _spline_series(args):
    grid, _, coeffs, trunc = _config(args)
    if args.r < 0:
        raise ConfigError(f"--r: must be >= 0, got {args.r}")
    return build_spline(coeffs, args.r, grid, trunc, allow_conditional=True)


def _bspline_series(args):
    grid, _, _, trunc = _config(args)
    if args.r < 0:
        raise ConfigError(f"--r: must be >= 0, got {args.r}")
    variant = _choice(BSplineVariant, args.variant or "br", "--variant")
    if args.starred:
        variant = BSplineVariant.BR_STAR
    return build_bspline(variant, args.r, grid, trunc)


def _kernel_series(args):
    grid, _, coeffs, trunc = _config(args)
    variant = _choice(KernelVariant, args.variant or "kr0", "--variant")
    if args.starred and not variant.starred:
        variant = KernelVariant(variant.value + "_star")
    if args.j < 1:
        raise ConfigError(f"--j: must be >= 1, got {args.j}")
    return build_kernel(variant, args.j, coeffs, grid, trunc)


def _convolve_series(args):
    grid, _, coeffs, trunc = _config(args)
    parity = args.variant or "even"
    if parity not in ("even", "odd"):
        raise ConfigError(f"--variant: expected even or odd, got {parity!r}")
    if args.j < 1:
        raise ConfigError(f"--j: must be >= 1, got {args.j}")
    return build_conv_spline(parity, args.j, args.starred, coeffs, grid, trunc)


_CURVES = {
    "curve": _spline_series,
    "bspline": _bspline_series,
    "kernel": _kernel_series,
    "convolve": _convolve_series,
}


def cmd_curve(args):
    _check_samples(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        series = _CURVES[args.command](args)
    write_text(args.out, curve_text(series, args.samples, args.format or "csv"))
    return 0


def cmd_verify(args):
    grid, values, coeffs, trunc = _config(args)
    suites = "all" if args.suite in (None, "all") else [s.strip() for s in args.suite.split(",") if s.strip()]
    bad = set([] if suites == "all" else suites) - set(SUITES)
    if bad:
        raise ConfigError(f"--suite: unknown suite(s) {', '.join(sorted(bad))}; choose from {', '.join(SUITES)}")
    report = verify_identities(coeffs, grid, trunc, suites, samples=values, h_scale=1.0 + args.perturb_h)
    write_text(args.out, report.to_json(indent=2) + "\n")
    for line in report.lines():
        print(line, file=sys.stderr)
    return 0 if report.passed else 1


def figure_series(grid, coeffs, trunc):
    """Name -> series for every curve shown in the six figures."""
    out = {}
    for r in (0, 1, 2):
        out[f"fig1_BR_r{r}"] = build_bspline(BSplineVariant.BR, r, grid, trunc)
    for j in (1, 2, 3):
        out[f"fig2_KR0_j{j}"] = build_kernel(KernelVariant.KR0, j, coeffs, grid, trunc)
    for j in (1, 2, 3):
        out[f"fig3_KR1_j{j}"] = build_kernel(KernelVariant.KR1, j, coeffs, grid, trunc)
    for j in (1, 2, 3):
        out[f"fig4_St0_order{2 * j}"] = build_conv_spline("even", j, False, coeffs, grid, trunc)
        out[f"fig4_St1_order{2 * j - 1}"] = build_conv_spline("odd", j, False, coeffs, grid, trunc)
    for r in (0, 1, 2):
        out[f"fig5_BRstar_r{r}"] = build_bspline(BSplineVariant.BR_STAR, r, grid, trunc)
    out["fig6_KR0star"] = build_kernel(KernelVariant.KR0_STAR, 1, coeffs, grid, trunc)
    out["fig6_KR1star"] = build_kernel(KernelVariant.KR1_STAR, 1, coeffs, grid, trunc)
    return out


def cmd_figures(args):
    grid, _, coeffs, trunc = _config(args)
    _check_samples(args)
    outdir = Path(args.out or "figures")
    outdir.mkdir(parents=True, exist_ok=True)
    fmt = args.format or "csv"
    for name, series in figure_series(grid, coeffs, trunc).items():
        path = outdir / f"{name}.{fmt}"
        write_text(path, curve_text(series, args.samples, fmt))
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=DEFAULT_N, help="odd number of grid nodes (default 9)")
    common.add_argument("--values", help="comma separated node values (default: the 9-point example set)")
    common.add_argument("--m-max", type=int, default=DEFAULT_M_MAX, help="alias sum cutoff")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="output points on [0, 2pi)")
    common.add_argument("--out", help="output file (directory for figures); '-' or omitted for stdout")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--r", type=int, default=3, help="spline / B-spline order")
    common.add_argument("--j", type=int, default=1, help="kernel / convolution index")
    common.add_argument("--variant", help="br|br_star, kr0|kr1|kr0_star|kr1_star, or even|odd")
    common.add_argument("--starred", action="store_true", help="use the starred factorisation")

    parser = argparse.ArgumentParser(prog="trigspline", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("coeffs", parents=[common], help="discrete Fourier coefficients as JSON")
    sub.add_parser("curve", parents=[common], help="interpolating spline St(r, t)")
    sub.add_parser("bspline", parents=[common], help="B-spline BR(r, t) or BR*(r, t)")
    sub.add_parser("kernel", parents=[common], help="Riemann kernel")
    sub.add_parser("convolve", parents=[common], help="kernel-times-B-spline interpolating spline")
    v = sub.add_parser("verify", parents=[common], help="run identity checks, JSON report")
    v.add_argument("--suite", default="all", help=f"comma separated subset of: {', '.join(SUITES)}")
    v.add_argument("--perturb-h", type=float, default=0.0,
                   help="debug: scale interpolation multipliers by (1 + value)")
    sub.add_parser("figures", parents=[common], help="CSV data for figures 1-6")
    return parser


_COMMANDS = {
    "coeffs": cmd_coeffs,
    "curve": cmd_curve,
    "bspline": cmd_curve,
    "kernel": cmd_curve,
    "convolve": cmd_curve,
    "verify": cmd_verify,
    "figures": cmd_figures,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        parser.error(str(exc))
    except OSError as exc:
        print(f"trigspline: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
