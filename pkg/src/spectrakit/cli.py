"""Command-line pipeline: gen / survival / tikhonov / comb."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

import numpy as np

from . import delta_comb, svgplot, synthetic, tikhonov
from .durations import (default_tau_grid, empirical_survival, load_durations,
                        write_survival_csv)
from .kernel import assemble_kernel


def _atomic_write(path: str, text: str) -> None:
    # Write to a temp file in the target directory, then rename.
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class _StringSink:
    def __init__(self):
        self.parts = []

    def write(self, text):
        self.parts.append(text)

    def getvalue(self):
        return "".join(self.parts)


def _csv_text(writer, *args) -> str:
    sink = _StringSink()
    writer(*args, sink)
    return sink.getvalue()


def parse_value_list(text: str) -> np.ndarray:
    """Parse 'lo:hi:count[,log|lin]' shorthand or an explicit comma list."""
    text = text.strip()
    if ":" in text:
        spec, _, scale = text.partition(",")
        scale = scale or "log"
        fields = spec.split(":")
        if len(fields) != 3:
            raise ValueError(f"range must be lo:hi:count, got {spec!r}")
        lo, hi, count = float(fields[0]), float(fields[1]), int(fields[2])
        if count < 1:
            raise ValueError("range count must be >= 1")
        if scale == "log":
            if lo <= 0 or hi <= 0:
                raise ValueError("log range endpoints must be > 0")
            return np.geomspace(lo, hi, count)
        if scale == "lin":
            return np.linspace(lo, hi, count)
        raise ValueError(f"unknown range scale {scale!r}")
    values = np.array([float(v) for v in text.split(",") if v.strip()])
    if values.size == 0:
        raise ValueError("empty value list")
    return values


def parse_mixture(text: str) -> synthetic.MixtureSpec:
    """Parse 'w1:rate1,w2:rate2,...' into a MixtureSpec."""
    weights, rates = [], []
    for chunk in text.split(","):
        w, _, lam = chunk.partition(":")
        if not lam:
            raise ValueError(f"mixture component must be weight:rate, got {chunk!r}")
        weights.append(float(w))
        rates.append(float(lam))
    return synthetic.MixtureSpec(weights=weights, rates=rates)


def _load_series(args):
    with open(args.input, encoding="utf-8") as fh:
        return load_durations(fh, mode=args.mode,
                              max_duration=getattr(args, "max_duration", None))


def _echo(args, pairs) -> None:
    print(f"# spectrakit {args.command}")
    for key, value in pairs:
        print(f"# {key} = {value}")


def cmd_gen(args) -> None:
    modes = [args.exp is not None, args.mixture is not None, args.ml]
    if sum(modes) != 1:
        raise ValueError("choose exactly one of --exp, --mixture, --ml")
    if args.n < 1:
        raise ValueError(f"--n must be >= 1, got {args.n}")
    if args.exp is not None:
        spec = synthetic.MixtureSpec(weights=[1.0], rates=[args.exp])
        series = synthetic.gen_mixture(spec, args.n, args.seed)
        header = f"# exponential rate={args.exp:g} n={args.n} seed={args.seed}"
    elif args.mixture is not None:
        spec = parse_mixture(args.mixture)
        series = synthetic.gen_mixture(spec, args.n, args.seed)
        header = f"# mixture {args.mixture} n={args.n} seed={args.seed}"
    else:
        params = synthetic.MlParams(beta=args.beta, gamma=args.gamma)
        series = synthetic.gen_mittag_leffler(params, args.n, args.seed)
        header = (f"# mittag-leffler beta={args.beta:g} gamma={args.gamma:g} "
                  f"n={args.n} seed={args.seed}")
    lines = [header] + [repr(float(v)) for v in series.values]
    _atomic_write(args.out, "\n".join(lines) + "\n")
    _echo(args, [("out", args.out), ("n", series.n), ("seed", args.seed)])


def cmd_survival(args) -> None:
    series = _load_series(args)
    taus = (parse_value_list(args.grid) if args.grid
            else default_tau_grid(series))
    curve = empirical_survival(series, taus)
    _atomic_write(args.out, _csv_text(write_survival_csv, curve))
    _echo(args, [("input", args.input), ("n", series.n),
                 ("mean", f"{series.mean:.6g}"), ("tau_max", f"{series.max:g}"),
                 ("dropped", series.dropped), ("out", args.out)])
    if args.plot:
        reference = np.exp(-taus / series.mean)
        svg = svgplot.line_plot_svg(
            [(taus, curve.psi, "empirical"),
             (taus, reference, "exponential 1/mean")],
            title="Survival function", xlabel="tau [s]", ylabel="Psi",
            log_y=True)
        _atomic_write(args.plot, svg)


def cmd_tikhonov(args) -> None:
    series = _load_series(args)
    if args.auto_h:
        results, best = delta_comb.sweep_delta_t(
            series, delta_comb.default_delta_t_grid(series),
            taus=np.arange(1.0, args.n + 1))
        h = delta_comb.estimate_h(results[best][0], args.n)
    else:
        h = args.h
    K = assemble_kernel(h, args.n)
    curve = empirical_survival(series, K.taus)
    mus = parse_value_list(args.mu) if args.mu else tikhonov.default_mu_grid()
    solutions, best = tikhonov.sweep_mu(K, curve, mus)
    sol = solutions[best]

    _atomic_write(args.out_prefix + "_sweep.csv",
                  _csv_text(tikhonov.write_mu_sweep_csv, solutions))
    _atomic_write(args.out_prefix + "_spectrum.csv",
                  _csv_text(tikhonov.write_spectrum_csv, sol.spectrum))
    fit_rows = ["tau,psi_empirical,psi_rebuilt"]
    fit_rows += [f"{t:g},{pe:.6f},{pr:.6f}" for t, pe, pr
                 in zip(K.taus, curve.psi, sol.rebuilt.psi)]
    _atomic_write(args.out_prefix + "_survival.csv", "\n".join(fit_rows) + "\n")
    _echo(args, [("input", args.input), ("h", f"{h:g}"), ("n", args.n),
                 ("mu_count", len(solutions)), ("best_mu", f"{sol.mu:g}"),
                 ("ks_statistic", f"{sol.ks.statistic:.6g}"),
                 ("ks_pvalue", f"{sol.ks.p_value:.6g}"),
                 ("total_mass", f"{sol.spectrum.total_mass:.6g}"),
                 ("neg_mass", f"{sol.spectrum.negative_mass:.6g}")])
    if args.plot:
        good = [s for s in solutions if s is not None]
        svg = svgplot.line_plot_svg(
            [(np.array([s.mu for s in good]),
              np.array([s.ks.p_value for s in good]), "KS probability")],
            title="KS probability vs mu", xlabel="mu", ylabel="p",
            log_x=True)
        _atomic_write(args.out_prefix + "_ks_vs_mu.svg", svg)
        svg = svgplot.line_plot_svg(
            [(K.taus, curve.psi, "empirical"),
             (K.taus, sol.rebuilt.psi, f"rebuilt mu={sol.mu:.3g}")],
            title="Rebuilt survival function", xlabel="tau [s]", ylabel="Psi",
            log_y=True)
        _atomic_write(args.out_prefix + "_fit.svg", svg)


def cmd_comb(args) -> None:
    series = _load_series(args)
    dts = (parse_value_list(args.dt) if args.dt
           else delta_comb.default_delta_t_grid(series))
    if np.any(dts <= 0):
        raise ValueError("delta_t values must be > 0")
    taus = (parse_value_list(args.grid) if args.grid
            else default_tau_grid(series))
    results, best = delta_comb.sweep_delta_t(series, dts, taus=taus)
    comb, report = results[best]

    _atomic_write(args.out_prefix + "_sweep.csv",
                  _csv_text(delta_comb.write_delta_t_sweep_csv, results))
    _atomic_write(args.out_prefix + "_comb.csv",
                  _csv_text(delta_comb.write_comb_csv, comb))
    _echo(args, [("input", args.input), ("dt_count", len(results)),
                 ("best_delta_t", f"{comb.delta_t:g}"), ("m", comb.m),
                 ("ks_statistic", f"{report.statistic:.6g}"),
                 ("ks_pvalue", f"{report.p_value:.6g}")])
    if args.plot:
        curve = empirical_survival(series, taus)
        rebuilt = delta_comb.comb_survival(comb, taus)
        svg = svgplot.line_plot_svg(
            [(np.array([c.delta_t for c, _ in results]),
              np.array([r.p_value for _, r in results]), "KS probability")],
            title="KS probability vs delta_t", xlabel="delta_t [s]",
            ylabel="p", log_x=True)
        _atomic_write(args.out_prefix + "_ks_vs_dt.svg", svg)
        svg = svgplot.line_plot_svg(
            [(taus, curve.psi, "empirical"),
             (taus, rebuilt.psi, f"comb dT={comb.delta_t:.3g}")],
            title="Delta-comb survival function", xlabel="tau [s]",
            ylabel="Psi", log_y=True)
        _atomic_write(args.out_prefix + "_fit.svg", svg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectrakit",
        description="Activity-spectrum estimation from waiting-time data")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate synthetic duration data")
    p.add_argument("--exp", type=float, metavar="RATE",
                   help="single exponential with this rate [1/s]")
    p.add_argument("--mixture", metavar="W:RATE,...",
                   help="finite exponential mixture, e.g. 0.5:1,0.5:3")
    p.add_argument("--ml", action="store_true",
                   help="Mittag-Leffler waiting times")
    p.add_argument("--beta", type=float, default=0.95)
    p.add_argument("--gamma", type=float, default=8.85)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_gen)

    for name, func in (("survival", cmd_survival),):
        p = sub.add_parser(name, help="empirical survival function CSV")
        p.add_argument("--input", required=True)
        p.add_argument("--mode", choices=["durations", "timestamps"],
                       default="durations")
        p.add_argument("--max-duration", type=float, default=None)
        p.add_argument("--grid", help="tau grid as list or lo:hi:count[,log|lin]")
        p.add_argument("-o", "--out", required=True)
        p.add_argument("--plot", metavar="SVG")
        p.set_defaults(func=func)

    p = sub.add_parser("tikhonov", help="regularized spectrum inversion")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=["durations", "timestamps"],
                   default="durations")
    p.add_argument("--max-duration", type=float, default=None)
    p.add_argument("--h", type=float, default=0.0015,
                   help="lambda grid spacing [1/s]")
    p.add_argument("--n", type=int, default=196, help="kernel grid size")
    p.add_argument("--auto-h", action="store_true",
                   help="estimate h from a delta-comb pre-analysis")
    p.add_argument("--mu", help="mu list or lo:hi:count[,log|lin]")
    p.add_argument("-o", "--out-prefix", required=True)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_tikhonov)

    p = sub.add_parser("comb", help="delta-comb spectrum estimation")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=["durations", "timestamps"],
                   default="durations")
    p.add_argument("--max-duration", type=float, default=None)
    p.add_argument("--dt", help="delta_t list or lo:hi:count[,log|lin]")
    p.add_argument("--grid", help="tau grid for the KS comparison")
    p.add_argument("-o", "--out-prefix", required=True)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_comb)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "h", None) is not None and args.command == "tikhonov":
        if not args.auto_h and args.h <= 0:
            print(f"error: --h must be > 0, got {args.h:g}", file=sys.stderr)
            return 1
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
