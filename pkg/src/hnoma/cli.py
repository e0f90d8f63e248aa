"""Command-line entry point: ``hnoma {analytic,simulate,sweep,figure}``."""
from __future__ import annotations

import argparse
import dataclasses
import sys

from . import analytic, asymptotic, montecarlo
from .params import NumericDomainError, ParameterError, SystemParams
from .rates import HNOMA_SCHEMES
from .special import QuadratureSpec
from .sweep import (
    PRESET_NAMES,
    ConfigError,
    emit,
    figure_preset,
    load_config,
    parse_snr_range,
    run_sweep,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _betas(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(b) for b in text.split(",") if b.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad beta list {text!r}") from None


def _snr(text: str) -> tuple[float, ...]:
    try:
        return parse_snr_range(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_common(sp: argparse.ArgumentParser, point: bool) -> None:
    if point:
        sp.add_argument("--rm", type=float, required=True, help="legacy target rate in BPCU")
        sp.add_argument("--eta", type=float, required=True, help="rho_n / rho_m")
        sp.add_argument("--beta", type=_betas, required=True, help="v[,v...] in (0, 1/2)")
        sp.add_argument("--snr-db", type=_snr, required=True, help="value, list, or start:stop:step")
    else:
        sp.add_argument("--rm", type=float)
        sp.add_argument("--eta", type=float)
        sp.add_argument("--beta", type=_betas)
        sp.add_argument("--snr-db", type=_snr)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--nc", type=int, help="Gauss-Chebyshev nodes")
    sp.add_argument("--workers", type=int, default=1, help="threads for Monte Carlo chunks")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hnoma",
        description="Underperformance probabilities of FSIC, HSIC-NPA and HSIC-PA hybrid NOMA.",
        epilog="Monte Carlo probabilities below about 10/N are unreliable; such rows carry "
        "flag_rare=true.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("analytic", help="exact and high-SNR values at given points"), True)
    _add_common(sub.add_parser("simulate", help="Monte Carlo estimates at given points"), True)
    sw = sub.add_parser("sweep", help="config-driven sweep")
    sw.add_argument("config", help="YAML config file")
    _add_common(sw, False)
    fig = sub.add_parser("figure", help="reproduce a figure configuration")
    fig.add_argument("name", help=f"one of {', '.join(PRESET_NAMES)}")
    _add_common(fig, False)
    return parser


def _override(cfg, args):
    changes = {}
    for attr, key in (
        ("rm", "r_m"), ("eta", "eta"), ("beta", "beta_list"), ("snr_db", "snr_db_list"),
        ("samples", "n_samples"), ("seed", "seed"), ("nc", "n_c"),
    ):
        value = getattr(args, attr)
        if value is not None:
            changes[key] = value
    return dataclasses.replace(cfg, **changes) if changes else cfg


def _write(text_rows, header, fmt, out):
    import csv
    import io
    import json

    if fmt == "json":
        text = json.dumps([dict(zip(header, r)) for r in text_rows], indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in text_rows:
            w.writerow(f"{v:.8e}" if isinstance(v, float) else v for v in r)
        text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _points(args):
    for snr in args.snr_db:
        for beta in args.beta:
            yield snr, beta, SystemParams.from_snr_db(snr, args.eta, beta, args.rm)


def cmd_analytic(args) -> None:
    q = QuadratureSpec(args.nc or 100)
    header = ("snr_db", "beta", "eta", "rm_bpcu", "scheme", "p_exact", "p_asymptotic", "floor")
    rows = []
    for snr, beta, p in _points(args):
        fl = asymptotic.floors(p)
        floor = {"FSIC": fl.fsic_floor, "HSIC_NPA": fl.npa_floor, "HSIC_PA": fl.pa_floor}
        for s in HNOMA_SCHEMES:
            rows.append((snr, beta, args.eta, args.rm, s.value, analytic.exact(p, s, q),
                         asymptotic.asymptotic(p, s), floor[s.value]))
    _write(rows, header, args.format, args.out)


def cmd_simulate(args) -> None:
    n = args.samples or 1_000_000
    seed = 1 if args.seed is None else args.seed
    header = ("snr_db", "beta", "eta", "rm_bpcu", "scheme", "p_mc", "mc_stderr", "samples",
              "flag_rare", "mean_gamma", "mean_pa_energy")
    rows = []
    for snr, beta, p in _points(args):
        rep = montecarlo.estimate(p, n, seed, args.workers)
        for s in HNOMA_SCHEMES:
            e = rep.for_scheme(s)
            rows.append((snr, beta, args.eta, args.rm, s.value, e.p_hat, e.stderr, e.samples,
                         "true" if e.rare else "false", rep.mean_gamma, rep.mean_pa_energy))
    _write(rows, header, args.format, args.out)


def cmd_sweep(args, cfg) -> None:
    rows = run_sweep(_override(cfg, args), workers=args.workers)
    text = emit(rows, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        if args.command == "analytic":
            cmd_analytic(args)
        elif args.command == "simulate":
            cmd_simulate(args)
        elif args.command == "sweep":
            cmd_sweep(args, load_config(args.config))
        else:
            cmd_sweep(args, figure_preset(args.name))
    except (ConfigError, ParameterError, OSError) as exc:
        print(f"hnoma: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericDomainError, ZeroDivisionError, OverflowError) as exc:
        print(f"hnoma: numeric domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
