"""Experiment command line.

Subcommands:

* ``weights``  -- print a filter weight table.
* ``sweep``    -- measure filtered truncation errors over a range of N.
* ``rho``      -- tabulate the predicted convergence factor over x.
* ``compare``  -- run several filters at one x side by side.
* ``envelope`` -- refit the envelope of a previously written sweep CSV
  and report the empirical rate against the prediction.

All tabular output is CSV with ``#`` comment lines carrying the config
echo and fit results.  Exit codes: 0 success, 2 configuration error,
3 insufficient data.
"""

from __future__ import annotations

import argparse
import math
import sys

from .catalog import FUNCTION_KEYS, get_function
from .filters import VALID_KINDS, _euler_sigma_table, _euler_mu_row
from .rates import rho_of_x
from .sweeps import (
    ConfigError,
    ExperimentConfig,
    InsufficientDataError,
    compare_filters,
    fit_envelope,
    parse_sweep_csv,
    render_csv,
    rho_curve,
    sweep_csv,
    sweep_errors,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INSUFFICIENT = 3


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_weights(args: argparse.Namespace) -> int:
    if args.filter != "euler":
        raise ConfigError("weight tables are only printed for the euler filter")
    if args.M < 1:
        raise ConfigError("M must be >= 1")
    sigma = _euler_sigma_table(args.M)
    mu = _euler_mu_row(args.M)
    rows = []
    for j in range(args.M + 2):
        rows.append([j, float(sigma[j]), float(mu[j]) if j <= args.M else ""])
    text = render_csv([f"filter=euler M={args.M}"], ["j", "sigma", "mu"], rows)
    _write(text, args.out)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        function_key=args.fn,
        filters=(args.filter,),
        xs=(args.x,),
        n_min=args.n_min,
        n_max=args.n_max,
        n_stride=args.stride,
        p=args.p,
        phi=args.phi,
        saturation_scale=args.saturation_scale,
    )
    traces = sweep_errors(config)
    _write(sweep_csv(config, traces), args.out)
    return EXIT_OK


def _cmd_rho(args: argparse.Namespace) -> int:
    _write(rho_curve(args.fn, args.resolution, p=args.p, phi=args.phi), args.out)
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        function_key=args.fn,
        filters=tuple(args.filters.split(",")),
        xs=(args.x,),
        n_min=args.n_min,
        n_max=args.n_max,
        n_stride=args.stride,
        p=args.p,
        saturation_scale=args.saturation_scale,
    )
    _write(compare_filters(config), args.out)
    return EXIT_OK


def _cmd_envelope(args: argparse.Namespace) -> int:
    with open(getattr(args, "in")) as fh:
        meta, traces = parse_sweep_csv(fh.read())
    if not traces:
        raise InsufficientDataError("no traces found in input")
    fn = get_function(meta.get("fn", "sws"), p=meta.get("p"), phi=meta.get("phi"))
    for trace in traces:
        amplitude, q_hat = fit_envelope(trace)
        line = (
            f"x={trace.x!r} filter={trace.filter_kind} "
            f"A={amplitude!r} q_hat={q_hat!r}"
        )
        sings = fn.series.singularities
        if sings is not None:
            q_pred = rho_of_x(sings, trace.x).q
            gap = abs(q_hat - q_pred) / q_pred if q_pred != 0 else math.inf
            line += f" q_predicted={q_pred!r} rel_gap={gap!r}"
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gibbsaccel",
        description="Accelerated-Fourier-series error experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weights", help="print a filter weight table")
    w.add_argument("--filter", default="euler", choices=VALID_KINDS)
    w.add_argument("--M", type=int, required=True)
    w.add_argument("--out", default=None)
    w.set_defaults(run=_cmd_weights)

    s = sub.add_parser("sweep", help="error sweep over truncation degree")
    s.add_argument("--fn", required=True, choices=FUNCTION_KEYS)
    s.add_argument("--filter", default="euler", choices=VALID_KINDS)
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--stride", type=int, default=1)
    s.add_argument("--p", type=float, default=None)
    s.add_argument("--phi", type=float, default=None)
    s.add_argument("--saturation-scale", type=float, default=100.0)
    s.add_argument("--out", default=None)
    s.set_defaults(run=_cmd_sweep)

    r = sub.add_parser("rho", help="predicted convergence factor over x")
    r.add_argument("--fn", required=True, choices=FUNCTION_KEYS)
    r.add_argument("--resolution", type=int, required=True)
    r.add_argument("--p", type=float, default=None)
    r.add_argument("--phi", type=float, default=None)
    r.add_argument("--out", default=None)
    r.set_defaults(run=_cmd_rho)

    c = sub.add_parser("compare", help="compare filters at one x")
    c.add_argument("--fn", required=True, choices=FUNCTION_KEYS)
    c.add_argument("--x", type=float, required=True)
    c.add_argument("--filters", default="euler,erfclog,hdaf")
    c.add_argument("--n-min", type=int, default=2)
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--stride", type=int, default=1)
    c.add_argument("--p", type=float, default=None)
    c.add_argument("--saturation-scale", type=float, default=100.0)
    c.add_argument("--out", default=None)
    c.set_defaults(run=_cmd_compare)

    e = sub.add_parser("envelope", help="refit the envelope of a sweep CSV")
    e.add_argument("--in", required=True)
    e.set_defaults(run=_cmd_envelope)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (ConfigError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InsufficientDataError as exc:
        print(f"insufficient data: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
