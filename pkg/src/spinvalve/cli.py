"""Command-line front end.

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.
"""

import argparse
import sys

from .config import KNOWN_KEYS, Mode, build_spec, parse_pairs
from .errors import ConfigError
from .sweep import PointFailure, render, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# flag dest -> config key
_VALUE_FLAGS = {
    "t": "t",
    "omega": "omega",
    "B": "B",
    "alpha": "alpha",
    "b": "b",
    "nL": "nL",
    "nR": "nR",
    "pL": "pL",
    "pR": "pR",
    "xi": "xi",
    "qubit": "qubit",
    "aux": "aux",
    "axis_var": "axis.var",
    "axis_min": "axis.min",
    "axis_max": "axis.max",
    "axis_points": "axis.points",
    "axis_scale": "axis.scale",
    "output": "output.path",
    "format": "output.format",
}
_ORACLE_FLAGS = {
    "seed": "oracle.seed",
    "n_per_side": "oracle.n",
    "dt": "oracle.dt",
    "t_max": "oracle.t_max",
    "samples": "oracle.samples",
    "window_start": "oracle.window_start",
    "window_end": "oracle.window_end",
}
assert set(_VALUE_FLAGS.values()) | set(_ORACLE_FLAGS.values()) <= KNOWN_KEYS


def _add_common(p):
    p.add_argument("--config", help="key = value configuration file")
    g = p.add_argument_group("model parameters (override the config file)")
    for name in ("t", "omega", "B", "alpha", "b", "nL", "nR", "pL", "pR"):
        g.add_argument(f"--{name}", dest=name)
    g.add_argument("--xi", help="spin|fermion")
    g.add_argument("--qubit", help="up|down")
    g.add_argument("--aux", help="up|down")
    a = p.add_argument_group("sweep axis")
    a.add_argument("--axis-var", dest="axis_var")
    a.add_argument("--axis-min", dest="axis_min")
    a.add_argument("--axis-max", dest="axis_max")
    a.add_argument("--axis-points", dest="axis_points")
    a.add_argument("--axis-scale", dest="axis_scale", help="linear|log")
    p.add_argument("--output", help="output file (default: standard output)")
    p.add_argument("--format", help="csv|json")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweep points")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinvalve",
        description="Spin currents and measurement contrast of a two-site nuclear spin valve.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for mode in Mode:
        p = sub.add_parser(mode.value, allow_abbrev=False)
        _add_common(p)
        if mode is Mode.ORACLE:
            o = p.add_argument_group("exact-chain oracle")
            o.add_argument("--seed", help="RNG seed (unsigned 64-bit)")
            o.add_argument("--n-per-side", dest="n_per_side")
            o.add_argument("--dt", dest="dt")
            o.add_argument("--t-max", dest="t_max")
            o.add_argument("--samples")
            o.add_argument("--window-start", dest="window_start")
            o.add_argument("--window-end", dest="window_end")
    return parser


def spec_from_args(args):
    pairs = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        pairs = parse_pairs(text)
    pairs["mode"] = (args.command, None)
    flags = dict(_VALUE_FLAGS)
    if args.command == Mode.ORACLE.value:
        flags.update(_ORACLE_FLAGS)
    for dest, key in flags.items():
        value = getattr(args, dest, None)
        if value is not None:
            pairs[key] = (value, None)
    return build_spec(pairs)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
    except ConfigError as exc:
        print(f"spinvalve: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.jobs < 1:
        print("spinvalve: invalid configuration: --jobs must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cols, rows = run_sweep(spec, jobs=args.jobs)
    except PointFailure as exc:
        print(f"spinvalve: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    text = render(cols, rows, spec.output_format)
    if spec.output_path:
        with open(spec.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
