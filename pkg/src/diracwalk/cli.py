"""Command-line entry point: one subcommand per experiment runner.

Exit codes: 0 success, 2 configuration error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, ResourceCapError
from .experiments import EXPERIMENTS, SimConfig, run_experiment

_OVERRIDE_FLAGS = {
    "n": int,
    "omega": float,
    "m": float,
    "e": float,
    "c": float,
    "order": int,
    "r": int,
    "T": float,
    "p0": float,
    "sigma": float,
    "z0": float,
    "dz": float,
    "v0": float,
    "barrier_z": float,
    "seed": int,
    "max_qubits": int,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracwalk",
        description="Quantum-walk Dirac-equation simulations (circuit backend "
                    "with classical cross-checks).",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", help="JSON config file (keys as in SimConfig)")
        p.add_argument("--out", help="output directory (default per experiment)")
        for flag, typ in _OVERRIDE_FLAGS.items():
            p.add_argument(f"--{flag}", type=typ, default=None,
                           help=f"override {flag}")
        p.add_argument("--masses", default=None,
                       help="comma-separated mass list (zb1d)")
        p.add_argument("--v0-factors", dest="v0_factors", default=None,
                       help="comma-separated barrier-height factors (klein)")
    return parser


def config_from_args(args: argparse.Namespace) -> SimConfig:
    data: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    data["experiment"] = args.experiment
    if args.out:
        data["out_dir"] = args.out
    elif "out_dir" not in data:
        data["out_dir"] = f"runs/{args.experiment}"
    for flag in _OVERRIDE_FLAGS:
        value = getattr(args, flag, None)
        if value is not None:
            data[flag] = value
    if args.masses is not None:
        data["masses"] = tuple(float(v) for v in args.masses.split(","))
    if args.v0_factors is not None:
        data["v0_factors"] = tuple(float(v) for v in args.v0_factors.split(","))
    return SimConfig.from_dict(data)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        summary = run_experiment(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    print(json.dumps(summary, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
