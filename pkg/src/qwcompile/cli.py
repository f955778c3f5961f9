"""Command-line front end.

Subcommands: ``compile``, ``sweep-k``, ``sweep-states``, ``barren-plateau``
run experiments and emit CSV/JSON for external plotting; ``verify`` runs the
built-in property suite. Each experiment takes a JSON manifest via
``--config`` plus flag overrides, so a run is fully described by one file.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import ExperimentConfig, run_experiment
from .verify import run_verification

_EXPERIMENT_OF = {
    "compile": "compile",
    "sweep-k": "sweep_k",
    "sweep-states": "sweep_states",
    "barren-plateau": "barren_plateau",
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON manifest; flags override its fields")
    parser.add_argument("--seed", type=int, help="base seed")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--jobs", type=int, help="parallel worker processes")
    parser.add_argument("--n", type=int, help="qubit count")
    parser.add_argument("--k", type=int, help="Pauli locality bound")
    parser.add_argument("--runs", type=int, help="runs per cell")
    parser.add_argument("--steps", type=int, dest="max_steps", help="max training steps")
    parser.add_argument(
        "--entanglement", choices=["linear", "full"], help="HEA entangling block"
    )
    parser.add_argument(
        "--cost",
        action="append",
        choices=["qwc", "hst", "let"],
        dest="cost_kinds",
        help="cost kind (repeatable)",
    )
    parser.add_argument("--ensemble-size", type=int, dest="ensemble_size")
    parser.add_argument(
        "--early-stop",
        action="store_const",
        const=True,
        dest="early_stop",
        default=None,
        help="stop when trailing cost variance drops below 1e-8",
    )
    parser.add_argument("--lr", type=float, help="ADAM learning rate override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwcompile",
        description="Variational circuit compilation with a Wasserstein cost",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _EXPERIMENT_OF:
        _add_common(sub.add_parser(name, help=f"run the {name} experiment"))
    verify = sub.add_parser("verify", help="run the built-in property checks")
    verify.add_argument("--quick", action="store_true", help="smaller sample sizes")
    verify.add_argument("--seed", type=int, default=2024)
    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    data["experiment"] = _EXPERIMENT_OF[args.command]
    overrides = (
        "seed",
        "out",
        "jobs",
        "n",
        "k",
        "runs",
        "max_steps",
        "entanglement",
        "cost_kinds",
        "ensemble_size",
        "early_stop",
        "lr",
    )
    for name in overrides:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    if args.command == "barren-plateau" and "cost_kinds" not in data:
        data["cost_kinds"] = ["qwc", "hst", "let"]
    return ExperimentConfig.from_dict(data)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return 1 if run_verification(quick=args.quick, seed=args.seed) else 0

    try:
        config = _config_from_args(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        written = run_experiment(config)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
