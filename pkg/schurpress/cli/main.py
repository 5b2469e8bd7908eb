import argparse
import logging
import os
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Final

import numpy as np

from schurpress.cli.config import (
    DEFAULT_COPIES,
    DEFAULT_LEAKAGE_P,
    DEFAULT_RUNS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    LOG_LEVEL,
    ExperimentConfig,
    InvalidConfig,
    OutputFormat,
    Subcommand,
    parse_axis,
    parse_thetas,
)
from schurpress.cli.experiments import HEADERS, run_experiment
from schurpress.cli.report import emit_report, write_table
from schurpress.errors import InvalidArgument, SchurpressError

LOGGER: Final[logging.Logger] = logging.getLogger(__name__)

_DESCRIPTIONS: Final[dict[Subcommand, str]] = {
    Subcommand.COMPRESS: "Compressed-pair amplitudes and circuit checks",
    Subcommand.DISTRIBUTION: "Single-shot collective outcome distribution",
    Subcommand.TRIALS: "Across-trial variance of M-run averages",
    Subcommand.SWEEP: "Single-shot variance of the compressed estimator per angle",
    Subcommand.AVERAGE: "Variance averaged over all measurement axes",
    Subcommand.MLE: "2+1 maximum-likelihood baseline",
    Subcommand.NOISE: "Variance under dark-port leakage",
    Subcommand.CODEC: "Symmetric-subspace encode/decode round trips",
}

_DEFAULT_THETAS: Final[dict[Subcommand, str]] = {
    Subcommand.SWEEP: "0:22.5:2.25",
    Subcommand.MLE: "0:22.5:2.8125",
    Subcommand.NOISE: "0:45:2.25",
    Subcommand.AVERAGE: "0:22.5:2.25",
}

# leakage acts on the X analysis
_DEFAULT_AXES: Final[dict[Subcommand, str]] = {Subcommand.NOISE: "X"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta-deg", help="angle(s) in degrees: 13.5, 0,5,10 or 0:22.5:2.25")
    common.add_argument("--phase-deg", type=float, default=0.0)
    common.add_argument("--axis", choices=("X", "Y", "Z"), default="Z")
    common.add_argument("--delta", type=float, help="polar axis angle in degrees")
    common.add_argument("--epsilon", type=float, help="azimuthal axis angle in degrees")
    common.add_argument("-M", "--runs", type=int, default=DEFAULT_RUNS)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--leakage-p", type=float, default=DEFAULT_LEAKAGE_P)
    common.add_argument("--copies", type=int, default=DEFAULT_COPIES)
    common.add_argument(
        "--mode", choices=("all", "compressed", "direct3", "direct2"), default="all"
    )
    common.add_argument("--seed", type=int)
    common.add_argument("--out", type=Path)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv")
    common.add_argument("--check", action="store_true", help="write <stem>.check.<ext>")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="schurpress",
        description="Schur-Weyl compression experiments on identical qubits.",
    )
    commands = parser.add_subparsers(dest="subcommand", required=True)
    for subcommand in Subcommand:
        sub = commands.add_parser(
            subcommand.value,
            parents=[common],
            help=_DESCRIPTIONS[subcommand],
            description=_DESCRIPTIONS[subcommand],
            epilog="CSV header: " + ",".join(HEADERS[subcommand]),
        )
        sub.set_defaults(
            theta_deg=_DEFAULT_THETAS.get(subcommand, "13.5"),
            axis=_DEFAULT_AXES.get(subcommand, "Z"),
        )
    return parser


def _threads(env: Mapping[str, str]) -> int | None:
    raw = env.get("SCHURPRESS_THREADS")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InvalidConfig(f"SCHURPRESS_THREADS must be an integer. Got: {raw!r}")


def config_from_args(namespace: argparse.Namespace, env: Mapping[str, str]) -> ExperimentConfig:
    return ExperimentConfig(
        subcommand=Subcommand(namespace.subcommand),
        theta_deg=parse_thetas(namespace.theta_deg),
        phase_deg=namespace.phase_deg,
        axis=parse_axis(namespace.axis, namespace.delta, namespace.epsilon),
        runs=namespace.runs,
        trials=namespace.trials,
        samples=namespace.samples,
        leakage_p=namespace.leakage_p,
        copies=namespace.copies,
        mode=namespace.mode,
        seed=namespace.seed,
        output_path=namespace.out,
        format=OutputFormat(namespace.format),
        check=namespace.check,
        threads=_threads(env),
    )


def resolve_seed(config: ExperimentConfig) -> int:
    if config.seed is not None:
        return config.seed
    if config.check:
        return DEFAULT_SEED
    seed = int(np.random.SeedSequence().entropy)  # type: ignore
    LOGGER.info("No --seed given, using entropy seed %d", seed)
    return seed


def _configure_logging(verbose: bool, env: Mapping[str, str]) -> None:
    level = "INFO" if verbose else env.get("SCHURPRESS_LOG_LEVEL", LOG_LEVEL).upper()
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("schurpress").setLevel(level)


def execute(config: ExperimentConfig) -> int:
    seed = resolve_seed(config)
    result = run_experiment(config, np.random.default_rng(seed))
    write_table(result.header, result.rows, config.format, config.target)
    summary = f"{config.subcommand}: wrote {len(result.rows)} rows to {config.target}"
    if not config.check:
        print(summary)
        return 0

    emit_report(result.checks, config.format, config.check_target)
    failed = result.failed
    for row in failed:
        LOGGER.warning("Check failed: %s %s", row.experiment, row.parameters)
    print(
        f"{summary}; {len(result.checks) - len(failed)}/{len(result.checks)} checks passed"
        f" ({config.check_target})"
    )
    return 1 if failed else 0


def run_cli(args: Sequence[str] | None = None, env: Mapping[str, str] | None = None) -> int:
    env = os.environ if env is None else env
    try:
        namespace = build_parser().parse_args(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    _configure_logging(namespace.verbose, env)
    try:
        return execute(config_from_args(namespace, env))
    except SchurpressError as e:
        match e:
            case InvalidArgument():
                print(f"schurpress: error: {e}", file=sys.stderr)
                return 2
            case _:
                LOGGER.error("%s", e)
                print(f"schurpress: error: {e}", file=sys.stderr)
                return 1


def main() -> None:
    sys.exit(run_cli())
