"""
ellipsoid-clf - command-line entry point

Numerical verification of the Cauchy-Leray-Fantappie operator on complex
ellipsoids in C^2:
- reproducing property and patch measures
- kernel bounds on source/target patches
- the variable-exponent truncation experiment and its constant-exponent control
- log-Hoelder diagnostics of the exponent fields

Exit codes: 0 all checks passed, 1 a verification failed, 2 configuration or usage error.
"""

import tomllib
from collections.abc import Callable
from pathlib import Path
from typing import Annotated, Any, Optional

import typer
from loguru import logger
from pydantic import ValidationError

from app.commands.blowup import cmd_blowup
from app.commands.common import CommandContext, Outcome, build_report
from app.commands.kernel import cmd_verify_kernel
from app.commands.log_holder import cmd_check_log_holder
from app.commands.measure import cmd_verify_measure
from app.commands.reproducing import cmd_verify_reproducing
from app.logging.setup import configure_logging
from app.utils.config import RunConfig, get_settings, load_run_config
from app.utils.fixtures import load_fixtures, save_fixtures
from app.utils.helpers import config_fingerprint
from app.utils.reports import dump_json_report
from domains.errors import ClfError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

cli = typer.Typer(
    name="ellipsoid-clf",
    help="Verify the Cauchy-Leray-Fantappie counterexample on complex ellipsoids.",
    add_completion=False,
    no_args_is_help=True,
)

ConfigOpt = Annotated[Optional[Path], typer.Option("--config", help="Run configuration (TOML).")]  # noqa: UP007
OutOpt = Annotated[Optional[Path], typer.Option("--out", help="Directory for JSON and CSV outputs.")]  # noqa: UP007
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Override the configured seed.")]  # noqa: UP007
FixturesOpt = Annotated[Optional[Path], typer.Option("--fixtures", help="Golden fixtures file (YAML).")]  # noqa: UP007
CalibrateOpt = Annotated[bool, typer.Option("--calibrate", help="Store measured constants as golden fixtures.")]
VerboseOpt = Annotated[bool, typer.Option("--verbose", "-v", help="Log at DEBUG level.")]


def _run(
    command: str,
    fn: Callable[[RunConfig, CommandContext], Outcome],
    config: Path | None,
    out: Path | None,
    seed: int | None,
    fixtures: Path | None,
    calibrate: bool,
    verbose: bool,
    overrides: dict[str, Any] | None = None,
) -> None:
    settings = get_settings()
    configure_logging("DEBUG" if verbose else settings.log_level, settings.log_format)

    overrides = dict(overrides or {})
    if seed is not None:
        overrides["seed"] = seed

    try:
        cfg = load_run_config(config or settings.config_path, overrides)
    except (ValidationError, ClfError, OSError, tomllib.TOMLDecodeError) as e:
        logger.error(f"Invalid configuration: {e}")
        raise typer.Exit(EXIT_USAGE) from e

    fixtures_path = fixtures or settings.fixtures_path
    ctx = CommandContext(
        out_dir=out or settings.out_dir,
        fixtures=load_fixtures(fixtures_path),
        calibrate=calibrate,
    )
    ctx.out_dir.mkdir(parents=True, exist_ok=True)

    logger.info(f"Starting {command} (seed={cfg.seed}, config {config_fingerprint(cfg.echo())[:12]})")
    try:
        outcome = fn(cfg, ctx)
    except ClfError as e:
        logger.error(f"{command} aborted: {e}")
        raise typer.Exit(EXIT_USAGE) from e

    report = build_report(command, cfg, ctx, outcome)
    dump_json_report(ctx.out_dir / f"{command}.json", report)

    if calibrate:
        label = cfg.build_ellipsoid().label
        if outcome.calibration:
            save_fixtures(fixtures_path, ctx.fixtures.updated(label, outcome.calibration))
        else:
            logger.warning(f"{command} has no golden constants to calibrate")
        raise typer.Exit(EXIT_OK)

    if outcome.passed:
        logger.success(f"{command}: all checks passed")
        raise typer.Exit(EXIT_OK)

    for failure in outcome.failures:
        logger.error(f"{command}: {failure}")
    raise typer.Exit(EXIT_FAILED)


@cli.command("verify-reproducing")
def verify_reproducing(
    config: ConfigOpt = None,
    out: OutOpt = None,
    seed: SeedOpt = None,
    fixtures: FixturesOpt = None,
    calibrate: CalibrateOpt = False,
    verbose: VerboseOpt = False,
) -> None:
    """K f = f for holomorphic monomials at interior points."""
    _run("verify-reproducing", cmd_verify_reproducing, config, out, seed, fixtures, calibrate, verbose)


@cli.command("verify-measure")
def verify_measure(
    config: ConfigOpt = None,
    out: OutOpt = None,
    seed: SeedOpt = None,
    fixtures: FixturesOpt = None,
    calibrate: CalibrateOpt = False,
    verbose: VerboseOpt = False,
) -> None:
    """Patch measures against their alpha^2 asymptotics."""
    _run("verify-measure", cmd_verify_measure, config, out, seed, fixtures, calibrate, verbose)


@cli.command("verify-kernel")
def verify_kernel(
    config: ConfigOpt = None,
    out: OutOpt = None,
    seed: SeedOpt = None,
    fixtures: FixturesOpt = None,
    calibrate: CalibrateOpt = False,
    verbose: VerboseOpt = False,
    n_samples: Annotated[Optional[int], typer.Option("--n-samples", help="Pairs per scan.")] = None,  # noqa: UP007
) -> None:
    """Kernel sign and size bounds on W x V, cross-scale signs, single-scale images."""
    overrides = {"kernel.n_samples": n_samples} if n_samples is not None else None
    _run("verify-kernel", cmd_verify_kernel, config, out, seed, fixtures, calibrate, verbose, overrides)


@cli.command("blowup")
def blowup(
    config: ConfigOpt = None,
    out: OutOpt = None,
    seed: SeedOpt = None,
    fixtures: FixturesOpt = None,
    calibrate: CalibrateOpt = False,
    verbose: VerboseOpt = False,
    n_max: Annotated[Optional[int], typer.Option("--n-max", help="Largest truncation N.")] = None,  # noqa: UP007
    positive_control: Annotated[
        Optional[bool],  # noqa: UP007
        typer.Option("--positive-control/--no-positive-control", help="Also run the constant-exponent control."),
    ] = None,
    p_const: Annotated[Optional[float], typer.Option("--p-const", help="Exponent of the control.")] = None,  # noqa: UP007
) -> None:
    """Truncation experiment: bounded input norm, growing image lower bound."""
    overrides: dict[str, Any] = {}
    if n_max is not None:
        overrides["blowup.n_max"] = n_max
    if positive_control is not None:
        overrides["blowup.positive_control"] = positive_control
    if p_const is not None:
        overrides["blowup.p_const"] = p_const
    _run("blowup", cmd_blowup, config, out, seed, fixtures, calibrate, verbose, overrides)


@cli.command("check-log-holder")
def check_log_holder(
    config: ConfigOpt = None,
    out: OutOpt = None,
    seed: SeedOpt = None,
    fixtures: FixturesOpt = None,
    calibrate: CalibrateOpt = False,
    verbose: VerboseOpt = False,
) -> None:
    """Log-Hoelder modulus of the counterexample and control fields, quasimetric comparison."""
    _run("check-log-holder", cmd_check_log_holder, config, out, seed, fixtures, calibrate, verbose)


if __name__ == "__main__":
    cli()
