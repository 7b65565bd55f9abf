#!/usr/bin/env python3
"""
Calibrate the golden constants for one ellipsoid.

Runs verify-kernel and blowup in calibration mode, which store the measured
constants (x0.5 lower / x2 upper margins) in the fixtures file and bump its
version.

Usage:
    python scripts/calibrate_fixtures.py [--config config.toml] [--fixtures fixtures/golden.yaml]
"""

import sys
from pathlib import Path
from typing import Optional

import typer
from loguru import logger
from typer.testing import CliRunner

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.main import cli

CALIBRATED_COMMANDS = ["verify-kernel", "blowup"]


def main(
    config: Optional[Path] = typer.Option(None, "--config"),  # noqa: UP007
    fixtures: Path = typer.Option(Path("fixtures/golden.yaml"), "--fixtures"),
    out: Path = typer.Option(Path("reports/calibration"), "--out"),
) -> None:
    runner = CliRunner()
    for command in CALIBRATED_COMMANDS:
        args = [command, "--calibrate", "--fixtures", str(fixtures), "--out", str(out)]
        if config is not None:
            args += ["--config", str(config)]
        logger.info(f"Calibrating {command}...")
        result = runner.invoke(cli, args)
        if result.exit_code != 0:
            logger.error(f"{command} calibration failed with exit code {result.exit_code}")
            raise typer.Exit(result.exit_code)
        logger.success(f"{command} calibrated")


if __name__ == "__main__":
    typer.run(main)
