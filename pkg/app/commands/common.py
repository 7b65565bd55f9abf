"""Shared command plumbing."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from app.models.schemas import CommandReport
from app.utils.config import RunConfig
from app.utils.fixtures import GoldenFixtures


@dataclass
class CommandContext:
    out_dir: Path
    fixtures: GoldenFixtures
    calibrate: bool = False


@dataclass
class Outcome:
    """Metrics, failed checks and constants to store when calibrating."""

    metrics: dict[str, Any]
    failures: list[str] = field(default_factory=list)
    calibration: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str) -> None:
        if not condition:
            self.failures.append(message)


def build_report(command: str, cfg: RunConfig, ctx: CommandContext, outcome: Outcome) -> CommandReport:
    metrics = dict(outcome.metrics)
    metrics["failures"] = list(outcome.failures)
    return CommandReport(
        command=command,
        config_echo=cfg.echo(),
        metrics=metrics,
        passed=outcome.passed or ctx.calibrate,
        fixture_version=ctx.fixtures.fixture_version,
    )
