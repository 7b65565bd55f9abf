"""Versioned golden constants keyed by ellipsoid label."""

from pathlib import Path

import yaml
from loguru import logger
from pydantic import BaseModel


class GoldenFixtures(BaseModel):
    fixture_version: int = 0
    entries: dict[str, dict[str, float]] = {}

    def lookup(self, label: str, key: str) -> float | None:
        value = self.entries.get(label, {}).get(key)
        if value is None:
            logger.warning(f"no golden constant {key!r} for {label}; comparison skipped")
        return value

    def updated(self, label: str, values: dict[str, float]) -> "GoldenFixtures":
        """Copy with values merged under label and the version bumped."""
        entries = {k: dict(v) for k, v in self.entries.items()}
        entries.setdefault(label, {}).update(values)
        return GoldenFixtures(fixture_version=self.fixture_version + 1, entries=entries)


def load_fixtures(path: Path) -> GoldenFixtures:
    """Load fixtures; a missing file yields an empty version-0 set."""
    if not path.exists():
        logger.warning(f"fixtures file {path} not found; using empty fixtures")
        return GoldenFixtures()
    data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    return GoldenFixtures.model_validate(data)


def save_fixtures(path: Path, fixtures: GoldenFixtures) -> None:
    tmp_path = path.with_name(path.name + ".tmp")
    tmp_path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path.write_text(yaml.safe_dump(fixtures.model_dump(), sort_keys=True), encoding="utf-8")
    tmp_path.replace(path)
    logger.success(f"wrote fixtures version {fixtures.fixture_version} to {path}")
