"""
Helper utilities for ellipsoid-clf.

Common formatting functions used by the commands and report writers.
"""

import hashlib
import json
from datetime import UTC, datetime
from typing import Any

from domains.varexp.logscalar import LogScalar


def hash_text(text: str) -> str:
    """Generate SHA256 hash of text."""
    return hashlib.sha256(text.encode()).hexdigest()


def config_fingerprint(echo: dict[str, Any]) -> str:
    """Stable hash of a configuration echo."""
    return hash_text(json.dumps(echo, sort_keys=True))


def now_iso() -> str:
    """Get current timestamp as ISO string."""
    return datetime.now(UTC).isoformat()


def fmt17(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(x, ".17g")


def ln_of(value: LogScalar) -> float:
    """Natural log of a non-negative LogScalar; -inf for zero."""
    return value.ln_mag if value.sign > 0 else float("-inf")


def growth_factor(values: list[float]) -> float:
    """last / first, or 0 when the first value is zero."""
    if not values or values[0] == 0.0:
        return 0.0
    return values[-1] / values[0]
