"""
Pydantic models for ellipsoid-clf reports.

Every command emits a CommandReport; metrics rows use the models below.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field

# =====================================================
# Command envelope
# =====================================================


class CommandReport(BaseModel):
    """JSON report written by every command."""

    model_config = ConfigDict(populate_by_name=True)

    command: str
    config_echo: dict[str, Any]
    metrics: dict[str, Any]
    passed: bool = Field(alias="pass")
    fixture_version: int

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


# =====================================================
# Per-command rows
# =====================================================


class ReproducingRow(BaseModel):
    ellipsoid: str
    z: list[float]
    f: str
    value: list[float]
    expected: list[float]
    error: float


class MeasureRow(BaseModel):
    alpha: float
    s_w_over_alpha2: float
    s_v_over_alpha2: float
    limit_w: float
    limit_v: float
    deviation_w: float
    deviation_v: float
    tolerance: float
    density_ratio_w: float
    refinement_gap_w: float
    ok: bool


class ImageRow(BaseModel):
    """Minimum of -Re K chi_W over the V evaluation grid at one scale."""

    alpha: float
    min_neg_re_H: float
    max_neg_re_H: float


class ModulusRow(BaseModel):
    alpha: float
    counterexample: float
    growth: float
    control: float
