"""
Configuration management for ellipsoid-clf.

Process settings come from environment variables and .env (prefix CLF_).
Run parameters live in a nested TOML file validated by RunConfig; every
section rejects unknown keys.
"""

import math
import tomllib
from functools import lru_cache
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from domains.geometry.ellipsoid import Density, Ellipsoid
from domains.geometry.quadrature import QuadratureGrid, QuadratureRule
from domains.patches.patches import GammaConfig, choose_gammas
from domains.varexp.exponent import ExponentField, PsiParams, PsiShape


def load_toml_config(toml_path: Path) -> dict[str, Any]:
    """
    Load a run configuration file.

    Args:
        toml_path: Path to TOML config file

    Returns:
        Nested configuration dict

    Raises:
        FileNotFoundError: the file does not exist
        tomllib.TOMLDecodeError: the file is not valid TOML
    """
    with open(toml_path, "rb") as f:
        return tomllib.load(f)


class Settings(BaseSettings):
    """Process-level settings loaded from environment or .env files."""

    log_level: str = "INFO"
    log_format: str = "console"  # console, json
    config_path: Path | None = None
    out_dir: Path = Path("reports")
    fixtures_path: Path = Path("fixtures/golden.yaml")

    model_config = SettingsConfigDict(
        env_prefix="CLF_", env_file=".env", env_file_encoding="utf-8", case_sensitive=False, extra="ignore"
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class EllipsoidSection(_Section):
    m1: float = 2.0
    m2: float = 3.0


class GammaSection(_Section):
    """Safety fraction for the automatic choice, or all four coefficients explicitly."""

    safety: float = Field(default=0.9, gt=0, lt=1)
    g1: float | None = None
    g2: float | None = None
    g3: float | None = None
    g4: float | None = None

    @model_validator(mode="after")
    def all_or_none(self) -> "GammaSection":
        given = [g is not None for g in (self.g1, self.g2, self.g3, self.g4)]
        if any(given) and not all(given):
            raise ValueError("gamma override needs all of g1, g2, g3, g4")
        return self


class ExponentSection(_Section):
    p0: float = 4.0
    amplitude: float = 2.0
    cap_point: float = math.exp(-1.0)


class GridsSection(_Section):
    patch: QuadratureGrid = QuadratureGrid(n_r=32, n_t1=16, n_t2=16)
    measure: QuadratureGrid = QuadratureGrid(n_r=32, n_t1=16, n_t2=16)
    reproducing: QuadratureGrid = QuadratureGrid(n_r=64, n_t1=48, n_t2=48, rule=QuadratureRule.GRADED)
    v_eval: int = Field(default=5, ge=2)


class ReproducingSection(_Section):
    ellipsoids: list[tuple[float, float]] = [(1.0, 1.0), (2.0, 3.0), (1.5, 2.0)]
    # (Re z1, Im z1, Re z2, Im z2)
    points: list[tuple[float, float, float, float]] = [(0.0, 0.0, 0.0, 0.0), (0.1, 0.0, 0.2, -0.1)]
    max_error: float = Field(default=1e-6, gt=0)


class MeasureSection(_Section):
    alphas: list[float] = Field(default=[1e-2, 1e-3, 1e-4], min_length=1)
    density: Density = Density.LERAY
    # relative tolerance at alpha is clip(slope * alpha, floor, cap)
    tolerance_slope: float = 20.0
    tolerance_floor: float = 0.005
    tolerance_cap: float = 0.10

    def tolerance(self, alpha: float) -> float:
        return min(self.tolerance_cap, max(self.tolerance_floor, self.tolerance_slope * alpha))


class KernelSection(_Section):
    alphas: list[float] = Field(default=[1e-2, 1e-3, 1e-4], min_length=1)
    cross_alphas: list[float] | None = None
    n_samples: int = Field(default=10_000, ge=1)
    inflate_factor: float = Field(default=100.0, gt=1)
    max_variation: float = 2.0
    im_epsilon: float = 0.1


class BlowupSection(_Section):
    n_max: int = Field(default=8, ge=2)
    p_const: float = Field(default=4.0, gt=1)
    ln_budget: float = 1e6
    positive_control: bool = False
    max_control_spread: float = 4.0
    tol: float = Field(default=1e-10, gt=0)


class LogHolderSection(_Section):
    alphas: list[float] = Field(default=[1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8], min_length=2)
    min_growth: float = 2.0
    control_amplitude: float = 1.0
    max_control_drift: float = 1.5
    n_pairs: int = Field(default=10_000, ge=1)


class RunConfig(_Section):
    """Validated run configuration; invariant violations become validation errors."""

    ellipsoid: EllipsoidSection = EllipsoidSection()
    gammas: GammaSection = GammaSection()
    exponent: ExponentSection = ExponentSection()
    grids: GridsSection = GridsSection()
    reproducing: ReproducingSection = ReproducingSection()
    measure: MeasureSection = MeasureSection()
    kernel: KernelSection = KernelSection()
    blowup: BlowupSection = BlowupSection()
    log_holder: LogHolderSection = LogHolderSection()
    seed: int = 20240601

    @model_validator(mode="after")
    def check_invariants(self) -> "RunConfig":
        E = self.build_ellipsoid()
        self.build_field()
        self.build_gammas().check_against(E)
        for m1, m2 in self.reproducing.ellipsoids:
            Ellipsoid(m1, m2)
        return self

    def build_ellipsoid(self) -> Ellipsoid:
        return Ellipsoid(self.ellipsoid.m1, self.ellipsoid.m2)

    def build_field(self) -> ExponentField:
        return ExponentField(
            p0=self.exponent.p0,
            psi=PsiParams(amplitude=self.exponent.amplitude, cap_point=self.exponent.cap_point),
        )

    def build_control_field(self) -> ExponentField:
        """Log-Hoelder continuous comparison field with the same p0."""
        return ExponentField(
            p0=self.exponent.p0,
            psi=PsiParams(amplitude=self.log_holder.control_amplitude, shape=PsiShape.INVERSE_LOG),
        )

    def build_gammas(self) -> GammaConfig:
        g = self.gammas
        if g.g1 is not None:
            return GammaConfig(g1=g.g1, g2=g.g2, g3=g.g3, g4=g.g4)
        return choose_gammas(self.build_ellipsoid(), g.safety)

    def echo(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


def load_run_config(path: Path | None = None, overrides: dict[str, Any] | None = None) -> RunConfig:
    """
    Build a RunConfig from an optional TOML file plus dotted-key overrides.

    Args:
        path: TOML file; defaults only when None
        overrides: e.g. {"seed": 7, "blowup.n_max": 4}

    Raises:
        pydantic.ValidationError: any section or cross-module invariant fails
    """
    data: dict[str, Any] = load_toml_config(path) if path is not None else {}
    for dotted, value in (overrides or {}).items():
        section = data
        *parents, leaf = dotted.split(".")
        for key in parents:
            section = section.setdefault(key, {})
        section[leaf] = value
    return RunConfig.model_validate(data)
