"""Experiment configuration: flat ``key = value`` files or YAML, overridable from flags."""

from __future__ import annotations

import asyncio
import hashlib
import json
from importlib.resources import files
from pathlib import Path
from typing import Any

import yaml
from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from gmtlab.almostmin.cut_metric import SUPPORTED_ORDERS
from gmtlab.sets.voxel import MAX_SMOOTHING

YAML_SUFFIXES = {".yml", ".yaml"}
# Excluded from config_hash; results do not depend on them
RUN_ONLY_FIELDS = {"out", "threads"}


class ExperimentConfig(BaseModel):
    """Every knob of a batch run. Vectors are comma-separated in flat files."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    anisotropy: str = Field(default="euclidean", description="Anisotropy spec string")
    source: str = Field(
        default="ball:R=1", description="Set file path or generator spec"
    )
    n: int = Field(default=2, description="Ambient dimension")
    h: float = Field(default=1 / 64, description="Voxel resolution for rasterized sets")
    smoothing: float = Field(
        default=2.0, description="Gaussian smoothing of voxel boundaries, in cells"
    )
    theta: float = Field(default=0.5, description="Scale ratio between scan steps")
    r0: float = Field(default=0.25, description="Largest radius of scans and certificates")
    k_max: int = Field(default=5, description="Number of scale steps in a scan")
    epsilon: float = Field(default=0.05, description="Excess level of the singular scan")
    delta: float = Field(default=0.1, description="Reifenberg flatness level")
    sigma: float | None = Field(
        default=None, description="Excess threshold of good columns (default 16 Exc)"
    )
    kappa: float = Field(default=0.25, description="Fidelity length of polish")
    seed: int = Field(default=0, description="Seed for every sampled quantity")
    out: Path = Field(default=Path("out"), description="Output directory")

    order: int = Field(default=8, description="Cut neighbourhood order")
    x: list[float] | None = Field(
        default=None, description="Measurement point (nearest boundary point if unset)"
    )
    r: float = Field(default=0.25, description="Radius of single-ball commands")
    nu: list[float] | None = Field(
        default=None, description="Direction of cylinder commands (nu_opt if unset)"
    )
    radii: list[float] | None = Field(
        default=None, description="Radii list; dyadic from r0 if unset"
    )
    stride: int = Field(default=16, description="Boundary subsampling stride")
    subball_count: int = Field(default=16, description="Sub-balls per Reifenberg check")
    eta: float = Field(default=0.1, description="eta in the tilt combination chi")
    chi_constant: float = Field(default=1.0, description="Constant C in chi")
    lambda_threshold: float = Field(
        default=0.01, description="Largest acceptable certified Lambda"
    )
    excess_threshold: float = Field(
        default=0.05, description="Small-excess threshold for regularity commands"
    )
    density_vol_min: float | None = Field(
        default=None, description="Lower bound on the volume ratio"
    )
    density_per_range: list[float] | None = Field(
        default=None, description="Lower and upper bound on the perimeter ratio"
    )
    alpha: float = Field(default=0.0, description="Exponent of the strong minimality form")
    region_radius: float | None = Field(
        default=None, description="Restrict singular scans to B_R(x)"
    )
    threads: int = Field(default=4, description="Worker cap for per-point tasks")

    @field_validator("x", "nu", "radii", "density_per_range", mode="before")
    @classmethod
    def split_vectors(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [float(v) for v in value.replace(" ", "").split(",") if v]
        if isinstance(value, (int, float)):
            return [float(value)]
        return value

    @field_validator("theta")
    @classmethod
    def theta_in_unit_interval(cls, value: float) -> float:
        if not 0 < value < 1:
            raise ValueError(f"theta must lie in (0, 1), got {value}")
        return value

    @field_validator("h", "r", "r0", "kappa", "delta", "epsilon", "eta")
    @classmethod
    def positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError(f"must be > 0, got {value}")
        return value

    @field_validator("smoothing")
    @classmethod
    def smoothing_in_range(cls, value: float) -> float:
        if not 0 <= value <= MAX_SMOOTHING:
            raise ValueError(f"smoothing must lie in [0, {MAX_SMOOTHING}], got {value}")
        return value

    @field_validator("k_max", "stride", "subball_count", "threads")
    @classmethod
    def at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"must be >= 1, got {value}")
        return value

    @model_validator(mode="after")
    def check_shapes(self) -> ExperimentConfig:
        if self.n not in SUPPORTED_ORDERS:
            raise ValueError(f"n must be 2 or 3, got {self.n}")
        if self.order not in SUPPORTED_ORDERS[self.n]:
            raise ValueError(
                f"order {self.order} unsupported for n={self.n}; "
                f"choose from {SUPPORTED_ORDERS[self.n]}"
            )
        for name in ("x", "nu"):
            value = getattr(self, name)
            if value is not None and len(value) != self.n:
                raise ValueError(f"{name} needs {self.n} components, got {len(value)}")
        if self.density_per_range is not None and len(self.density_per_range) != 2:
            raise ValueError("density_per_range needs two values")
        if self.radii is not None and any(r > self.r0 for r in self.radii):
            raise ValueError(f"radii must not exceed r0={self.r0}")
        return self

    def config_hash(self) -> str:
        """First 12 hex digits of the SHA-256 of the canonical JSON dump.

        Fields that only say where or how fast a run happens are left out.
        """
        dump = self.model_dump(mode="json", exclude=RUN_ONLY_FIELDS)
        canonical = json.dumps(dump, sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:12]

    def with_overrides(self, overrides: dict[str, Any]) -> ExperimentConfig:
        values = self.model_dump(exclude_unset=True)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return ExperimentConfig.model_validate(values)

    @classmethod
    async def from_file(cls, path: Path) -> ExperimentConfig:
        """Load a flat ``key = value`` file, or YAML for .yml / .yaml."""
        return cls.model_validate(await read_config_values(path))


async def read_config_values(path: Path) -> dict[str, Any]:
    if not await asyncio.to_thread(path.is_file):
        raise FileNotFoundError(f"Config file not found: {path}")
    if path.suffix.lower() in YAML_SUFFIXES:
        content = await asyncio.to_thread(path.read_text)
        data = yaml.safe_load(content) or {}
        if not isinstance(data, dict):
            raise ValueError(f"{path} must hold a mapping of keys to values")
        return data
    values = await asyncio.to_thread(dotenv_values, path)
    return {key: value for key, value in values.items() if value not in (None, "")}


def preset_dir() -> Path:
    return Path(str(files("resources") / "configs" / "default"))


def available_presets() -> list[str]:
    return sorted(p.stem for p in preset_dir().glob("*.conf"))


def preset_path(name: str) -> Path:
    """Bundled config file for a preset name."""
    path = preset_dir() / f"{name}.conf"
    if not path.is_file():
        raise ValueError(
            f"Unknown preset '{name}'. Available: {', '.join(available_presets())}"
        )
    return path
