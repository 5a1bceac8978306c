from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class NumericsSettings(BaseModel):
    exact_boundary_tolerance: float = Field(
        default=1e-4,
        description="Largest distance from an exact boundary at which a sample point is accepted",
    )
    anisotropy_samples: int = Field(
        default=10_000, description="Sample count for ellipticity validation"
    )
    anisotropy_margin: float = Field(
        default=1.05,
        description="Factor applied to measured constants when none are declared",
    )
    plane_samples: int = Field(
        default=1000, description="Plane-disk sample size in the Reifenberg check"
    )
    separation_samples: int = Field(
        default=2000, description="Membership samples per sub-ball"
    )
    lipschitz_grid_cells: int = Field(
        default=64,
        description="Grid nodes across the cylinder diameter for exact sets",
    )
    brute_force_max_cells: int = Field(
        default=22, description="Largest free-cell count accepted by enumeration"
    )


class CLISettings(BaseModel):
    theme: str = Field(default="tokyo-night", description="Console theme")
    threads: int = Field(
        default=4, description="Default worker cap for per-point tasks"
    )
    plot_format: str = Field(default="svg", description="Static plot format")


class Settings(BaseSettings):
    log_level: str = Field(default="INFO", description="The log level")
    numerics: NumericsSettings = Field(
        default_factory=NumericsSettings, description="Numerical defaults"
    )
    cli: CLISettings = Field(
        default_factory=CLISettings, description="The CLI settings"
    )

    model_config = SettingsConfigDict(
        env_prefix="GMTLAB_",
        env_file=".env",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="allow",
        frozen=True,
        env_file_encoding="utf-8",
    )


try:
    settings = Settings()
except PermissionError:
    settings = Settings(_env_file=None)  # type: ignore[call-arg]
