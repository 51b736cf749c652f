"""Application configuration."""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    PROJECT_NAME: str = "Credal Scoring"
    VERSION: str = "0.1.0"

    # Logging
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO",
        description="Root log level for the CLI",
    )
    LOG_FORMAT: str = Field(
        default="%(asctime)s %(levelname)s %(name)s: %(message)s",
        description="Log record format",
    )

    # Tolerances
    PROBABILITY_TOLERANCE: float = Field(default=1e-12, gt=0, description="Simplex sum tolerance")
    EQUALITY_TOLERANCE: float = Field(default=1e-9, gt=0, description="L-infinity distance for equal distributions")
    EXTREME_POINT_TOLERANCE: float = Field(default=1e-9, gt=0, description="Residual bound of the hull test")
    PROPERNESS_MARGIN: float = Field(default=1e-9, gt=0, description="Margin for IP properness and argmax sets")
    STRICTNESS_MARGIN: float = Field(default=1e-12, gt=0, description="Margin for precise strict properness")
    TIE_TOLERANCE: float = Field(default=1e-12, gt=0, description="Expected utilities closer than this are tied")
    DISTINCT_PAIR_DISTANCE: float = Field(default=1e-6, gt=0, description="Minimum L-infinity gap of sampled pairs")

    # Grids
    DEFAULT_GRID_STEP: float = Field(default=0.01, gt=0, le=0.5, description="Report grid step")
    DEFAULT_ACTION_STEP: float = Field(default=0.01, gt=0, le=0.5, description="Action grid step")
    DEFAULT_MIXTURE_STEP: float = Field(default=0.01, gt=0, le=0.5, description="Dictator search mixture step")

    # Randomization
    QUADRATURE_NODES: int = Field(default=1001, ge=3, description="Trapezoid nodes for continuous theta")
    DEFAULT_SEED: int = Field(default=0, ge=0, description="Seed for verification runs")
    DEFAULT_TRIALS: int = Field(default=1000, ge=1, description="Sampled instances per verifier")

    # Harness
    MAX_IMPOSSIBILITY_LATTICE: int = Field(default=10, ge=2, description="Largest report lattice accepted")
    CSV_SIGNIFICANT_DIGITS: int = Field(default=12, ge=1, le=17, description="Digits written per CSV value")
    WORKERS: int = Field(default=1, ge=1, description="Threads used for landscape evaluation")


settings = Settings()
