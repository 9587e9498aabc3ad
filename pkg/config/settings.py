"""Configuration settings for the bounded-orbit lab.

Every run-level knob lives here: BigFloat precision, tolerances, verification
sample sizes, the sampler seed and the Temporal connection used by the
distributed verification worker. Values come from the environment or a .env
file and are validated once at import time.
"""

from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Tolerances(BaseModel):
    """Tolerances shared by the BigFloat probes and the limit-set estimator."""

    chart_roundtrip: float = Field(default=1e-25, gt=0)
    commutation: float = Field(default=1e-30, gt=0)
    limitset: float = Field(default=1e-3, gt=0)
    horizon: int = Field(default=400, ge=1)

    model_config = {"frozen": True}


class Settings(BaseSettings):
    """Application settings loaded from environment variables.

    Example .env:
        BIGFLOAT_PRECISION=512
        LOG_LEVEL=DEBUG
        SAMPLER_SEED=7
        VERIFY_WORKERS=8
    """

    # Logging Configuration
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"

    # Application Configuration
    app_name: str = "bounded-orbit-lab"
    app_version: str = "0.1.0"

    # Numerics
    bigfloat_precision: int = Field(default=256, ge=64)
    tol_chart_roundtrip: float = Field(default=1e-25, gt=0)
    tol_commutation: float = Field(default=1e-30, gt=0)
    tol_limitset: float = Field(default=1e-3, gt=0)
    horizon: int = Field(default=400, ge=1)

    # Verification sizes
    sampler_seed: int = 20240917
    verify_random_points: int = Field(default=10_000, ge=1)
    verify_boundary_points: int = Field(default=1_000, ge=1)
    verify_limit_seeds: int = Field(default=25, ge=1)
    verify_square_grid: int = Field(default=200, ge=1)
    verify_plane_grid: int = Field(default=300, ge=1)
    verify_triangles: int = Field(default=1_000, ge=1)
    verify_workers: int = Field(default=4, ge=1)

    # Temporal Configuration (distributed verification)
    temporal_host: str = "localhost:7233"
    temporal_namespace: str = "default"
    temporal_task_queue: str = "bounded-orbit-verification-queue"

    # TLS Configuration (optional)
    temporal_tls_enabled: bool = False
    temporal_client_cert: str | None = None
    temporal_client_key: str | None = None

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        validate_assignment=True,
    )

    @property
    def tolerances(self) -> Tolerances:
        """Tolerances assembled from the individual overrides."""
        return Tolerances(
            chart_roundtrip=self.tol_chart_roundtrip,
            commutation=self.tol_commutation,
            limitset=self.tol_limitset,
            horizon=self.horizon,
        )

    @property
    def is_local_dev(self) -> bool:
        """Check if the Temporal server is a local development server."""
        return "localhost" in self.temporal_host

    @property
    def temporal_ui_url(self) -> str:
        """Get the Temporal UI URL based on host."""
        if self.is_local_dev:
            return "http://localhost:8233"
        return f"http://{self.temporal_host.split(':')[0]}:8233"


# Global settings instance
# Loaded once at import time - any validation errors fail immediately
settings = Settings()
