from __future__ import annotations

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Run defaults loaded from environment variables (DAF_*) or .env."""

    model_config = SettingsConfigDict(env_file=".env", env_prefix="DAF_", extra="ignore")

    APP_NAME: str = "dafsim"
    LOG_LEVEL: str = "INFO"

    # MONTE CARLO
    FRAME_LENGTH: int = 1000  # data symbols; the reference symbol is extra
    FRAMES_PER_BATCH: int = 50
    BITS_PER_POINT: int = 2_000_000
    MAX_BIT_ERRORS: int = 2000
    WORKERS: int = 1

    # CHANNEL
    SOS_SINUSOIDS: int = 16
    HIST_BINS: int = 100
    HIST_MAX: float = 5.0

    # ANALYSIS
    QUADRATURE_NODES: int = 64
    FLOOR_EQUAL_RTOL: float = 1e-9
    FLOOR_CLOSED_FORM_RTOL: float = 1e-6  # worst-case rounding error accepted from a closed form

    # OUTPUT
    OUTPUT_DIR: str = "results"


settings = Settings()
