from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, field_validator
from typing import Optional


class Settings(BaseSettings):
    """Toolkit settings loaded from COLLINEAR_* environment variables or .env file"""

    # Application
    app_name: str = Field(default="collinear", description="Application name")
    app_version: str = Field(default="1.0.0", description="Application version")
    debug: bool = Field(default=False, description="Debug mode")
    docs_enabled: bool = Field(default=True, description="Enable OpenAPI docs (/docs, /redoc)")
    api_prefix: str = Field(default="/api/v1", description="Prefix for analysis routes")

    # Randomness
    seed: int = Field(default=20180917, description="Default seed for simulations and fixtures")

    # Logging
    log_level: str = Field(default="INFO", description="Log level")
    log_json: bool = Field(default=False, description="Emit serialized JSON log records")
    log_file: Optional[str] = Field(default=None, description="Optional log file")

    # Group analysis
    group_threshold: float = Field(default=0.8, description="|r| threshold linking two predictors")
    estimability_threshold: float = Field(
        default=1.0, description="Effect is estimable when Var <= c * sigma^2"
    )
    feasibility_tolerance: float = Field(
        default=0.1, description="Max standardized spread within a group for feasible points"
    )

    # Selection
    p_reject: float = Field(default=0.1, description="Backward elimination reject p-value")
    max_groups: int = Field(default=20, description="Upper bound on groups for all-subsets")

    # Ridge comparison
    ridge_lambda_min: float = Field(default=0.01, description="Smallest ridge penalty on the grid")
    ridge_lambda_max: float = Field(default=1000.0, description="Largest ridge penalty on the grid")
    ridge_lambda_count: int = Field(default=50, description="Number of log-spaced penalties")
    ridge_folds: int = Field(default=5, description="Cross-validation folds")

    # Monte Carlo
    mc_reps: int = Field(default=1000, description="Replicates for effect and prediction studies")
    selection_reps: int = Field(default=100, description="Replicates for the selection study")

    # Reports
    decimals: int = Field(default=5, description="Decimals in text reports")

    # Metrics
    metrics_enabled: bool = Field(default=True, description="Enable Prometheus metrics endpoint")
    metrics_textfile: Optional[str] = Field(
        default=None, description="Write CLI metrics to this textfile after each command"
    )

    @field_validator('group_threshold', 'p_reject')
    @classmethod
    def validate_open_unit(cls, v):
        """Thresholds and p-values live strictly between 0 and 1"""
        if not 0.0 < v < 1.0:
            raise ValueError(f"must lie in (0, 1), got {v}")
        return v

    @field_validator('estimability_threshold', 'feasibility_tolerance', 'ridge_lambda_min')
    @classmethod
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    @field_validator('ridge_folds')
    @classmethod
    def validate_folds(cls, v):
        if v < 2:
            raise ValueError("cross-validation needs at least 2 folds")
        return v

    @field_validator('mc_reps', 'selection_reps', 'ridge_lambda_count', 'max_groups')
    @classmethod
    def validate_count(cls, v):
        if v < 1:
            raise ValueError(f"must be at least 1, got {v}")
        return v

    @field_validator('decimals')
    @classmethod
    def validate_decimals(cls, v):
        if not 0 <= v <= 12:
            raise ValueError("decimals must be between 0 and 12")
        return v

    @field_validator('log_level')
    @classmethod
    def validate_log_level(cls, v):
        level = v.upper()
        if level not in {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {v!r}")
        return level

    model_config = SettingsConfigDict(
        env_prefix="COLLINEAR_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Function to get the settings (useful for dependency injection)"""
    return settings
