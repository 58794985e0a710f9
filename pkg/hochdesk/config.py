"""
Runtime configuration for hochdesk, read from the environment or a .env file.
"""

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Caps and defaults with environment variable support"""

    # Logging
    log_level: str = Field(default="INFO", alias="HOCHDESK_LOG_LEVEL")

    # Size guards
    degree_cap: int = Field(default=5, alias="HOCHDESK_DEGREE_CAP")  # Hochschild degree ceiling
    gs_degree_cap: int = Field(default=3, alias="HOCHDESK_GS_DEGREE_CAP")
    dimension_cap: int = Field(default=200_000, alias="HOCHDESK_DIMENSION_CAP")  # largest cochain term

    # Defaults for CLI flags
    default_arity: int = Field(default=4, alias="HOCHDESK_ARITY")
    default_window: int = Field(default=6, alias="HOCHDESK_WINDOW")
    report_format: str = Field(default="text", alias="HOCHDESK_REPORT")  # text | json

    # Soft wall-clock budget, reported with every result
    time_budget_seconds: float = Field(default=300.0, alias="HOCHDESK_TIME_BUDGET")

    model_config = {
        "env_file": ".env",
        "case_sensitive": False,
        "extra": "ignore",
        "populate_by_name": True,
    }


def get_settings() -> Settings:
    """Get settings instance"""
    return Settings()
