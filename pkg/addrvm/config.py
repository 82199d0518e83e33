"""
Configuration management for the addressing-machine toolchain.

Uses Pydantic Settings for environment-based configuration with validation.
Every value can be overridden with an ``ADDRVM_``-prefixed environment variable
or a ``.env`` file; CLI flags override both.
"""

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Toolchain settings loaded from environment variables.

    Configuration priority:
    1. CLI flags (applied by the caller)
    2. Environment variables
    3. .env file
    4. Default values
    """

    # Evaluation budgets
    default_fuel: int = Field(
        default=10_000,
        ge=0,
        description="Head steps allowed per run (and derivation height for bigstep)"
    )

    default_depth: int = Field(
        default=3,
        ge=0,
        description="Fresh indeterminates the applicative checker may apply"
    )

    strict_distinct: bool = Field(
        default=False,
        description="Report stuck-vs-divergent pairs as distinct instead of unknown"
    )

    recurrence_fuel: int = Field(
        default=200,
        ge=0,
        description="Head-step budget used to canonicalize addresses for recurrence detection"
    )

    # Desk-scale property search
    confluence_join_steps: int = Field(
        default=8,
        ge=0,
        description="Reduction steps allowed on each side when joining two reducts"
    )

    confluence_join_states: int = Field(
        default=2_000,
        ge=1,
        description="States the join search may visit for one pair before giving up"
    )

    postponement_inner_steps: int = Field(
        default=3,
        ge=0,
        description="Inner steps allowed when closing a postponement diagram"
    )

    # Logging configuration
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="WARNING",
        description="Logging level"
    )

    log_format: Literal["json", "text"] = Field(
        default="text",
        description="Log output format (json for machine consumption, text for terminals)"
    )

    model_config = SettingsConfigDict(
        env_prefix="ADDRVM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Accept log levels in any case."""
        if isinstance(v, str):
            return v.upper()
        return v


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """
    Get the global settings instance.

    Returns:
        Settings: The global settings instance
    """
    return settings
