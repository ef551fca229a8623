"""Configuration for equidist."""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class EquidistSettings(BaseSettings):
    """Runtime configuration with environment variable overrides."""

    model_config = SettingsConfigDict(env_prefix="EQUIDIST_")

    # Parallelism
    workers: int = 1
    chunk_size: int = 1024  # n-chunk length; results never depend on workers

    # Precision policy
    target_bits: int = 60
    precision_margin_bits: int = 96
    precision_cap_bits: int = 2**24
    exact_rational_path: bool = True
    exact_cost_ratio: float = 1.0  # exact path while q^N bits <= ratio * ball start bits

    # Analysis
    weyl_threshold_scale: float = 5.0  # verdict threshold is scale / sqrt(N)
    growth_lambdas: list[float] = [2.0]
    default_h_max: int = 5

    # Mobius sieve memory bound
    mobius_max_n: int = 10**8

    # Output
    report_dir: str = "reports"
    log_level: str = "INFO"


@lru_cache(maxsize=1)
def get_settings() -> EquidistSettings:
    """Process-wide settings instance."""
    return EquidistSettings()
