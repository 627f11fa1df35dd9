"""
Library configuration.
"""

from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field


class Settings(BaseSettings):
    """Library settings."""

    # Monte Carlo
    default_replicas: int = Field(default=10000, ge=1)
    replica_block_size: int = Field(default=250, ge=1)  # replicas per RNG stream
    exact_oracle_max_edges: int = Field(default=20, ge=1)

    # Solver defaults
    default_population_size: int = Field(default=100, ge=2)
    default_evaluations_per_transformation: int = Field(default=5000, ge=1)
    default_workers: int = Field(default=1, ge=1)

    # Baselines
    celf_node_warning: int = Field(default=2000, ge=1)
    pagerank_damping: float = Field(default=0.85, gt=0.0, lt=1.0)
    pagerank_tol: float = Field(default=1e-8, gt=0.0)
    pagerank_max_iter: int = Field(default=200, ge=1)

    # Benchmark harness
    similarity_samples: int = Field(default=10000, ge=2)
    wilcoxon_alpha: float = Field(default=0.05, gt=0.0, lt=1.0)

    # Output
    output_dir: str = Field(default="results")
    log_level: str = Field(default="INFO")

    app_name: str = "InfluenceMax"
    app_version: str = "1.0.0"

    model_config = SettingsConfigDict(
        env_prefix="IM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


settings = Settings()
