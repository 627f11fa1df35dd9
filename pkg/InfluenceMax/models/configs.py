"""
Input models: run parameters for diffusion, solvers, generators and suites.
"""

import math
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from ..core.config import settings

PREFERENCE_TOLERANCE = 1e-9


class DiffusionConfig(BaseModel):
    """Monte Carlo spread estimation parameters."""
    replicas: int = Field(default_factory=lambda: settings.default_replicas, ge=1)
    base_seed: int = Field(default=0, ge=0, lt=2**64)
    workers: int = Field(default_factory=lambda: settings.default_workers, ge=1)


class SolverConfig(BaseModel):
    """Parameters of the multi-transformation evolutionary solver."""
    population_size: int = Field(default_factory=lambda: settings.default_population_size, ge=2)
    seed_set_size: int = Field(..., ge=1)
    max_function_evaluations: Optional[int] = Field(default=None, ge=1)
    pc: float = Field(default=1.0, ge=0.0, le=1.0)
    pm: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    preferences: Optional[List[float]] = None
    base_seed: int = Field(default=0, ge=0, lt=2**64)
    transfer_enabled: bool = True
    output: Literal["soss", "mcss"] = "soss"
    workers: int = Field(default_factory=lambda: settings.default_workers, ge=1)
    diffusion: DiffusionConfig = Field(default_factory=DiffusionConfig)

    @field_validator("preferences")
    @classmethod
    def _check_preferences(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is None:
            return value
        if not value or any(not 0.0 < c <= 1.0 for c in value):
            raise ValueError("preferences must lie in (0, 1]")
        if not math.isclose(sum(value), 1.0, abs_tol=PREFERENCE_TOLERANCE):
            raise ValueError("preferences must sum to 1")
        return value

    def mutation_rate(self) -> float:
        return self.pm if self.pm is not None else 1.0 / self.seed_set_size

    def evaluation_budget(self, transformations: int) -> int:
        """Global MFE, defaulting to 5000 evaluations per transformation."""
        if self.max_function_evaluations is not None:
            return self.max_function_evaluations
        return settings.default_evaluations_per_transformation * transformations

    def preference_weights(self, transformations: int) -> List[float]:
        if self.preferences is None:
            return [1.0 / transformations] * transformations
        return list(self.preferences)


class GeneratorSpec(BaseModel):
    """GN benchmark parameters."""
    communities: int = Field(default=4, ge=1)
    nodes: int = Field(default=128, ge=1)
    degree: int = Field(default=16, ge=0)
    mu: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    out_links: Optional[int] = Field(default=None, ge=0)
    p: float = Field(default=0.05, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_divisible(self) -> "GeneratorSpec":
        if self.nodes % self.communities:
            raise ValueError("nodes must be divisible by communities")
        if self.mu is not None and self.out_links is not None:
            raise ValueError("give either mu or out_links, not both")
        return self


class SuiteConfig(BaseModel):
    """An experiment suite: one network, several methods, a k sweep."""
    name: str = "suite"
    network: Optional[str] = None
    gn: Optional[GeneratorSpec] = None
    directed: bool = False
    weighted: bool = False
    default_p: float = Field(default=0.05, ge=0.0, le=1.0)
    methods: List[str] = Field(..., min_length=1)
    reference: Optional[str] = None
    k_values: List[int] = Field(default_factory=lambda: [30], min_length=1)
    population_sizes: Optional[List[int]] = None
    repeats: int = Field(default=20, ge=1)
    replicas: int = Field(default_factory=lambda: settings.default_replicas, ge=1)
    population_size: int = Field(default_factory=lambda: settings.default_population_size, ge=2)
    evaluations_per_transformation: int = Field(
        default_factory=lambda: settings.default_evaluations_per_transformation, ge=1
    )
    master_seed: int = Field(default=0, ge=0)
    similarity_samples: Optional[int] = Field(default=None, ge=2)
    agreement: bool = False
    alpha: float = Field(default_factory=lambda: settings.wilcoxon_alpha, gt=0.0, lt=1.0)
    workers: int = Field(default_factory=lambda: settings.default_workers, ge=1)

    @field_validator("k_values", "population_sizes")
    @classmethod
    def _check_positive(cls, value: Optional[List[int]]) -> Optional[List[int]]:
        if value is not None and any(v < 1 for v in value):
            raise ValueError("sweep values must be positive")
        return value

    @model_validator(mode="after")
    def _check_network_source(self) -> "SuiteConfig":
        if (self.network is None) == (self.gn is None):
            raise ValueError("give exactly one of network or gn")
        if self.reference is not None and self.reference not in self.methods:
            raise ValueError("reference must be one of the methods")
        return self


class CliConfig(BaseModel):
    """Resolved command-line parameters after merging a config file with flags."""
    subcommand: Literal["generate", "run", "evaluate", "experiment"]
    network: Optional[str] = None
    gn: Optional[GeneratorSpec] = None
    directed: bool = False
    weighted: bool = False
    default_p: float = Field(default=0.05, ge=0.0, le=1.0)
    algo: str = "mtefim"
    transformations: List[str] = Field(default_factory=lambda: ["edv", "tis"])
    k: int = Field(default=30, ge=1)
    population_size: int = Field(default_factory=lambda: settings.default_population_size, ge=2)
    max_function_evaluations: Optional[int] = Field(default=None, ge=1)
    pc: float = Field(default=1.0, ge=0.0, le=1.0)
    pm: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    preferences: Optional[List[float]] = None
    transfer_enabled: bool = True
    output_policy: Literal["soss", "mcss"] = "soss"
    replicas: int = Field(default_factory=lambda: settings.default_replicas, ge=1)
    seed: int = Field(default=0, ge=0)
    workers: int = Field(default_factory=lambda: settings.default_workers, ge=1)
    out: str = Field(default_factory=lambda: settings.output_dir)
    seeds_file: Optional[str] = None
    suite: Optional[str] = None

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            population_size=self.population_size,
            seed_set_size=self.k,
            max_function_evaluations=self.max_function_evaluations,
            pc=self.pc,
            pm=self.pm,
            preferences=self.preferences,
            base_seed=self.seed,
            transfer_enabled=self.transfer_enabled,
            output=self.output_policy,
            workers=self.workers,
            diffusion=self.diffusion_config(),
        )

    def diffusion_config(self) -> DiffusionConfig:
        return DiffusionConfig(replicas=self.replicas, base_seed=self.seed, workers=self.workers)
