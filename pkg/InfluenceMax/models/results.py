"""
Result models.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class SpreadEstimate(BaseModel):
    """Monte Carlo estimate of the expected spread sigma(A)."""
    mean: float
    std_error: float = Field(..., ge=0.0)
    replicas: int = Field(..., ge=1)


class BaselineResult(BaseModel):
    """Seed set chosen by one method."""
    method: str
    seeds: List[int]
    scores: List[float]
    wall_time: float = Field(..., ge=0.0)


class TransferEvent(BaseModel):
    """One transfer decision for a target transformation in one generation."""
    generation: int = 0
    target: int
    source: int
    r: float
    u: float
    count: int = Field(..., ge=0)
    positions: List[int] = Field(default_factory=list)

    @property
    def fired(self) -> bool:
        return self.count > 0


class GenerationRecord(BaseModel):
    """One row of the solver trace."""
    generation: int
    evaluations: List[int]
    best_fitness: List[float]
    relationship: Dict[str, float] = Field(default_factory=dict)
    transferred: List[int]
    active: List[bool]


class RunTrace(BaseModel):
    """Per-generation history of a solver run."""
    transformations: List[str]
    records: List[GenerationRecord] = Field(default_factory=list)
    transfers: List[TransferEvent] = Field(default_factory=list)


class RunResult(BaseModel):
    """Outcome of a solver run."""
    transformations: List[str]
    best_seeds: List[List[int]]
    best_fitness: List[float]
    cross_fitness: List[List[float]]
    cumulative_rank: List[float]
    chosen_index: int
    chosen_seeds: List[int]
    selection: str
    candidate_spreads: Optional[List[float]] = None
    evaluations: List[int]
    trace: RunTrace


class MethodSummary(BaseModel):
    """Aggregate spread of one method at one (k, N) cell."""
    method: str
    k: int
    population_size: Optional[int] = None
    mean: float
    std: float
    runs: int = Field(..., ge=1)
    spreads: List[float]
    wall_time: float
    p_value: Optional[float] = None
    verdict: Optional[str] = None
    agreement: Optional[float] = None


class ExperimentReport(BaseModel):
    """Everything the harness produces for one suite."""
    name: str
    network: str
    master_seed: int
    reference: Optional[str] = None
    rows: List[MethodSummary] = Field(default_factory=list)
    runtime: Dict[str, float] = Field(default_factory=dict)
    similarity: Optional[float] = None
    similarity_p_value: Optional[float] = None
    run_seeds: Dict[str, int] = Field(default_factory=dict)
    similarity_samples: Optional[int] = None
    convergence: List[Dict[str, Any]] = Field(default_factory=list)
    r_trajectory: List[Dict[str, Any]] = Field(default_factory=list)
