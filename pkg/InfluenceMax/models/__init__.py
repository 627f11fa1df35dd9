from .configs import DiffusionConfig, SolverConfig, GeneratorSpec, SuiteConfig, CliConfig
from .results import (
    SpreadEstimate,
    BaselineResult,
    GenerationRecord,
    RunTrace,
    RunResult,
    TransferEvent,
    MethodSummary,
    ExperimentReport,
)

__all__ = [
    "DiffusionConfig",
    "SolverConfig",
    "GeneratorSpec",
    "SuiteConfig",
    "CliConfig",
    "SpreadEstimate",
    "BaselineResult",
    "GenerationRecord",
    "RunTrace",
    "RunResult",
    "TransferEvent",
    "MethodSummary",
    "ExperimentReport",
]
