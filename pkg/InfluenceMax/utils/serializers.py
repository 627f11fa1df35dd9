"""
Serialization of run results, traces and experiment reports to JSON and CSV.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from ..core.exceptions import OutputWriteError
from ..graph.network import Network
from ..models.results import ExperimentReport, RunResult, RunTrace, SpreadEstimate

PathLike = Union[str, Path]


def trace_frame(trace: RunTrace) -> pd.DataFrame:
    """
    One row per generation.

    Columns: generation, evals_i, best_i, r_i_j, transferred_i, with i and
    j the 1-based transformation numbers.
    """
    size = len(trace.transformations)
    pairs = [f"r_{i + 1}_{j + 1}" for i in range(size) for j in range(i + 1, size)]
    rows = []
    for record in trace.records:
        row: Dict[str, Any] = {"generation": record.generation}
        for i in range(size):
            row[f"evals_{i + 1}"] = record.evaluations[i]
        for i in range(size):
            row[f"best_{i + 1}"] = record.best_fitness[i]
        for key in pairs:
            row[key] = record.relationship.get(key, 0.0)
        for i in range(size):
            row[f"transferred_{i + 1}"] = record.transferred[i]
        rows.append(row)

    columns = (
        ["generation"]
        + [f"evals_{i + 1}" for i in range(size)]
        + [f"best_{i + 1}" for i in range(size)]
        + pairs
        + [f"transferred_{i + 1}" for i in range(size)]
    )
    return pd.DataFrame(rows, columns=columns)


def labelled(net: Network, seeds: List[int]) -> List[str]:
    return [str(net.label(v)) for v in seeds]


def run_summary(
    net: Network,
    result: RunResult,
    algorithm: str,
    spread: Optional[SpreadEstimate] = None,
    config: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """JSON-ready solver outcome with seed sets under original node labels."""
    summary: Dict[str, Any] = {
        "algorithm": algorithm,
        "network": net.name,
        "transformations": result.transformations,
        "selection": result.selection,
        "candidates": [
            {
                "transformation": name,
                "seeds": labelled(net, seeds),
                "fitness": fitness,
                "cross_fitness": dict(zip(result.transformations, cross)),
                "cumulative_rank": rank,
            }
            for name, seeds, fitness, cross, rank in zip(
                result.transformations,
                result.best_seeds,
                result.best_fitness,
                result.cross_fitness,
                result.cumulative_rank,
            )
        ],
        "chosen_index": result.chosen_index,
        "chosen_seeds": labelled(net, result.chosen_seeds),
        "evaluations": result.evaluations,
        "generations": len(result.trace.records) - 1,
        "transfers": sum(1 for event in result.trace.transfers if event.fired),
    }
    if result.candidate_spreads is not None:
        summary["candidate_spreads"] = result.candidate_spreads
    if spread is not None:
        summary["spread"] = spread.model_dump()
    if config is not None:
        summary["config"] = config
    return summary


def seeds_summary(
    net: Network,
    method: str,
    seeds: List[int],
    spread: Optional[SpreadEstimate] = None,
    scores: Optional[List[float]] = None,
    config: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """JSON-ready outcome of a method that only yields a seed set."""
    summary: Dict[str, Any] = {
        "algorithm": method,
        "network": net.name,
        "chosen_seeds": labelled(net, seeds),
    }
    if scores is not None:
        summary["scores"] = scores
    if spread is not None:
        summary["spread"] = spread.model_dump()
    if config is not None:
        summary["config"] = config
    return summary


class ResultWriter:
    """Writes result files below one output directory."""

    def __init__(self, out_dir: PathLike):
        self.out_dir = Path(out_dir)

    def path(self, name: str) -> Path:
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputWriteError(str(self.out_dir), e)
        return self.out_dir / name

    def write_json(self, name: str, payload: Any) -> Path:
        """Stable JSON: sorted keys, fixed indentation, trailing newline."""
        path = self.path(name)
        try:
            path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        except (OSError, TypeError, ValueError) as e:
            raise OutputWriteError(str(path), e)
        return path

    def write_csv(self, name: str, frame: pd.DataFrame) -> Path:
        path = self.path(name)
        try:
            frame.to_csv(path, index=False)
        except OSError as e:
            raise OutputWriteError(str(path), e)
        return path

    def write_trace(self, trace: RunTrace, name: str = "trace.csv") -> Path:
        return self.write_csv(name, trace_frame(trace))

    def write_report(self, report: ExperimentReport) -> List[Path]:
        """report.json plus spread_vs_k.csv, convergence.csv, r_trajectory.csv and runtime.csv."""
        paths = [self.write_json("report.json", report.model_dump(mode="json"))]

        spread_rows = [
            {
                "method": row.method,
                "k": row.k,
                "population_size": row.population_size,
                "mean": row.mean,
                "std": row.std,
                "runs": row.runs,
                "p_value": row.p_value,
                "verdict": row.verdict,
                "agreement": row.agreement,
            }
            for row in report.rows
        ]
        paths.append(self.write_csv("spread_vs_k.csv", pd.DataFrame(spread_rows)))
        paths.append(self.write_csv("convergence.csv", pd.DataFrame(report.convergence)))
        paths.append(self.write_csv("r_trajectory.csv", pd.DataFrame(report.r_trajectory)))
        runtime = pd.DataFrame(
            [{"method": method, "seconds": seconds} for method, seconds in report.runtime.items()]
        )
        paths.append(self.write_csv("runtime.csv", runtime))
        return paths
