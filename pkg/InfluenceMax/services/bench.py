"""
Experiment harness: repeated runs per (method, k, N) cell, scored by Monte Carlo
spread, compared by rank-sum tests, with convergence and relationship traces.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..core.config import settings
from ..core.exceptions import ConfigurationError, UnknownMethodError
from ..graph.network import Network
from ..models.configs import DiffusionConfig, SolverConfig, SuiteConfig
from ..models.results import ExperimentReport, MethodSummary, RunResult
from ..utils import seeding
from . import baselines
from .diffusion import estimate_spread
from .mtefim import run_named
from .proxy import FITNESS_FUNCTIONS, edv, tis
from .selection import mcss_index, mcss_spreads
from .stats import SpearmanResult, spearman, wilcoxon_rank_sum

logger = logging.getLogger(__name__)

HEURISTICS = ("degree", "pagerank", "sdd", "celf", "greedy")

# name -> (transformations, transfer enabled)
SOLVERS: Dict[str, Tuple[Tuple[str, ...], bool]] = {
    "mtefim": (("edv", "tis"), True),
    "mtefim-nk": (("edv", "tis"), False),
    "edvea": (("edv",), False),
    "tisea": (("tis",), False),
}


class MethodSpec(NamedTuple):
    name: str
    transformations: Tuple[str, ...] = ()
    transfer: bool = False

    @property
    def is_solver(self) -> bool:
        return bool(self.transformations)


class RunOutcome(NamedTuple):
    seeds: List[int]
    wall_time: float
    result: Optional[RunResult]


def known_methods() -> List[str]:
    return list(HEURISTICS) + list(SOLVERS)


def parse_method(name: str) -> MethodSpec:
    """
    Resolve a method name.

    Solver methods accept an explicit transformation list after a colon,
    e.g. ``mtefim:edv+tis`` or ``mtefim-nk:tis``.

    Raises:
        UnknownMethodError: For unregistered names or transformations
    """
    base, _, suffix = name.lower().partition(":")
    if base in HEURISTICS and not suffix:
        return MethodSpec(name)
    if base not in SOLVERS:
        raise UnknownMethodError(name, known_methods())
    transformations, transfer = SOLVERS[base]
    if suffix:
        transformations = tuple(t for t in suffix.split("+") if t)
        unknown = [t for t in transformations if t not in FITNESS_FUNCTIONS]
        if unknown or not transformations:
            raise UnknownMethodError(name, known_methods())
    return MethodSpec(name, transformations, transfer)


def run_method(
    net: Network,
    spec: MethodSpec,
    k: int,
    seed: int,
    population_size: Optional[int] = None,
    evaluations_per_transformation: Optional[int] = None,
    replicas: Optional[int] = None,
    output: str = "soss",
) -> RunOutcome:
    """One run of one method; solvers and greedy draw all randomness from ``seed``."""
    start = time.perf_counter()
    diffusion = DiffusionConfig(
        replicas=replicas or settings.default_replicas,
        base_seed=seed,
        workers=1,
    )
    if spec.is_solver:
        per_transformation = evaluations_per_transformation or settings.default_evaluations_per_transformation
        cfg = SolverConfig(
            population_size=population_size or settings.default_population_size,
            seed_set_size=k,
            max_function_evaluations=per_transformation * len(spec.transformations),
            base_seed=seed,
            transfer_enabled=spec.transfer,
            output=output,
            workers=1,
            diffusion=diffusion,
        )
        result = run_named(net, spec.transformations, cfg)
        return RunOutcome(result.chosen_seeds, time.perf_counter() - start, result)

    base = spec.name.lower()
    if base == "degree":
        chosen = baselines.degree_select(net, k)
    elif base == "pagerank":
        chosen = baselines.pagerank_select(net, k)
    elif base == "sdd":
        chosen = baselines.degree_discount_select(net, k)
    elif base == "celf":
        chosen = baselines.celf_select(net, k, diffusion)
    else:
        chosen = baselines.naive_greedy_select(net, k, diffusion)
    return RunOutcome(chosen.seeds, time.perf_counter() - start, None)


def spearman_similarity(
    net: Network,
    k: int,
    samples: int,
    rng: np.random.Generator,
) -> SpearmanResult:
    """Rank correlation of EDV and TIS over ``samples`` uniform random k-seed sets."""
    if samples < 2:
        raise ConfigurationError(f"similarity needs at least two samples, got {samples}")
    edv_values = np.empty(samples)
    tis_values = np.empty(samples)
    for s in range(samples):
        seeds = rng.choice(net.node_count, size=k, replace=False).tolist()
        edv_values[s] = edv(net, seeds)
        tis_values[s] = tis(net, seeds)
    return spearman(edv_values, tis_values)


class _Cell(NamedTuple):
    method_index: int
    spec: MethodSpec
    k: int
    population_size: Optional[int]
    repeat: int


def _cell_key(cell: _Cell) -> str:
    n = cell.population_size if cell.population_size is not None else "-"
    return f"{cell.spec.name}|k={cell.k}|N={n}|run={cell.repeat}"


def _trace_rows(cell: _Cell, result: RunResult) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
    convergence, trajectory = [], []
    names = result.transformations
    for record in result.trace.records:
        base = {
            "method": cell.spec.name,
            "k": cell.k,
            "population_size": cell.population_size,
            "generation": record.generation,
        }
        row = dict(base)
        for name, evals, best in zip(names, record.evaluations, record.best_fitness):
            row[f"evals_{name}"] = evals
            row[f"best_{name}"] = best
        convergence.append(row)
        if record.relationship:
            trajectory.append({**base, **record.relationship})
    return convergence, trajectory


def _average(rows: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Mean over repeats of every numeric column per (method, k, N, generation)."""
    if not rows:
        return []
    frame = pd.DataFrame(rows)
    frame["population_size"] = frame["population_size"].fillna(-1)
    keys = ["method", "k", "population_size", "generation"]
    averaged = frame.groupby(keys, sort=False).mean(numeric_only=True).reset_index()
    return averaged.to_dict(orient="records")


def run_experiment(net: Network, suite: SuiteConfig) -> ExperimentReport:
    """
    Run every (method, k, N, repeat) cell of ``suite`` and aggregate.

    Each cell's solver seed is derived from the master seed and the cell
    coordinates; the scoring simulation of repeat r at size k uses the same
    stream for every method. Cells may run on ``suite.workers`` threads;
    aggregation follows cell order, so the report does not depend on it.

    Raises:
        UnknownMethodError: If a method name is not registered
    """
    specs = [parse_method(name) for name in suite.methods]
    sizes = suite.population_sizes or [suite.population_size]
    master = suite.master_seed

    cells: List[_Cell] = []
    for m, spec in enumerate(specs):
        for k in suite.k_values:
            for n in (sizes if spec.is_solver else [None]):
                for r in range(suite.repeats):
                    cells.append(_Cell(m, spec, k, n, r))

    def execute(index: int) -> Dict[str, Any]:
        cell = cells[index]
        key = (cell.method_index, cell.k, cell.population_size or 0, cell.repeat)
        seed = seeding.derive_seed(master, seeding.EXPERIMENT, *key)
        outcome = run_method(
            net,
            cell.spec,
            cell.k,
            seed,
            population_size=cell.population_size,
            evaluations_per_transformation=suite.evaluations_per_transformation,
            replicas=suite.replicas,
        )
        scoring = DiffusionConfig(
            replicas=suite.replicas,
            base_seed=seeding.derive_seed(master, seeding.REPLICA, cell.k, cell.repeat),
            workers=1,
        )
        spread = estimate_spread(net, outcome.seeds, scoring).mean

        agreement = None
        if suite.agreement and outcome.result is not None and len(outcome.result.best_seeds) > 1:
            spreads = mcss_spreads(outcome.result.best_seeds, net, scoring)
            by_mc = outcome.result.best_seeds[mcss_index(spreads)]
            agreement = float(set(by_mc) == set(outcome.result.chosen_seeds))

        logger.info("Finished %s: spread %.3f in %.2fs", _cell_key(cell), spread, outcome.wall_time)
        return {"seed": seed, "spread": spread, "outcome": outcome, "agreement": agreement}

    if suite.workers > 1:
        with ThreadPoolExecutor(max_workers=suite.workers) as executor:
            finished = list(executor.map(execute, range(len(cells))))
    else:
        finished = [execute(i) for i in range(len(cells))]

    report = ExperimentReport(
        name=suite.name,
        network=net.name,
        master_seed=master,
        reference=suite.reference,
    )
    groups: Dict[Tuple[int, int, Optional[int]], List[int]] = {}
    convergence_rows: List[Dict[str, Any]] = []
    trajectory_rows: List[Dict[str, Any]] = []
    for index, (cell, done) in enumerate(zip(cells, finished)):
        groups.setdefault((cell.method_index, cell.k, cell.population_size), []).append(index)
        report.run_seeds[_cell_key(cell)] = done["seed"]
        name = cell.spec.name
        report.runtime[name] = report.runtime.get(name, 0.0) + done["outcome"].wall_time
        if done["outcome"].result is not None:
            convergence, trajectory = _trace_rows(cell, done["outcome"].result)
            convergence_rows.extend(convergence)
            trajectory_rows.extend(trajectory)

    for (m, k, n), indices in groups.items():
        spreads = [finished[i]["spread"] for i in indices]
        agreements = [finished[i]["agreement"] for i in indices if finished[i]["agreement"] is not None]
        values = np.asarray(spreads)
        report.rows.append(
            MethodSummary(
                method=specs[m].name,
                k=k,
                population_size=n,
                mean=float(values.mean()),
                std=float(values.std(ddof=1)) if values.size > 1 else 0.0,
                runs=values.size,
                spreads=spreads,
                wall_time=sum(finished[i]["outcome"].wall_time for i in indices),
                agreement=float(np.mean(agreements)) if agreements else None,
            )
        )

    if suite.reference is not None:
        _compare_to_reference(report.rows, suite.reference, suite.alpha)

    if suite.similarity_samples:
        rng = seeding.stream(master, seeding.SIMILARITY)
        similarity = spearman_similarity(net, suite.k_values[0], suite.similarity_samples, rng)
        report.similarity = similarity.coefficient
        report.similarity_p_value = similarity.p_value
        report.similarity_samples = suite.similarity_samples

    report.convergence = _average(convergence_rows)
    report.r_trajectory = _average(trajectory_rows)
    return report


def _compare_to_reference(rows: Sequence[MethodSummary], reference: str, alpha: float) -> None:
    """Rank-sum verdict of every row against the reference row at the same k (and N when both have one)."""
    reference_rows = [row for row in rows if row.method == reference]
    for row in rows:
        if row.method == reference:
            continue
        candidates = [ref for ref in reference_rows if ref.k == row.k]
        matching = [
            ref for ref in candidates
            if ref.population_size is None or row.population_size is None or ref.population_size == row.population_size
        ]
        if not matching or row.runs < 2 or matching[0].runs < 2:
            continue
        test = wilcoxon_rank_sum(row.spreads, matching[0].spreads, alpha)
        row.p_value = test.p_value
        row.verdict = test.verdict
