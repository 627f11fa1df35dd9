"""
Inter-transformation relationship from seed overlap between populations.
"""

import logging
import time
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import ConfigurationError, PopulationMismatchError
from ..utils import seeding
from .evo import Individual, Population

logger = logging.getLogger(__name__)


class RelationshipMatrix:
    """Symmetric S x S matrix of r_ij in [0, 1]; the diagonal is unused and kept at 0."""

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ConfigurationError(f"relationship matrix of shape {values.shape} is not square")
        self.values = values

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, index: Tuple[int, int]) -> float:
        return float(self.values[index])

    def most_related(self, i: int) -> Optional[int]:
        """argmax over j != i of r_ij, ties to the lowest j; None when S = 1."""
        if self.size < 2:
            return None
        row = self.values[i].copy()
        row[i] = -np.inf
        return int(np.argmax(row))

    def as_dict(self) -> Dict[str, float]:
        """Upper triangle keyed ``r_i_j`` with 1-based transformation numbers."""
        return {
            f"r_{i + 1}_{j + 1}": float(self.values[i, j])
            for i in range(self.size)
            for j in range(i + 1, self.size)
        }

    @classmethod
    def zeros(cls, size: int) -> "RelationshipMatrix":
        return cls(np.zeros((size, size)))


def pair_overlaps(first: Population, second: Population) -> List[int]:
    """|set(a) & set(b)| for every (a, b) in first x second, row-major."""
    right = [ind.seeds() for ind in second]
    return [len(a.seeds() & b) for a in first for b in right]


def _check_populations(populations: Sequence[Population], k: int) -> int:
    if not populations:
        raise PopulationMismatchError("no populations given")
    n = len(populations[0])
    for index, population in enumerate(populations):
        if len(population) != n:
            raise PopulationMismatchError(
                f"population {index} has {len(population)} members, expected {n}"
            )
        for ind in population:
            if ind.k != k:
                raise PopulationMismatchError(
                    f"population {index} holds a genome of length {ind.k}, expected {k}"
                )
    if n == 0:
        raise PopulationMismatchError("populations are empty")
    return n


def estimate_relationship(populations: Sequence[Population], k: int) -> RelationshipMatrix:
    """
    r_ij = (sum of pairwise seed overlaps between P_i and P_j) / (k * N * N).

    Every cross-population pair of individuals is compared by set
    intersection, so the cost grows with S^2 N^2 k.

    Raises:
        PopulationMismatchError: If populations differ in N or genome length
    """
    n = _check_populations(populations, k)
    size = len(populations)
    values = np.zeros((size, size))
    for i in range(size):
        for j in range(i + 1, size):
            total = sum(pair_overlaps(populations[i], populations[j]))
            values[i, j] = values[j, i] = total / (k * n * n)
    return RelationshipMatrix(values)


def random_population(node_count: int, k: int, n: int, rng: np.random.Generator, owner: int = 0) -> Population:
    """N uniformly random k-subsets of range(node_count)."""
    return Population(
        [Individual(rng.choice(node_count, size=k, replace=False)) for _ in range(n)],
        owner,
    )


def time_relationship(
    population_sizes: Sequence[int],
    k: int = 30,
    node_count: int = 1000,
    transformations: int = 2,
    repeats: int = 3,
    seed: int = 0,
) -> List[Dict[str, float]]:
    """
    Wall time of :func:`estimate_relationship` for each population size.

    Returns rows ``{"population_size", "seconds"}`` with the best of
    ``repeats`` timings, for checking how the cost scales with N.
    """
    rows = []
    for index, n in enumerate(population_sizes):
        rng = seeding.stream(seed, seeding.SIMILARITY, index)
        populations = [random_population(node_count, k, n, rng, owner=i) for i in range(transformations)]
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            estimate_relationship(populations, k)
            best = min(best, time.perf_counter() - start)
        logger.debug("Relationship estimate for N=%d took %.4fs", n, best)
        rows.append({"population_size": float(n), "seconds": best})
    return rows
