"""
Output seed-set selection among the per-transformation best individuals.

SOSS ranks every candidate on every transformation and picks the lowest
preference-weighted rank sum. MCSS simulates each candidate and picks the
largest Monte Carlo spread.
"""

import logging
import math
from typing import List, NamedTuple, Optional, Sequence, Union

import numpy as np
from scipy.stats import rankdata

from ..core.exceptions import PreferenceWeightsError
from ..graph.network import Network
from ..models.configs import DiffusionConfig, PREFERENCE_TOLERANCE
from .diffusion import estimate_spread
from .evo import Individual
from .proxy import Transformation

logger = logging.getLogger(__name__)

Candidate = Union[Individual, Sequence[int]]


class SossTable(NamedTuple):
    fitness: np.ndarray          # candidates x transformations
    ranks: np.ndarray            # 1 = best, ties averaged
    cumulative_rank: np.ndarray
    chosen: int


def _genome(candidate: Candidate) -> List[int]:
    if isinstance(candidate, Individual):
        return candidate.genome
    return [int(v) for v in candidate]


def check_preferences(weights: Optional[Sequence[float]], size: int) -> np.ndarray:
    """
    Preference weights C, defaulting to 1/S each.

    Raises:
        PreferenceWeightsError: If there are not S weights in (0, 1] summing to 1
    """
    if weights is None:
        return np.full(size, 1.0 / size)
    weights = [float(c) for c in weights]
    if (
        len(weights) != size
        or any(not 0.0 < c <= 1.0 for c in weights)
        or not math.isclose(sum(weights), 1.0, abs_tol=PREFERENCE_TOLERANCE)
    ):
        raise PreferenceWeightsError(weights)
    return np.asarray(weights)


def rank_candidates(fitness: np.ndarray) -> np.ndarray:
    """Column-wise ranks with 1 for the highest value and averaged ties."""
    return rankdata(-fitness, method="average", axis=0)


def soss_table(
    candidates: Sequence[Candidate],
    transformations: Sequence[Transformation],
    prefs: Optional[Sequence[float]] = None,
) -> SossTable:
    """Evaluate every candidate on every transformation and sum weighted ranks."""
    weights = check_preferences(prefs, len(transformations))
    genomes = [_genome(c) for c in candidates]
    fitness = np.array([[t.fitness(g) for t in transformations] for g in genomes], dtype=np.float64)
    ranks = rank_candidates(fitness)
    cumulative = ranks @ weights
    lowest = cumulative.min()
    chosen = int(np.flatnonzero(cumulative <= lowest + 1e-12)[0])
    return SossTable(fitness, ranks, cumulative, chosen)


def soss(
    candidates: Sequence[Candidate],
    transformations: Sequence[Transformation],
    net: Network,
    prefs: Optional[Sequence[float]] = None,
) -> Individual:
    """
    Pick the candidate with the smallest preference-weighted rank sum.

    Args:
        candidates: The S best individuals, one per transformation
        transformations: The S transformations, bound to ``net``
        net: Network the candidates live on
        prefs: Preference weights C, 1/S each when omitted

    Returns:
        The chosen candidate; ties go to the lower candidate index

    Raises:
        PreferenceWeightsError: If the weights are invalid
    """
    table = soss_table(candidates, transformations, prefs)
    logger.debug("SOSS cumulative ranks %s -> candidate %d", table.cumulative_rank.tolist(), table.chosen)
    return Individual(_genome(candidates[table.chosen]))


def mcss_spreads(
    candidates: Sequence[Candidate],
    net: Network,
    cfg: Optional[DiffusionConfig] = None,
) -> List[float]:
    return [estimate_spread(net, _genome(c), cfg).mean for c in candidates]


def mcss_index(spreads: Sequence[float]) -> int:
    """argmax of the spreads, ties to the lower index."""
    return int(np.argmax(np.asarray(spreads)))


def mcss(
    candidates: Sequence[Candidate],
    net: Network,
    cfg: Optional[DiffusionConfig] = None,
) -> Individual:
    """Pick the candidate with the largest Monte Carlo spread."""
    spreads = mcss_spreads(candidates, net, cfg)
    return Individual(_genome(candidates[mcss_index(spreads)]))
