"""
Reference seed-selection methods: degree, PageRank, degree discount, greedy and single-proxy EAs.
"""

import heapq
import logging
import time
from typing import Callable, List, Optional

import numpy as np

from ..core.config import settings
from ..core.exceptions import ConfigurationError, UnreparableGenomeError
from ..graph.network import Network
from ..models.configs import DiffusionConfig, SolverConfig
from ..models.results import BaselineResult
from .diffusion import estimate_spread
from .evo import top_degree_nodes
from .mtefim import run
from .proxy import Transformation

logger = logging.getLogger(__name__)

SpreadFunction = Callable[[List[int]], float]

# Marginal gains are compared at this precision.
GAIN_DECIMALS = 12


def _check_k(net: Network, k: int) -> None:
    if k < 1:
        raise ConfigurationError("k must be at least 1")
    if k > net.node_count:
        raise UnreparableGenomeError(k, net.node_count)


def _top_by_score(scores: np.ndarray, k: int) -> List[int]:
    """Indices of the k largest scores, ties by ascending id."""
    order = np.lexsort((np.arange(scores.size), -np.round(scores, GAIN_DECIMALS)))
    return [int(v) for v in order[:k]]


def degree_select(net: Network, k: int) -> BaselineResult:
    """Top-k nodes by degree."""
    start = time.perf_counter()
    _check_k(net, k)
    seeds = top_degree_nodes(net, k)
    return BaselineResult(
        method="degree",
        seeds=seeds,
        scores=[float(net.degrees[v]) for v in seeds],
        wall_time=time.perf_counter() - start,
    )


def pagerank_scores(
    net: Network,
    damping: Optional[float] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> np.ndarray:
    """
    PageRank by power iteration until the L1 change drops below ``tol``.

    Dangling nodes spread their rank uniformly. If ``max_iter`` runs out
    first, a warning is logged and the last iterate is returned.
    """
    damping = settings.pagerank_damping if damping is None else damping
    tol = settings.pagerank_tol if tol is None else tol
    max_iter = settings.pagerank_max_iter if max_iter is None else max_iter

    n = net.node_count
    out_degree = net.degrees.astype(np.float64)
    dangling = out_degree == 0
    inverse = np.divide(1.0, out_degree, out=np.zeros(n), where=~dangling)
    transpose = net.adjacency_matrix.T.tocsr()

    x = np.full(n, 1.0 / n)
    for iteration in range(1, max_iter + 1):
        spread = transpose @ (x * inverse)
        x_new = damping * (spread + x[dangling].sum() / n) + (1.0 - damping) / n
        residual = float(np.abs(x_new - x).sum())
        x = x_new
        if residual < tol:
            logger.debug("PageRank converged after %d iterations", iteration)
            return x

    logger.warning("PageRank did not converge in %d iterations (residual %.3e)", max_iter, residual)
    return x


def pagerank_select(
    net: Network,
    k: int,
    damping: Optional[float] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> BaselineResult:
    """Top-k nodes by PageRank score."""
    start = time.perf_counter()
    _check_k(net, k)
    scores = pagerank_scores(net, damping, tol, max_iter)
    seeds = _top_by_score(scores, k)
    return BaselineResult(
        method="pagerank",
        seeds=seeds,
        scores=[float(scores[v]) for v in seeds],
        wall_time=time.perf_counter() - start,
    )


def degree_discount_select(net: Network, k: int, p: Optional[float] = None) -> BaselineResult:
    """
    DegreeDiscountIC.

    After each pick u, every unselected neighbor v gets t_v += 1 and
    dd_v = d_v - 2 t_v - (d_v - t_v) t_v p. Ties go to the lower id.
    """
    start = time.perf_counter()
    _check_k(net, k)
    if p is None:
        p = net.uniform_p
    if p is None:
        raise ConfigurationError("degree discount needs a propagation probability")

    degree = net.degrees.astype(np.float64)
    discounted = degree.copy()
    selected_neighbors = np.zeros(net.node_count)
    chosen = np.zeros(net.node_count, dtype=bool)
    adjacency = net.neighbor_lists

    seeds, scores = [], []
    for _ in range(k):
        masked = np.where(chosen, -np.inf, discounted)
        u = int(np.argmax(masked))
        seeds.append(u)
        scores.append(float(discounted[u]))
        chosen[u] = True
        for v in adjacency[u]:
            if chosen[v]:
                continue
            selected_neighbors[v] += 1
            t = selected_neighbors[v]
            discounted[v] = degree[v] - 2 * t - (degree[v] - t) * t * p

    return BaselineResult(
        method="sdd",
        seeds=seeds,
        scores=scores,
        wall_time=time.perf_counter() - start,
    )


def _spread_function(net: Network, cfg: Optional[DiffusionConfig], spread: Optional[SpreadFunction]) -> SpreadFunction:
    if spread is not None:
        return spread
    return lambda seeds: estimate_spread(net, seeds, cfg).mean


def celf_select(
    net: Network,
    k: int,
    cfg: Optional[DiffusionConfig] = None,
    spread: Optional[SpreadFunction] = None,
) -> BaselineResult:
    """
    Lazy greedy (CELF).

    A max-heap holds marginal-gain upper bounds; a stale top is
    re-evaluated and pushed back until the top is fresh for the current
    seed set. ``spread`` replaces the Monte Carlo estimate, e.g. with the
    exact oracle.
    """
    start = time.perf_counter()
    _check_k(net, k)
    if net.node_count > settings.celf_node_warning:
        logger.warning(
            "CELF on %d nodes will run many Monte Carlo estimates; expect a long runtime",
            net.node_count,
        )
    sigma = _spread_function(net, cfg, spread)

    heap = [(-round(sigma([v]), GAIN_DECIMALS), v, 0) for v in range(net.node_count)]
    heapq.heapify(heap)

    seeds: List[int] = []
    scores: List[float] = []
    current = 0.0
    while len(seeds) < k:
        neg_gain, v, fresh_at = heapq.heappop(heap)
        if fresh_at == len(seeds):
            seeds.append(v)
            scores.append(-neg_gain)
            if len(seeds) < k:
                current = sigma(seeds)
            continue
        gain = round(sigma(seeds + [v]) - current, GAIN_DECIMALS)
        heapq.heappush(heap, (-gain, v, len(seeds)))

    return BaselineResult(
        method="celf",
        seeds=seeds,
        scores=scores,
        wall_time=time.perf_counter() - start,
    )


def naive_greedy_select(
    net: Network,
    k: int,
    cfg: Optional[DiffusionConfig] = None,
    spread: Optional[SpreadFunction] = None,
) -> BaselineResult:
    """Plain greedy: every round re-evaluates every remaining node."""
    start = time.perf_counter()
    _check_k(net, k)
    sigma = _spread_function(net, cfg, spread)

    seeds: List[int] = []
    scores: List[float] = []
    current = 0.0
    for _ in range(k):
        best, best_gain = -1, -np.inf
        for v in range(net.node_count):
            if v in seeds:
                continue
            gain = round(sigma(seeds + [v]) - current, GAIN_DECIMALS)
            if gain > best_gain:
                best, best_gain = v, gain
        seeds.append(best)
        scores.append(float(best_gain))
        if len(seeds) < k:
            current = sigma(seeds)

    return BaselineResult(
        method="greedy",
        seeds=seeds,
        scores=scores,
        wall_time=time.perf_counter() - start,
    )


def single_transformation_ea(net: Network, which: str, cfg: SolverConfig) -> BaselineResult:
    """EDVEA / TISEA: the solver with a single transformation."""
    start = time.perf_counter()
    result = run(net, [Transformation(0, which, net)], cfg)
    return BaselineResult(
        method=f"{which.lower()}ea",
        seeds=result.chosen_seeds,
        scores=[result.best_fitness[0]],
        wall_time=time.perf_counter() - start,
    )
