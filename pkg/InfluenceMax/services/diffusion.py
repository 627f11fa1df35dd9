"""
Independent cascade spread: Monte Carlo estimation and an exact oracle for tiny graphs.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional

import numpy as np

from ..core.config import settings
from ..core.exceptions import GraphTooLargeError
from ..graph.network import Network
from ..models.configs import DiffusionConfig
from ..models.results import SpreadEstimate
from ..utils import seeding
from ..utils.validators import SeedSetValidator

logger = logging.getLogger(__name__)


def simulate_ic_once(net: Network, seeds: Iterable[int], rng: np.random.Generator) -> int:
    """
    Run one independent cascade and return the number of active nodes.

    Each newly active node tries every inactive out-neighbor once, in
    ascending id order, succeeding with probability p(u, v).
    """
    seeds = SeedSetValidator.validate(seeds, net.node_count)
    adjacency = net.neighbor_lists
    offsets = net.offsets
    probs = net.probs

    active = set(seeds)
    frontier = list(seeds)
    while frontier:
        next_frontier = []
        for u in frontier:
            start = int(offsets[u])
            for j, v in enumerate(adjacency[u]):
                if v not in active and rng.random() < probs[start + j]:
                    active.add(v)
                    next_frontier.append(v)
        frontier = next_frontier
    return len(active)


def simulate_ic_block(
    net: Network,
    seeds: List[int],
    replicas: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Run ``replicas`` cascades side by side; returns the per-replica active counts.

    Every node enters the frontier at most once per replica, so each arc is
    tried at most once, as the cascade requires.
    """
    n = net.node_count
    offsets, targets, probs = net.offsets, net.targets, net.probs

    active = np.zeros((replicas, n), dtype=bool)
    active[:, seeds] = True
    frontier = active.copy()

    while True:
        rows, nodes = np.nonzero(frontier)
        starts = offsets[nodes]
        counts = offsets[nodes + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break

        first = np.cumsum(counts) - counts
        arcs = np.repeat(starts, counts) + (np.arange(total) - np.repeat(first, counts))
        arc_rows = np.repeat(rows, counts)
        live = rng.random(total) < probs[arcs]

        reached = np.zeros_like(active)
        reached[arc_rows[live], targets[arcs[live]]] = True
        reached &= ~active
        if not reached.any():
            break
        active |= reached
        frontier = reached

    return active.sum(axis=1)


def estimate_spread(net: Network, seeds: Iterable[int], cfg: Optional[DiffusionConfig] = None) -> SpreadEstimate:
    """
    Monte Carlo estimate of sigma(A).

    Replicas are cut into fixed-size blocks; block ``b`` draws from the stream
    keyed by (base_seed, b), so the estimate does not depend on ``workers``.
    """
    cfg = cfg or DiffusionConfig()
    seeds = SeedSetValidator.validate(seeds, net.node_count)
    block_size = settings.replica_block_size
    sizes = [min(block_size, cfg.replicas - start) for start in range(0, cfg.replicas, block_size)]

    def run_block(index: int) -> np.ndarray:
        rng = seeding.stream(cfg.base_seed, seeding.REPLICA, index)
        return simulate_ic_block(net, seeds, sizes[index], rng)

    if cfg.workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            blocks = list(executor.map(run_block, range(len(sizes))))
    else:
        blocks = [run_block(i) for i in range(len(sizes))]

    counts = np.concatenate(blocks).astype(np.float64)
    mean = float(counts.mean())
    std_error = float(counts.std(ddof=1) / math.sqrt(counts.size)) if counts.size > 1 else 0.0
    return SpreadEstimate(mean=mean, std_error=std_error, replicas=cfg.replicas)


def exact_spread_small(net: Network, seeds: Iterable[int]) -> float:
    """
    Exact sigma(A) by enumerating every live/blocked edge subset.

    Uses the live-edge form of the cascade: each edge is live independently
    with its probability (one coin per undirected edge, one per arc when
    directed) and the spread is the expected number of nodes reachable from
    the seeds through live edges.

    Raises:
        GraphTooLargeError: If the network has more edges than the oracle allows
    """
    seeds = SeedSetValidator.validate(seeds, net.node_count)
    edges = net.edges()
    limit = settings.exact_oracle_max_edges
    if len(edges) > limit:
        raise GraphTooLargeError(len(edges), limit)
    if not edges:
        return float(len(seeds))

    touched = sorted({u for u, _, _ in edges} | {v for _, v, _ in edges} | set(seeds))
    column = {v: i for i, v in enumerate(touched)}
    subsets = np.arange(1 << len(edges), dtype=np.int64)

    weights = np.ones(subsets.size)
    live = []
    for e, (_, _, p) in enumerate(edges):
        bit = ((subsets >> e) & 1).astype(bool)
        weights *= np.where(bit, p, 1.0 - p)
        live.append(bit)

    reach = np.zeros((subsets.size, len(touched)), dtype=bool)
    reach[:, [column[s] for s in seeds]] = True
    changed = True
    while changed:
        changed = False
        for e, (u, v, _) in enumerate(edges):
            cu, cv = column[u], column[v]
            grown = reach[:, cu] & live[e] & ~reach[:, cv]
            if grown.any():
                reach[:, cv] |= grown
                changed = True
            if not net.directed:
                grown = reach[:, cv] & live[e] & ~reach[:, cu]
                if grown.any():
                    reach[:, cu] |= grown
                    changed = True

    return float(weights @ reach.sum(axis=1))
