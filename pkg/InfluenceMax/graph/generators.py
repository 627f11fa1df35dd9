"""
GN community benchmark generator.
"""

import logging
from typing import List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from ..core.exceptions import GraphConstructionError
from ..models.configs import GeneratorSpec
from ..utils import seeding
from .network import Network

logger = logging.getLogger(__name__)

MAX_REPAIR_ROUNDS = 200
DEFAULT_OUT_LINKS = 1


class GNGraph:
    """A generated GN network together with its community labels."""

    def __init__(self, network: Network, communities: List[int], residual_deviation: int):
        self.network = network
        self.communities = communities
        self.residual_deviation = residual_deviation

    def cut_edges(self) -> int:
        """Number of edges joining different communities."""
        return sum(
            1 for u, v, _ in self.network.edges()
            if self.communities[u] != self.communities[v]
        )


def mixing_from_out_links(out_links: int, degree: int) -> float:
    """Legacy integer mode: ``out_links`` external stubs per node of ``degree``."""
    if degree <= 0 or not 0 <= out_links <= degree:
        raise GraphConstructionError(f"out-links {out_links} not in [0, {degree}]")
    return out_links / degree


def generate_gn(
    communities: int,
    nodes: int,
    degree: int,
    mu: float,
    rng: np.random.Generator,
    p: float = 0.05,
    name: Optional[str] = None,
) -> GNGraph:
    """
    Generate a GN benchmark network.

    Nodes are split into ``communities`` equal blocks of consecutive ids. Each
    node gets ``degree`` stubs; each stub independently points outside the
    node's community with probability ``mu``. Internal stubs are realised as a
    simple graph per community, external stubs are matched across
    communities and repaired by edge swaps. Stubs that cannot be placed are
    dropped and reported as residual degree deviation.

    Raises:
        GraphConstructionError: If the degree sequence cannot be realised,
            including a degree of community size or more
    """
    if communities <= 0 or nodes <= 0:
        raise GraphConstructionError("communities and nodes must be positive")
    if nodes % communities:
        raise GraphConstructionError(f"{nodes} nodes do not split into {communities} communities")
    if not 0.0 <= mu <= 1.0:
        raise GraphConstructionError(f"mixing parameter {mu} outside [0, 1]")
    if degree < 0:
        raise GraphConstructionError("degree must be non-negative")
    if (nodes * degree) % 2:
        raise GraphConstructionError(f"{nodes} nodes of odd degree {degree} leave a dangling stub")

    size = nodes // communities
    if degree > size - 1:
        raise GraphConstructionError(f"degree {degree} exceeds community size {size} - 1")
    labels = [v // size for v in range(nodes)]

    external = rng.binomial(degree, mu, size=nodes) if degree else np.zeros(nodes, dtype=np.int64)
    if communities == 1:
        external[:] = 0
    internal = degree - external

    # Even internal totals per block leave an even external total.
    for c in range(communities):
        block = slice(c * size, (c + 1) * size)
        if internal[block].sum() % 2:
            _shift_one_stub(internal, external, block, size - 1, communities, rng)

    edges: Set[Tuple[int, int]] = set()
    for c in range(communities):
        offset = c * size
        block_edges = _realise_block(internal[offset:offset + size].tolist(), rng)
        edges.update((offset + u, offset + v) for u, v in block_edges)

    edges.update(_match_external(external.tolist(), labels, edges, rng))

    realised = np.zeros(nodes, dtype=np.int64)
    for u, v in edges:
        realised[u] += 1
        realised[v] += 1
    residual = int(np.abs(realised - degree).sum())
    if residual:
        logger.warning("GN generator left residual degree deviation %d", residual)

    network = Network(
        nodes,
        ((u, v, p) for u, v in sorted(edges)),
        directed=False,
        uniform_p=p,
        name=name or f"gn-{communities}x{size}-d{degree}-mu{mu:g}",
    )
    return GNGraph(network, labels, residual)


def _shift_one_stub(internal, external, block, cap, communities, rng):
    """Flip one stub of a block between internal and external to fix parity."""
    candidates = [
        v for v in range(block.start, block.stop)
        if internal[v] < cap and external[v] > 0
    ]
    if candidates:
        v = int(rng.choice(candidates))
        external[v] -= 1
        internal[v] += 1
        return
    candidates = [v for v in range(block.start, block.stop) if internal[v] > 0]
    if communities > 1 and candidates:
        v = int(rng.choice(candidates))
        internal[v] -= 1
        external[v] += 1
        return
    raise GraphConstructionError("internal stub count is odd and cannot be rebalanced")


def _realise_block(sequence: List[int], rng: np.random.Generator) -> List[Tuple[int, int]]:
    """Random simple graph with the given degree sequence."""
    if not any(sequence):
        return []
    if not nx.is_graphical(sequence):
        raise GraphConstructionError(f"degree sequence {sorted(sequence)} is not graphical")

    seed = int(rng.integers(2**32))
    try:
        graph = nx.random_degree_sequence_graph(sequence, seed=seed, tries=20)
    except (nx.NetworkXUnfeasible, nx.NetworkXError):
        graph = nx.havel_hakimi_graph(sequence)
        swaps = graph.number_of_edges()
        if swaps >= 2:
            try:
                nx.double_edge_swap(graph, nswap=swaps, max_tries=swaps * 20, seed=seed)
            except nx.NetworkXAlgorithmError:
                pass
    return [(min(u, v), max(u, v)) for u, v in graph.edges()]


def _match_external(
    stubs: List[int],
    labels: List[int],
    taken: Set[Tuple[int, int]],
    rng: np.random.Generator,
) -> Set[Tuple[int, int]]:
    """Pair external stubs between different communities without multi-edges."""
    pool = np.repeat(np.arange(len(stubs)), stubs)
    if pool.size == 0:
        return set()

    def valid(u: int, v: int, chosen: Set[Tuple[int, int]]) -> bool:
        key = (min(u, v), max(u, v))
        return labels[u] != labels[v] and key not in chosen and key not in taken

    rng.shuffle(pool)
    pairs = pool.reshape(-1, 2).tolist()
    chosen: Set[Tuple[int, int]] = set()
    bad: List[List[int]] = []
    for u, v in pairs:
        if valid(u, v, chosen):
            chosen.add((min(u, v), max(u, v)))
        else:
            bad.append([u, v])

    for _ in range(MAX_REPAIR_ROUNDS):
        if not bad or not chosen:
            break
        still_bad = []
        for u, v in bad:
            x, y = sorted(chosen)[int(rng.integers(len(chosen)))]
            chosen.discard((x, y))
            if valid(u, x, chosen) and valid(v, y, chosen | {(min(u, x), max(u, x))}):
                chosen.add((min(u, x), max(u, x)))
                chosen.add((min(v, y), max(v, y)))
            elif valid(u, y, chosen) and valid(v, x, chosen | {(min(u, y), max(u, y))}):
                chosen.add((min(u, y), max(u, y)))
                chosen.add((min(v, x), max(v, x)))
            else:
                chosen.add((x, y))
                still_bad.append([u, v])
        bad = still_bad

    return chosen


def generate_from_spec(spec: GeneratorSpec) -> GNGraph:
    """
    Build the GN network described by ``spec``.

    ``mu`` wins when given; otherwise ``out_links`` (default 1) external
    stubs per node are converted with :func:`mixing_from_out_links`.
    """
    if spec.mu is not None:
        mu = spec.mu
    else:
        out_links = spec.out_links if spec.out_links is not None else DEFAULT_OUT_LINKS
        mu = mixing_from_out_links(out_links, spec.degree)
    rng = seeding.stream(spec.seed, seeding.GENERATOR)
    return generate_gn(spec.communities, spec.nodes, spec.degree, mu, rng, p=spec.p)
