"""
Immutable network in compressed sparse row form.
"""

from functools import cached_property
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..core.exceptions import GraphConstructionError, NodeIdError, ProbabilityError


class Network:
    """
    Directed or undirected graph with contiguous node ids 0..|V|-1.

    Adjacency is stored as ``offsets`` / ``targets`` arrays with neighbor
    lists sorted ascending, plus an aligned ``probs`` array holding the
    propagation probability of each stored arc. An undirected edge {u, v} is
    stored as the two arcs u->v and v->u.
    """

    def __init__(
        self,
        node_count: int,
        arcs: Iterable[Tuple[int, int, float]],
        directed: bool = False,
        uniform_p: Optional[float] = None,
        weighted: bool = False,
        labels: Optional[Sequence[Hashable]] = None,
        name: str = "network",
    ):
        if node_count < 0:
            raise GraphConstructionError(f"node_count {node_count} is negative")
        if uniform_p is not None and not 0.0 <= uniform_p <= 1.0:
            raise ProbabilityError(uniform_p)

        arc_map: Dict[Tuple[int, int], float] = {}
        for u, v, p in arcs:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise NodeIdError((u, v), node_count)
            if u == v:
                continue
            if not 0.0 <= p <= 1.0:
                raise ProbabilityError(p)
            arc_map.setdefault((u, v), p)
            if not directed:
                arc_map.setdefault((v, u), p)

        keys = sorted(arc_map)
        sources = np.fromiter((u for u, _ in keys), dtype=np.int64, count=len(keys))
        targets = np.fromiter((v for _, v in keys), dtype=np.int64, count=len(keys))
        probs = np.fromiter((arc_map[key] for key in keys), dtype=np.float64, count=len(keys))
        offsets = np.zeros(node_count + 1, dtype=np.int64)
        np.cumsum(np.bincount(sources, minlength=node_count), out=offsets[1:])

        for array in (offsets, sources, targets, probs):
            array.setflags(write=False)

        self._node_count = node_count
        self._directed = directed
        self._uniform_p = uniform_p
        self._weighted = weighted
        self._offsets = offsets
        self._sources = sources
        self._targets = targets
        self._probs = probs
        self._labels: List[Hashable] = list(labels) if labels is not None else list(range(node_count))
        if len(self._labels) != node_count:
            raise GraphConstructionError(f"{len(self._labels)} labels for {node_count} nodes")
        self.name = name

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------
    @property
    def node_count(self) -> int:
        return self._node_count

    @property
    def directed(self) -> bool:
        return self._directed

    @property
    def uniform_p(self) -> Optional[float]:
        """The configured network-wide probability p (None if never given)."""
        return self._uniform_p

    @property
    def weighted(self) -> bool:
        """True when arcs carry their own probabilities."""
        return self._weighted

    @property
    def offsets(self) -> np.ndarray:
        return self._offsets

    @property
    def sources(self) -> np.ndarray:
        return self._sources

    @property
    def targets(self) -> np.ndarray:
        return self._targets

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def arc_count(self) -> int:
        return int(self._targets.size)

    @property
    def edge_count(self) -> int:
        """|E|: arcs for directed networks, arc pairs for undirected ones."""
        return self.arc_count if self._directed else self.arc_count // 2

    def check_node(self, v: int) -> int:
        if not 0 <= v < self._node_count:
            raise NodeIdError(v, self._node_count)
        return int(v)

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted out-neighbors of ``v``."""
        v = self.check_node(v)
        return self._targets[self._offsets[v]:self._offsets[v + 1]]

    def neighbor_probs(self, v: int) -> np.ndarray:
        """Probabilities aligned with :meth:`neighbors`."""
        v = self.check_node(v)
        return self._probs[self._offsets[v]:self._offsets[v + 1]]

    def degree(self, v: int) -> int:
        v = self.check_node(v)
        return int(self._offsets[v + 1] - self._offsets[v])

    @cached_property
    def degrees(self) -> np.ndarray:
        out = np.diff(self._offsets)
        out.setflags(write=False)
        return out

    @cached_property
    def neighbor_lists(self) -> List[List[int]]:
        """Plain-list adjacency for tight Python loops."""
        targets = self._targets.tolist()
        offsets = self._offsets.tolist()
        return [targets[offsets[v]:offsets[v + 1]] for v in range(self._node_count)]

    @cached_property
    def _arc_lookup(self) -> Dict[Tuple[int, int], float]:
        return {
            (int(u), int(v)): float(p)
            for u, v, p in zip(self._sources, self._targets, self._probs)
        }

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._arc_lookup

    def probability(self, u: int, v: int) -> float:
        """p(u, v), or 0.0 when the arc u->v does not exist."""
        return self._arc_lookup.get((u, v), 0.0)

    @cached_property
    def probability_matrix(self) -> sparse.csr_matrix:
        """P with P[u, v] = p(u, v)."""
        n = self._node_count
        return sparse.csr_matrix((self._probs, self._targets, self._offsets), shape=(n, n))

    @cached_property
    def adjacency_matrix(self) -> sparse.csr_matrix:
        """0/1 matrix with M[u, v] = 1 for every stored arc u->v."""
        n = self._node_count
        ones = np.ones(self._targets.size, dtype=np.float64)
        return sparse.csr_matrix((ones, self._targets, self._offsets), shape=(n, n))

    def edges(self) -> List[Tuple[int, int, float]]:
        """Edges once each: all arcs if directed, u < v pairs otherwise."""
        return [
            (int(u), int(v), float(p))
            for u, v, p in zip(self._sources, self._targets, self._probs)
            if self._directed or u < v
        ]

    # ------------------------------------------------------------------
    # Labels
    # ------------------------------------------------------------------
    @property
    def labels(self) -> List[Hashable]:
        return list(self._labels)

    def label(self, v: int) -> Hashable:
        return self._labels[self.check_node(v)]

    @cached_property
    def _index_of(self) -> Dict[str, int]:
        return {str(label): i for i, label in enumerate(self._labels)}

    def index(self, label: Hashable) -> int:
        """Node id of an original label."""
        try:
            return self._index_of[str(label)]
        except KeyError:
            raise NodeIdError(label, self._node_count) from None

    def __repr__(self) -> str:
        kind = "directed" if self._directed else "undirected"
        return f"Network(name={self.name!r}, {kind}, |V|={self.node_count}, |E|={self.edge_count})"
