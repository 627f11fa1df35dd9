"""Shared builders for the test modules."""

from itertools import combinations

import numpy as np

from InfluenceMax.graph import Network


def random_network(rng, max_nodes=12, max_edges=None, weighted=False, directed=False):
    """Random simple graph with at most ``max_nodes`` nodes and ``max_edges`` edges."""
    n = int(rng.integers(3, max_nodes + 1))
    pairs = list(combinations(range(n), 2))
    if directed:
        pairs = pairs + [(v, u) for u, v in pairs]
    limit = len(pairs) if max_edges is None else min(max_edges, len(pairs))
    count = int(rng.integers(1, limit + 1))
    chosen = rng.choice(len(pairs), size=count, replace=False)
    p = float(rng.uniform(0.05, 0.9))
    arcs = []
    for index in chosen:
        u, v = pairs[index]
        arcs.append((u, v, float(rng.uniform(0.05, 0.95)) if weighted else p))
    return Network(n, arcs, directed=directed, uniform_p=p, weighted=weighted)


class FixedUniformRng:
    """Generator stand-in whose ``random()`` always returns ``u``; other draws use a real generator."""

    def __init__(self, u, seed=0):
        self.u = u
        self._rng = np.random.default_rng(seed)

    def random(self, *args, **kwargs):
        return self.u

    def choice(self, *args, **kwargs):
        return self._rng.choice(*args, **kwargs)

    def integers(self, *args, **kwargs):
        return self._rng.integers(*args, **kwargs)

    def permutation(self, *args, **kwargs):
        return self._rng.permutation(*args, **kwargs)
