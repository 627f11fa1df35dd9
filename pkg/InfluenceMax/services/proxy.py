"""
Cheap closed-form substitutes for the Monte Carlo spread.

EDV (expected diffusion value) counts the seeds plus the chance that each
one-hop neighbor outside the seed set is reached:

    edv(A) = k + sum_{b in NB(A) \\ A} (1 - (1 - p) ** delta(b))

with delta(b) the number of seeds pointing at b and p the network's uniform
probability.

TIS (two-hop influence spread) uses per-edge probabilities:

    tis(A) = sum_{a in A} s2(a)
             - sum_{a in A} sum_{b in N(a) & A} p(a,b) * (1 + alpha(b) - p(b,a))
             - beta
    s2(a)  = 1 + sum_{b in N(a)} p(a,b) * (1 + alpha(b) - p(b,a))
    beta   = sum_{a in A} sum_{b in N(a) \\ A} sum_{c in N(b) & A, c != a} p(a,b) * p(b,c)
    alpha(b) = sum_{c in N(b)} p(b,c)

The second term removes what s2(a) credits through a neighbor that is itself
a seed; beta removes two-hop paths that end on another seed.
"""

from concurrent.futures import Executor
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..core.exceptions import ConfigurationError, UnknownMethodError
from ..graph.network import Network
from ..utils.validators import SeedSetValidator


def _indicator(net: Network, seeds: List[int]) -> np.ndarray:
    x = np.zeros(net.node_count)
    x[seeds] = 1.0
    return x


def one_hop_influence(net: Network, b: int) -> float:
    """alpha(b): sum of p(b, c) over the out-neighbors c of b."""
    return float(net.neighbor_probs(b).sum())


def edv(net: Network, seeds: Iterable[int], p: Optional[float] = None) -> float:
    """Expected diffusion value of ``seeds`` under uniform probability ``p``."""
    seeds = SeedSetValidator.validate(seeds, net.node_count)
    if p is None:
        p = net.uniform_p
    if p is None:
        raise ConfigurationError("EDV needs a uniform propagation probability")

    x = _indicator(net, seeds)
    delta = net.adjacency_matrix.T @ x
    outside = (delta > 0) & (x == 0)
    return float(len(seeds) + np.sum(1.0 - np.power(1.0 - p, delta[outside])))


class _TisTables:
    """Per-network terms of TIS that do not depend on the seed set."""

    def __init__(self, net: Network):
        P = net.probability_matrix.tocsr()
        alpha = np.asarray(P.sum(axis=1)).ravel()
        reciprocal = P.multiply(P.T).tocsr()
        weights = (P.multiply((1.0 + alpha)[np.newaxis, :]) - reciprocal).tocsr()
        self.P = P
        self.reciprocal = reciprocal
        self.weights = weights
        self.two_hop = 1.0 + np.asarray(weights.sum(axis=1)).ravel()


@lru_cache(maxsize=16)
def _tis_tables(net: Network) -> _TisTables:
    return _TisTables(net)


def tis(net: Network, seeds: Iterable[int]) -> float:
    """Two-hop influence spread of ``seeds`` with redundancy corrections."""
    seeds = SeedSetValidator.validate(seeds, net.node_count)
    tables = _tis_tables(net)
    x = _indicator(net, seeds)
    outside = 1.0 - x

    main = float(tables.two_hop @ x)
    seed_overlap = float(x @ (tables.weights @ x))
    s = tables.P @ x
    beta = float(x @ (tables.P @ (outside * s))) - float(x @ (tables.reciprocal @ outside))
    return main - seed_overlap - beta


FITNESS_FUNCTIONS: Dict[str, Callable[[Network, List[int]], float]] = {
    "edv": lambda net, seeds: edv(net, seeds),
    "tis": tis,
}


class Transformation:
    """
    A named fitness function bound to one network, plus its evaluation budget.

    :meth:`fitness` is pure. :meth:`evaluate` is what the solver calls: it
    also counts the evaluation against the budget.
    """

    def __init__(self, index: int, name: str, net: Network, budget: Optional[int] = None):
        key = name.lower()
        if key not in FITNESS_FUNCTIONS:
            raise UnknownMethodError(name, FITNESS_FUNCTIONS)
        self.index = index
        self.name = key.upper()
        self.net = net
        self._function = FITNESS_FUNCTIONS[key]
        self.initial_budget = budget
        self.eval_count = 0

    @property
    def eval_budget(self) -> Optional[int]:
        """Remaining evaluations, or None when unbounded."""
        if self.initial_budget is None:
            return None
        return self.initial_budget - self.eval_count

    def can_afford(self, evaluations: int) -> bool:
        return self.initial_budget is None or self.eval_count + evaluations <= self.initial_budget

    def fitness(self, seeds: Iterable[int]) -> float:
        return self._function(self.net, list(seeds))

    def evaluate(self, seeds: Iterable[int]) -> float:
        self.eval_count += 1
        return self.fitness(seeds)

    def evaluate_many(
        self,
        seed_sets: Sequence[Sequence[int]],
        executor: Optional[Executor] = None,
    ) -> List[float]:
        """Evaluate a batch, optionally on ``executor``; values come back in input order."""
        if executor is None:
            values = [self.fitness(seeds) for seeds in seed_sets]
        else:
            values = list(executor.map(self.fitness, seed_sets))
        self.eval_count += len(values)
        return values

    def reset(self, budget: Optional[int] = None) -> None:
        self.initial_budget = budget
        self.eval_count = 0

    def __repr__(self) -> str:
        return f"Transformation({self.index}, {self.name}, evals={self.eval_count})"


def make_transformations(names: Iterable[str], net: Network) -> List[Transformation]:
    """Transformations for ``names`` in order, indexed from 0."""
    names = list(names)
    if not names:
        raise ConfigurationError("at least one transformation is required")
    return [Transformation(i, name, net) for i, name in enumerate(names)]
