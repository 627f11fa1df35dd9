"""
Seed-set genomes, warm-start initialization, variation operators and survivor selection.
"""

import logging
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..core.exceptions import (
    ConfigurationError,
    MissingFitnessError,
    PopulationMismatchError,
    UnreparableGenomeError,
)
from ..graph.network import Network

logger = logging.getLogger(__name__)


class Individual:
    """
    An ordered genome of k distinct node ids plus fitness cached per transformation.

    Positions matter: crossover swaps gene segments by position. The cache
    maps a transformation index to its value and is dropped whenever the
    genome changes.
    """

    __slots__ = ("_genome", "fitness")

    def __init__(self, genome: Sequence[int], fitness: Optional[Dict[int, float]] = None):
        self._genome: Tuple[int, ...] = tuple(int(g) for g in genome)
        self.fitness: Dict[int, float] = dict(fitness) if fitness else {}

    @property
    def genome(self) -> List[int]:
        return list(self._genome)

    @genome.setter
    def genome(self, value: Sequence[int]) -> None:
        self._genome = tuple(int(g) for g in value)
        self.fitness = {}

    @property
    def k(self) -> int:
        return len(self._genome)

    def seeds(self) -> frozenset:
        return frozenset(self._genome)

    def sorted_seeds(self) -> List[int]:
        return sorted(self._genome)

    def copy(self, keep_fitness: bool = True) -> "Individual":
        return Individual(self._genome, self.fitness if keep_fitness else None)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Individual) and self._genome == other._genome

    def __hash__(self) -> int:
        return hash(self._genome)

    def __repr__(self) -> str:
        return f"Individual({list(self._genome)})"


class Population:
    """N individuals evolved on one transformation (``owner``)."""

    def __init__(self, members: Sequence[Individual], owner: int = 0):
        self.members: List[Individual] = list(members)
        self.owner = owner

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Individual]:
        return iter(self.members)

    def __getitem__(self, index: int) -> Individual:
        return self.members[index]

    def fitness_values(self) -> List[float]:
        """Cached owner fitness of every member, in member order."""
        values = []
        for index, ind in enumerate(self.members):
            if self.owner not in ind.fitness:
                raise MissingFitnessError(index)
            values.append(ind.fitness[self.owner])
        return values

    def best(self) -> Individual:
        """Highest owner fitness; ties go to the lower member index."""
        values = self.fitness_values()
        return self.members[int(np.argmax(values))]

    def ranked(self) -> List[Individual]:
        """Members by descending owner fitness, ties by member index."""
        values = self.fitness_values()
        order = sorted(range(len(values)), key=lambda i: (-values[i], i))
        return [self.members[i] for i in order]

    def copy(self) -> "Population":
        return Population([ind.copy() for ind in self.members], self.owner)


def _draw_absent(node_count: int, members: Set[int], rng: np.random.Generator) -> int:
    """Uniform id from V minus ``members``; caller guarantees one exists."""
    if len(members) * 2 > node_count:
        pool = np.setdiff1d(np.arange(node_count), np.fromiter(members, dtype=np.int64))
        return int(pool[rng.integers(pool.size)])
    while True:
        v = int(rng.integers(node_count))
        if v not in members:
            return v


def top_degree_nodes(net: Network, k: int) -> List[int]:
    """The k highest-degree nodes, ties broken by ascending id."""
    order = np.lexsort((np.arange(net.node_count), -net.degrees))
    return [int(v) for v in order[:k]]


def init_population(
    net: Network,
    k: int,
    n: int,
    rng: np.random.Generator,
    owner: int = 0,
) -> Population:
    """
    Warm-started population.

    Every individual starts from the top-k degree nodes; each gene is then
    swapped, with probability 0.5, for a random neighbor of that gene that
    is not already in the individual. Genes without such a neighbor stay.

    Raises:
        UnreparableGenomeError: If k exceeds |V|
    """
    if k > net.node_count:
        raise UnreparableGenomeError(k, net.node_count)

    base = top_degree_nodes(net, k)
    adjacency = net.neighbor_lists
    members = []
    for _ in range(n):
        genome = list(base)
        present = set(genome)
        for j in range(k):
            if rng.random() >= 0.5:
                continue
            eligible = [v for v in adjacency[genome[j]] if v not in present]
            if not eligible:
                continue
            chosen = eligible[int(rng.integers(len(eligible)))]
            present.discard(genome[j])
            present.add(chosen)
            genome[j] = chosen
        members.append(Individual(genome))
    return Population(members, owner)


def repair(genome: Sequence[int], net: Network, rng: np.random.Generator) -> Individual:
    """
    Replace later duplicate occurrences with random ids absent from the genome.

    The first occurrence of every id keeps its position.

    Raises:
        UnreparableGenomeError: If the genome is longer than |V|
    """
    genome = [net.check_node(int(g)) for g in genome]
    if len(genome) > net.node_count:
        raise UnreparableGenomeError(len(genome), net.node_count)

    present = set(genome)
    if len(present) == len(genome):
        return Individual(genome)

    seen: Set[int] = set()
    for j, g in enumerate(genome):
        if g in seen:
            g = _draw_absent(net.node_count, present, rng)
            present.add(g)
            genome[j] = g
        seen.add(g)
    return Individual(genome)


def two_point_crossover(
    p1: Individual,
    p2: Individual,
    pc: float,
    rng: np.random.Generator,
    net: Network,
    cuts: Optional[Tuple[int, int]] = None,
) -> Tuple[Individual, Individual]:
    """
    Swap the gene segment between two cut points and repair both children.

    Cut points are 1-based with 1 <= x1 < x2 <= k and the segment [x1, x2]
    is inclusive. ``cuts`` fixes them instead of drawing.
    """
    k = p1.k
    if k != p2.k:
        raise PopulationMismatchError(f"parents have genome lengths {k} and {p2.k}")
    if k < 2 or rng.random() >= pc:
        return p1.copy(), p2.copy()

    if cuts is None:
        x1, x2 = sorted(int(c) + 1 for c in rng.choice(k, size=2, replace=False))
    else:
        x1, x2 = cuts
        if not 1 <= x1 < x2 <= k:
            raise ConfigurationError(f"cut points {cuts} outside 1 <= x1 < x2 <= {k}")

    g1, g2 = p1.genome, p2.genome
    lo, hi = x1 - 1, x2
    g1[lo:hi], g2[lo:hi] = g2[lo:hi], g1[lo:hi]
    return repair(g1, net, rng), repair(g2, net, rng)


def mutate(ind: Individual, pm: float, net: Network, rng: np.random.Generator) -> Individual:
    """Replace each gene with probability ``pm`` by a random node not in the individual."""
    genome = ind.genome
    present = set(genome)
    changed = False
    for j in range(len(genome)):
        if rng.random() >= pm:
            continue
        if len(present) >= net.node_count:
            continue
        v = _draw_absent(net.node_count, present, rng)
        present.discard(genome[j])
        present.add(v)
        genome[j] = v
        changed = True
    return Individual(genome) if changed else ind.copy()


def elitist_select(
    parents: Population,
    offspring: Population,
    n: int,
    fitness: Optional[Sequence[float]] = None,
) -> Population:
    """
    Keep the ``n`` fittest of parents + offspring.

    ``fitness`` lists the 2N values in candidate order (parents first); by
    default each candidate's cached value for the owning transformation is
    used. Ties go to parents, then to the lower member index.

    Raises:
        MissingFitnessError: If a candidate has no fitness value
    """
    candidates = parents.members + offspring.members
    if fitness is None:
        values = []
        for index, ind in enumerate(candidates):
            if parents.owner not in ind.fitness:
                raise MissingFitnessError(index)
            values.append(ind.fitness[parents.owner])
    else:
        values = list(fitness)
        if len(values) != len(candidates):
            raise MissingFitnessError(len(values))

    order = sorted(range(len(candidates)), key=lambda i: (-values[i], i))
    survivors = []
    for i in order[:n]:
        ind = candidates[i]
        if fitness is not None:
            ind = ind.copy()
            ind.fitness[parents.owner] = values[i]
        survivors.append(ind)
    return Population(survivors, parents.owner)
