"""
Multi-transformation evolutionary solver.

One population per transformation evolves on its own fitness. Every
generation the seed overlap between populations is measured, and each
population may receive the best individuals of its most related partner.
"""

import logging
import math
from concurrent.futures import Executor, ThreadPoolExecutor
from contextlib import nullcontext
from typing import List, Optional, Sequence, Set

import numpy as np

from ..core.exceptions import ConfigurationError
from ..graph.network import Network
from ..models.configs import SolverConfig
from ..models.results import GenerationRecord, RunResult, RunTrace, TransferEvent
from ..utils import seeding
from .evo import Individual, Population, elitist_select, init_population, mutate, two_point_crossover
from .proxy import Transformation, make_transformations
from .relationship import RelationshipMatrix, estimate_relationship
from .selection import check_preferences, mcss_index, mcss_spreads, soss_table

logger = logging.getLogger(__name__)


def transfer_count(n: int, r: float) -> int:
    """floor(N * r), robust to representation error in r."""
    return int(math.floor(round(n * r, 9)))


def make_offspring(
    parents: Population,
    net: Network,
    pc: float,
    pm: float,
    rng: np.random.Generator,
) -> Population:
    """N children from randomly paired parents: crossover, then mutation."""
    n = len(parents)
    order = rng.permutation(n).tolist()
    if n % 2:
        order.append(order[0])

    children = []
    for a, b in zip(order[0::2], order[1::2]):
        c1, c2 = two_point_crossover(parents[a], parents[b], pc, rng, net)
        children.append(mutate(c1, pm, net, rng))
        children.append(mutate(c2, pm, net, rng))
    return Population(children[:n], parents.owner)


def _evaluate(
    population: Population,
    transformation: Transformation,
    executor: Optional[Executor],
    indices: Optional[Sequence[int]] = None,
) -> None:
    """Fill the owner fitness of the members at ``indices`` (all by default)."""
    if indices is None:
        indices = range(len(population))
    indices = list(indices)
    values = transformation.evaluate_many([population[i].genome for i in indices], executor)
    for i, value in zip(indices, values):
        population[i].fitness[transformation.index] = value


def plan_transfers(
    offspring: Sequence[Optional[Population]],
    relationship: RelationshipMatrix,
    rng: np.random.Generator,
    generation: int = 0,
) -> List[TransferEvent]:
    """
    Decide, before any offspring is scored, which slots each target gives up.

    For every target i with offspring, p is the most related transformation
    and u ~ U(0, 1). When u < r_ip and floor(N * r_ip) > 0, that many
    distinct slots of O_i are drawn uniformly. Nothing here needs fitness,
    so the native children in those slots are never evaluated.
    """
    events = []
    for i, target in enumerate(offspring):
        if target is None:
            continue
        p = relationship.most_related(i)
        if p is None:
            continue
        r = relationship[i, p]
        u = float(rng.random())
        count = transfer_count(len(target), r)
        if not (u < r and count > 0):
            events.append(TransferEvent(generation=generation, target=i, source=p, r=r, u=u, count=0))
            continue
        positions = sorted(int(x) for x in rng.choice(len(target), size=count, replace=False))
        events.append(
            TransferEvent(generation=generation, target=i, source=p, r=r, u=u, count=count, positions=positions)
        )
    return events


def donor_ranking(parents: Population, offspring: Optional[Population] = None) -> List[Individual]:
    """
    Everything a transformation has scored this generation, best first.

    Parents come before offspring on equal fitness; unscored offspring
    slots are left out.
    """
    owner = parents.owner
    scored = list(parents.members)
    if offspring is not None:
        scored += [ind for ind in offspring if owner in ind.fitness]
    order = sorted(range(len(scored)), key=lambda i: (-scored[i].fitness[owner], i))
    return [scored[i] for i in order]


def pick_donors(ranked: Sequence[Individual], count: int, known: Optional[Set[frozenset]] = None) -> List[Individual]:
    """
    The ``count`` best donors, skipping seed sets the target has already scored.

    Distinct unknown seed sets go first in rank order; when there are not
    enough of them the remaining slots take the best leftovers, so exactly
    ``count`` individuals come back whenever ``ranked`` holds that many.
    """
    known = known or set()
    chosen: List[Individual] = []
    leftovers: List[Individual] = []
    taken: Set[frozenset] = set()
    for ind in ranked:
        seeds = ind.seeds()
        if seeds in known or seeds in taken:
            leftovers.append(ind)
            continue
        taken.add(seeds)
        chosen.append(ind)
        if len(chosen) == count:
            return chosen
    return chosen + leftovers[: count - len(chosen)]


def apply_transfers(
    offspring: Sequence[Optional[Population]],
    events: Sequence[TransferEvent],
    rankings: Sequence[Sequence[Individual]],
    known: Optional[Sequence[Set[frozenset]]] = None,
) -> None:
    """Overwrite the planned slots with fitness-free copies of the source's best donors."""
    for event in events:
        if not event.fired:
            continue
        target = offspring[event.target]
        donors = pick_donors(rankings[event.source], event.count, known[event.target] if known else None)
        for slot, donor in zip(event.positions, donors):
            target.members[slot] = donor.copy(keep_fitness=False)
        logger.debug("Transferred %d individuals %d->%d (r=%.4f)", event.count, event.source, event.target, event.r)


def transfer(
    offspring: Sequence[Optional[Population]],
    donors: Sequence[Population],
    relationship: RelationshipMatrix,
    rng: np.random.Generator,
    generation: int = 0,
    known: Optional[Sequence[Set[frozenset]]] = None,
) -> List[TransferEvent]:
    """
    Overlap-driven knowledge transfer between offspring populations.

    Plans the replaced slots with :func:`plan_transfers`, then fills them
    from each source's members ranked by the source's own fitness. All
    rankings are taken before any slot is written. Copies carry no
    fitness, so the caller evaluates them on the target.

    Args:
        offspring: O_i per transformation; None for stopped transformations
        donors: Scored population each transformation donates from
        relationship: Current R
        rng: Transfer stream
        known: Seed sets each target has already scored; those are passed over

    Returns:
        One event per target considered, with ``count`` 0 when nothing moved
    """
    rankings = [donor.ranked() for donor in donors]
    events = plan_transfers(offspring, relationship, rng, generation)
    apply_transfers(offspring, events, rankings, known)
    return events


def _record(
    generation: int,
    populations: Sequence[Population],
    transformations: Sequence[Transformation],
    relationship: RelationshipMatrix,
    transferred: List[int],
    active: List[bool],
) -> GenerationRecord:
    return GenerationRecord(
        generation=generation,
        evaluations=[t.eval_count for t in transformations],
        best_fitness=[max(pop.fitness_values()) for pop in populations],
        relationship=relationship.as_dict(),
        transferred=transferred,
        active=active,
    )


def run(net: Network, transformations: Sequence[Transformation], cfg: SolverConfig) -> RunResult:
    """
    Evolve one population per transformation until every budget is spent.

    A transformation keeps participating while it can pay for another N
    evaluations out of its share MFE / S, and every generation costs it
    exactly N: native children in slots planned for transfer are never
    scored, only the copies that replace them. Stopped populations stay
    available as transfer donors.

    Raises:
        ConfigurationError: If MFE < S * N or there are no transformations
    """
    size = len(transformations)
    if size == 0:
        raise ConfigurationError("at least one transformation is required")
    k = cfg.seed_set_size
    n = cfg.population_size
    mfe = cfg.evaluation_budget(size)
    if mfe < size * n:
        raise ConfigurationError(f"max_function_evaluations {mfe} is below S*N = {size * n}")
    for i, t in enumerate(transformations):
        t.index = i
        t.reset(mfe // size)

    prefs = check_preferences(cfg.preference_weights(size), size).tolist()
    pm = cfg.mutation_rate()
    names = [t.name for t in transformations]
    trace = RunTrace(transformations=names)
    seed = cfg.base_seed

    pool = ThreadPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else nullcontext()
    with pool as executor:
        populations = [
            init_population(net, k, n, seeding.stream(seed, seeding.INIT, i), owner=i)
            for i in range(size)
        ]
        for pop, t in zip(populations, transformations):
            _evaluate(pop, t, executor)

        relationship = estimate_relationship(populations, k) if size > 1 else RelationshipMatrix.zeros(1)
        scored: List[Set[frozenset]] = [{ind.seeds() for ind in pop} for pop in populations]
        active = [t.can_afford(n) for t in transformations]
        trace.records.append(_record(0, populations, transformations, relationship, [0] * size, list(active)))

        generation = 0
        while any(active):
            generation += 1
            if size > 1:
                relationship = estimate_relationship(populations, k)

            offspring: List[Optional[Population]] = [None] * size
            for i in range(size):
                if active[i]:
                    rng = seeding.stream(seed, seeding.VARIATION, i, generation)
                    offspring[i] = make_offspring(populations[i], net, cfg.pc, pm, rng)

            events: List[TransferEvent] = []
            if cfg.transfer_enabled and size > 1:
                events = plan_transfers(
                    offspring, relationship, seeding.stream(seed, seeding.TRANSFER, generation), generation
                )
            replaced = {event.target: set(event.positions) for event in events if event.fired}

            for i in range(size):
                if offspring[i] is not None:
                    skip = replaced.get(i, set())
                    _evaluate(offspring[i], transformations[i], executor, [s for s in range(n) if s not in skip])

            transferred = [0] * size
            if events:
                rankings = [donor_ranking(populations[j], offspring[j]) for j in range(size)]
                apply_transfers(offspring, events, rankings, scored)
                for event in events:
                    if event.fired:
                        _evaluate(offspring[event.target], transformations[event.target], executor, event.positions)
                        transferred[event.target] = event.count
                trace.transfers.extend(events)

            participating = list(active)
            for i in range(size):
                if offspring[i] is not None:
                    scored[i].update(ind.seeds() for ind in offspring[i])
                    populations[i] = elitist_select(populations[i], offspring[i], n)
                active[i] = active[i] and transformations[i].can_afford(n)

            trace.records.append(
                _record(generation, populations, transformations, relationship, transferred, participating)
            )
            logger.debug(
                "Generation %d: best %s, evaluations %s",
                generation,
                trace.records[-1].best_fitness,
                trace.records[-1].evaluations,
            )

    best = [pop.best() for pop in populations]
    table = soss_table(best, transformations, prefs)
    chosen = table.chosen
    spreads = None
    if cfg.output == "mcss":
        spreads = mcss_spreads(best, net, cfg.diffusion)
        chosen = mcss_index(spreads)

    logger.info(
        "Solver finished after %d generations; chose %s candidate %d",
        generation,
        cfg.output.upper(),
        chosen,
    )
    return RunResult(
        transformations=names,
        best_seeds=[ind.genome for ind in best],
        best_fitness=[ind.fitness[i] for i, ind in enumerate(best)],
        cross_fitness=table.fitness.tolist(),
        cumulative_rank=table.cumulative_rank.tolist(),
        chosen_index=chosen,
        chosen_seeds=best[chosen].genome,
        selection=cfg.output,
        candidate_spreads=spreads,
        evaluations=[t.eval_count for t in transformations],
        trace=trace,
    )


def run_named(net: Network, names: Sequence[str], cfg: SolverConfig) -> RunResult:
    """:func:`run` on freshly built transformations for ``names``."""
    return run(net, make_transformations(names, net), cfg)
