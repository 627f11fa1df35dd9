import numpy as np
import pytest

from helpers import FixedUniformRng
from InfluenceMax.core.exceptions import ConfigurationError, PreferenceWeightsError
from InfluenceMax.graph import generate_gn
from InfluenceMax.models import DiffusionConfig, SolverConfig
from InfluenceMax.services import RelationshipMatrix, run_named, single_transformation_ea, transfer
from InfluenceMax.services.evo import Individual, Population
from InfluenceMax.services.mtefim import donor_ranking, make_offspring, pick_donors, plan_transfers, transfer_count
from InfluenceMax.services.relationship import random_population


@pytest.fixture(scope="module")
def gn_net():
    return generate_gn(4, 64, 8, 0.125, np.random.default_rng(17)).network


def solver_config(**overrides):
    values = dict(
        population_size=10,
        seed_set_size=5,
        max_function_evaluations=400,
        base_seed=3,
        diffusion=DiffusionConfig(replicas=200, base_seed=3),
    )
    values.update(overrides)
    return SolverConfig(**values)


def scored_populations(size=100, k=3):
    """Two populations of distinct seed sets; member j scores j on its owner."""
    pops = []
    for i in range(2):
        members = [Individual(range(k * j + i, k * j + i + k), {i: float(j)}) for j in range(size)]
        pops.append(Population(members, owner=i))
    return pops


def mirror(r):
    return RelationshipMatrix(np.array([[0.0, r], [r, 0.0]]))


class TestTransferCount:
    def test_floor(self):
        assert transfer_count(100, 0.44) == 44
        assert transfer_count(100, 0.29) == 29
        assert transfer_count(10, 0.099) == 0
        assert transfer_count(10, 1.0) == 10


class TestTransfer:
    def test_top_donors_overwrite_random_slots(self):
        pops = scored_populations()
        top_of_second = [ind.genome for ind in pops[1].ranked()[:44]]
        events = transfer(pops, pops, mirror(0.44), FixedUniformRng(0.1), generation=3)

        assert [e.count for e in events] == [44, 44]
        first = events[0]
        assert first.target == 0 and first.source == 1 and first.generation == 3
        assert len(set(first.positions)) == 44
        for slot, genome in zip(first.positions, top_of_second):
            assert pops[0][slot].genome == genome
            assert pops[0][slot].fitness == {}
        untouched = set(range(100)) - set(first.positions)
        assert all(0 in pops[0][slot].fitness for slot in untouched)

    def test_no_overlap_never_transfers(self):
        pops = scored_populations()
        before = [ind.genome for ind in pops[0]]
        events = transfer(pops, pops, mirror(0.0), FixedUniformRng(0.0))
        assert all(not e.fired for e in events)
        assert [ind.genome for ind in pops[0]] == before

    def test_draw_above_relationship(self):
        pops = scored_populations()
        events = transfer(pops, pops, mirror(0.44), FixedUniformRng(0.5))
        assert all(e.count == 0 and e.u == 0.5 for e in events)

    def test_known_seed_sets_passed_over(self):
        pops = scored_populations()
        ranked = pops[1].ranked()
        known = [{ranked[0].seeds(), ranked[2].seeds()}, set()]
        events = transfer(pops, pops, mirror(0.44), FixedUniformRng(0.1), known=known)
        first = events[0]
        assert first.count == 44
        placed = [pops[0][slot].genome for slot in first.positions]
        assert placed[:3] == [ranked[1].genome, ranked[3].genome, ranked[4].genome]
        assert ranked[0].genome not in placed

    def test_stopped_target_skipped(self):
        pops = scored_populations()
        events = transfer([None, pops[1]], pops, mirror(0.44), FixedUniformRng(0.1))
        assert [e.target for e in events] == [1]


class TestPlanning:
    def test_plan_needs_no_fitness(self):
        rng = np.random.default_rng(5)
        pops = [random_population(50, 3, 100, rng, owner=i) for i in range(2)]
        events = plan_transfers(pops, mirror(0.44), FixedUniformRng(0.1), generation=2)
        assert [(e.target, e.source, e.count, e.generation) for e in events] == [(0, 1, 44, 2), (1, 0, 44, 2)]
        assert all(len(set(e.positions)) == 44 for e in events)
        assert all(ind.fitness == {} for pop in pops for ind in pop)

    def test_donor_ranking_skips_unscored(self):
        parents, children = scored_populations(size=4)
        children.owner = 0
        for ind in children:
            ind.fitness = {}
        children[1].fitness[0] = 10.0
        ranked = donor_ranking(parents, children)
        assert len(ranked) == 5
        assert ranked[0] is children[1]
        assert ranked[1:] == [parents[3], parents[2], parents[1], parents[0]]

    def test_pick_donors_fills_from_known(self):
        pops = scored_populations(size=6)
        ranked = pops[0].ranked()
        known = {ind.seeds() for ind in ranked[:5]}
        picked = pick_donors(ranked, 3, known)
        assert picked == [ranked[5], ranked[0], ranked[1]]

    def test_pick_donors_drops_repeated_seed_sets(self):
        pops = scored_populations(size=4)
        ranked = pops[0].ranked()
        twin = ranked[0].copy()
        picked = pick_donors([ranked[0], twin, ranked[1], ranked[2]], 3)
        assert picked == [ranked[0], ranked[1], ranked[2]]
        assert picked[1] is ranked[1]


class TestOffspring:
    def test_odd_population(self, gn_net):
        parents = random_population(gn_net.node_count, 4, 5, np.random.default_rng(0))
        children = make_offspring(parents, gn_net, 1.0, 0.25, np.random.default_rng(1))
        assert len(children) == 5
        assert all(len(set(ind.genome)) == 4 for ind in children)


class TestRun:
    def test_budget_and_monotone_best(self, gn_net):
        result = run_named(gn_net, ["edv", "tis"], solver_config())
        assert result.transformations == ["EDV", "TIS"]
        assert all(evals <= 200 for evals in result.evaluations)
        records = result.trace.records
        assert records[0].generation == 0
        for i in range(2):
            series = [record.best_fitness[i] for record in records]
            assert series == sorted(series)
        assert result.best_fitness[0] == pytest.approx(records[-1].best_fitness[0])
        assert len(set(result.chosen_seeds)) == 5
        assert result.chosen_seeds == result.best_seeds[result.chosen_index]

    def test_transfers_follow_relationship(self, gn_net):
        result = run_named(gn_net, ["edv", "tis"], solver_config())
        by_generation = {record.generation: record for record in result.trace.records}
        for event in result.trace.transfers:
            assert event.source == 1 - event.target
            if event.fired:
                assert event.u < event.r
                assert event.count == transfer_count(10, event.r)
                assert by_generation[event.generation].transferred[event.target] == event.count
            assert event.r == pytest.approx(by_generation[event.generation].relationship["r_1_2"])

    def test_no_transfer(self, gn_net):
        result = run_named(gn_net, ["edv", "tis"], solver_config(transfer_enabled=False))
        assert result.trace.transfers == []
        assert all(record.transferred == [0, 0] for record in result.trace.records)
        assert result.evaluations == [200, 200]

    def test_transfer_costs_no_generations(self, gn_net):
        with_transfer = run_named(gn_net, ["edv", "tis"], solver_config())
        without = run_named(gn_net, ["edv", "tis"], solver_config(transfer_enabled=False))
        assert any(event.fired for event in with_transfer.trace.transfers)
        assert len(with_transfer.trace.records) == len(without.trace.records) == 20
        assert with_transfer.evaluations == without.evaluations == [200, 200]
        records = with_transfer.trace.records
        for before, after in zip(records, records[1:]):
            assert [b - a for a, b in zip(before.evaluations, after.evaluations)] == [10, 10]

    def test_single_transformation_budget(self, gn_net):
        result = run_named(gn_net, ["edv"], solver_config(max_function_evaluations=100))
        assert result.evaluations == [100]
        assert len(result.trace.records) == 10
        assert result.trace.records[-1].relationship == {}
        assert result.chosen_index == 0

    def test_single_transformation_matches_single_ea(self, gn_net):
        cfg = solver_config(max_function_evaluations=100)
        assert single_transformation_ea(gn_net, "edv", cfg).seeds == run_named(gn_net, ["edv"], cfg).chosen_seeds

    def test_same_seed_same_run(self, gn_net):
        assert run_named(gn_net, ["edv", "tis"], solver_config()) == run_named(gn_net, ["edv", "tis"], solver_config())

    def test_workers_do_not_change_run(self, gn_net):
        single = run_named(gn_net, ["edv", "tis"], solver_config(workers=1))
        pooled = run_named(gn_net, ["edv", "tis"], solver_config(workers=3))
        assert single == pooled

    def test_mcss_output(self, gn_net):
        result = run_named(gn_net, ["edv", "tis"], solver_config(output="mcss"))
        assert result.selection == "mcss"
        assert len(result.candidate_spreads) == 2
        assert result.chosen_index == int(np.argmax(result.candidate_spreads))

    def test_budget_below_one_generation(self, gn_net):
        with pytest.raises(ConfigurationError):
            run_named(gn_net, ["edv", "tis"], solver_config(max_function_evaluations=15))

    def test_preferences_length_checked(self, gn_net):
        with pytest.raises(PreferenceWeightsError):
            run_named(gn_net, ["edv", "tis"], solver_config(preferences=[1.0]))
