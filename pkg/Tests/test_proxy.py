from itertools import combinations

import numpy as np
import pytest

from helpers import random_network
from InfluenceMax.core.exceptions import ConfigurationError, UnknownMethodError
from InfluenceMax.graph import Network, load_edge_list
from InfluenceMax.services import Transformation, edv, one_hop_influence, tis
from InfluenceMax.services.proxy import make_transformations


def literal_edv(net, seeds, p):
    seeds = set(seeds)
    total = float(len(seeds))
    reached = set()
    for a in seeds:
        reached.update(int(b) for b in net.neighbors(a))
    for b in reached - seeds:
        delta = sum(1 for a in seeds if net.has_edge(a, b))
        total += 1.0 - (1.0 - p) ** delta
    return total


def literal_tis(net, seeds):
    seeds = list(seeds)
    members = set(seeds)

    def alpha(b):
        return sum(net.probability(b, c) for c in net.neighbors(b))

    def through(a, b):
        return net.probability(a, b) * (1.0 + alpha(b) - net.probability(b, a))

    total = 0.0
    for a in seeds:
        total += 1.0 + sum(through(a, int(b)) for b in net.neighbors(a))
    for a in seeds:
        total -= sum(through(a, int(b)) for b in net.neighbors(a) if int(b) in members)
    for a in seeds:
        for b in net.neighbors(a):
            b = int(b)
            if b in members:
                continue
            for c in net.neighbors(b):
                c = int(c)
                if c in members and c != a:
                    total -= net.probability(a, b) * net.probability(b, c)
    return total


class TestEdv:
    def test_star_center(self, star_net):
        assert edv(star_net, [0]) == pytest.approx(1.4)

    def test_isolated_seeds(self):
        net = Network(4, [], uniform_p=0.3)
        assert edv(net, [0, 2]) == 2.0

    def test_zero_probability(self):
        net = load_edge_list(["a b", "b c"], default_p=0.0)
        assert edv(net, [1]) == 1.0

    def test_shared_neighbor(self):
        net = Network(3, [(0, 2, 0.2), (1, 2, 0.2)], uniform_p=0.2)
        assert edv(net, [0, 1]) == pytest.approx(2 + 1 - 0.8 ** 2)

    def test_monotone_in_p(self):
        arcs = [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)]
        values = [edv(Network(5, [(u, v, p) for u, v in arcs], uniform_p=p), [0, 2]) for p in (0.0, 0.1, 0.3, 0.9)]
        assert values == sorted(values)

    def test_needs_uniform_p(self):
        net = Network(2, [(0, 1, 0.3)], uniform_p=None)
        with pytest.raises(ConfigurationError):
            edv(net, [0])
        assert edv(net, [0], p=0.5) == pytest.approx(1.5)

    def test_matches_literal_formula(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            net = random_network(rng, directed=bool(rng.integers(2)))
            k = int(rng.integers(1, 4))
            seeds = rng.choice(net.node_count, size=k, replace=False).tolist()
            assert edv(net, seeds) == pytest.approx(literal_edv(net, seeds, net.uniform_p), abs=1e-12)


class TestTis:
    def test_isolated_node(self):
        assert tis(Network(3, [], uniform_p=0.1), [1]) == 1.0

    def test_path_end(self):
        p = 0.3
        net = Network(3, [(0, 1, p), (1, 2, p)], uniform_p=p)
        assert tis(net, [0]) == pytest.approx(1 + p + p ** 2)

    def test_adjacent_isolated_pair(self):
        net = Network(2, [(0, 1, 0.4)], uniform_p=0.4)
        assert tis(net, [0, 1]) == pytest.approx(2.0)

    def test_additive_over_far_apart_stars(self):
        arcs = [(0, leaf, 0.2) for leaf in (1, 2, 3)] + [(4, leaf, 0.2) for leaf in (5, 6, 7)]
        net = Network(8, arcs, uniform_p=0.2)
        assert tis(net, [0, 4]) == pytest.approx(tis(net, [0]) + tis(net, [4]))

    def test_matches_literal_formula(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            net = random_network(rng, weighted=bool(rng.integers(2)), directed=bool(rng.integers(2)))
            k = int(rng.integers(1, 4))
            seeds = rng.choice(net.node_count, size=k, replace=False).tolist()
            assert tis(net, seeds) == pytest.approx(literal_tis(net, seeds), abs=1e-12)

    def test_every_subset_of_small_graph(self, triangle_net):
        for size in (1, 2, 3):
            for seeds in combinations(range(3), size):
                assert tis(triangle_net, seeds) == pytest.approx(literal_tis(triangle_net, seeds))


class TestOneHop:
    def test_isolated(self):
        assert one_hop_influence(Network(2, []), 0) == 0.0

    def test_uniform_degree_three(self):
        net = Network(4, [(0, 1, 0.2), (0, 2, 0.2), (0, 3, 0.2)], uniform_p=0.2)
        assert one_hop_influence(net, 0) == pytest.approx(0.6)

    def test_weighted_leaf(self):
        net = Network(2, [(0, 1, 0.4)], weighted=True)
        assert one_hop_influence(net, 1) == pytest.approx(0.4)


class TestTransformation:
    def test_counts_evaluations(self, star_net):
        t = Transformation(0, "edv", star_net, budget=3)
        assert t.name == "EDV"
        t.evaluate([0])
        t.evaluate_many([[1], [2]])
        assert t.eval_count == 3
        assert t.eval_budget == 0
        assert not t.can_afford(1)
        t.fitness([3])
        assert t.eval_count == 3

    def test_evaluate_many_keeps_order(self, star_net):
        t = Transformation(0, "tis", star_net)
        seed_sets = [[0], [1], [0, 1]]
        assert t.evaluate_many(seed_sets) == [tis(star_net, s) for s in seed_sets]
        assert t.can_afford(10 ** 9)

    def test_reset(self, star_net):
        t = Transformation(0, "edv", star_net, budget=1)
        t.evaluate([0])
        t.reset(5)
        assert t.eval_count == 0 and t.eval_budget == 5

    def test_unknown_name(self, star_net):
        with pytest.raises(UnknownMethodError):
            Transformation(0, "ivd", star_net)
        with pytest.raises(ConfigurationError):
            make_transformations([], star_net)

    def test_make_transformations_indexes(self, star_net):
        ts = make_transformations(["tis", "edv"], star_net)
        assert [(t.index, t.name) for t in ts] == [(0, "TIS"), (1, "EDV")]
