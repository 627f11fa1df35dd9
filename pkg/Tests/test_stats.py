import numpy as np
import pytest

from InfluenceMax.services import spearman, wilcoxon_rank_sum
from InfluenceMax.services.stats import BETTER, SIMILAR, WORSE


class TestSpearman:
    def test_one_swap(self):
        assert spearman([1, 2, 3, 4], [1, 3, 2, 4]).coefficient == pytest.approx(0.8)

    def test_identical_and_reversed(self):
        assert spearman([1, 2, 3], [1, 2, 3]).coefficient == pytest.approx(1.0)
        assert spearman([1, 2, 3], [3, 2, 1]).coefficient == pytest.approx(-1.0)

    def test_constant_vector(self):
        result = spearman([2, 2, 2], [1, 2, 3])
        assert result.coefficient is None and result.p_value is None

    def test_monotone_transform_invariant(self):
        rng = np.random.default_rng(0)
        x, y = rng.random(50), rng.random(50)
        assert spearman(np.exp(x), y ** 3).coefficient == pytest.approx(spearman(x, y).coefficient)

    def test_ties_use_average_ranks(self):
        result = spearman([1, 2, 2, 3], [1, 2, 3, 4])
        assert result.coefficient == pytest.approx(3.0 / np.sqrt(10.0))

    def test_t_approximation_p_value(self):
        assert spearman([1, 2, 3, 4], [1, 3, 2, 4]).p_value == pytest.approx(0.2)

    def test_two_points(self):
        result = spearman([1.0, 2.0], [3.0, 5.0])
        assert result.coefficient == pytest.approx(1.0)
        assert result.p_value is None

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            spearman([1, 2], [1, 2, 3])


class TestRankSum:
    def test_identical_samples(self):
        result = wilcoxon_rank_sum([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert result.p_value == pytest.approx(1.0)
        assert result.verdict == SIMILAR

    def test_all_constant(self):
        assert wilcoxon_rank_sum([5.0] * 4, [5.0] * 4).verdict == SIMILAR

    def test_clear_difference(self):
        high = list(np.arange(20) + 100.0)
        low = list(np.arange(20, dtype=float))
        result = wilcoxon_rank_sum(high, low)
        assert result.p_value < 0.001
        assert result.verdict == BETTER
        assert wilcoxon_rank_sum(low, high).verdict == WORSE

    def test_three_against_three(self):
        result = wilcoxon_rank_sum([1, 2, 3], [4, 5, 6])
        assert result.u == 0.0
        assert result.p_value == pytest.approx(0.0809, abs=1e-3)
        assert result.verdict == SIMILAR

    def test_statistic_belongs_to_first_sample(self):
        a = [0.5, 1.5, 2.5, 3.5, 9.0]
        b = [1.0, 2.0, 3.0]
        forward = wilcoxon_rank_sum(a, b)
        backward = wilcoxon_rank_sum(b, a)
        assert forward.u == 9.0
        assert forward.u + backward.u == 15.0
        assert forward.p_value == pytest.approx(backward.p_value)

    def test_ties_across_samples(self):
        result = wilcoxon_rank_sum([1.0, 2.0, 2.0, 3.0], [2.0, 3.0, 3.0, 4.0])
        assert result.u == 3.5
        assert result.verdict == SIMILAR

    def test_too_few_values(self):
        with pytest.raises(ValueError):
            wilcoxon_rank_sum([1.0], [2.0, 3.0])
