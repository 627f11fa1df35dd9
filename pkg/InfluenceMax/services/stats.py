"""
Rank statistics used by the experiment harness.

Thin wrappers over :mod:`scipy.stats` that add the win/tie/loss verdict and
return something usable for degenerate samples.
"""

import math
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy import stats as sps

BETTER = "+"
WORSE = "-"
SIMILAR = "≈"


class RankSumResult(NamedTuple):
    u: float
    p_value: float
    verdict: str


class SpearmanResult(NamedTuple):
    coefficient: Optional[float]
    p_value: Optional[float]


def wilcoxon_rank_sum(a: Sequence[float], b: Sequence[float], alpha: float = 0.05) -> RankSumResult:
    """
    Two-sided Wilcoxon rank-sum (Mann-Whitney U) test.

    Normal approximation with tie and continuity correction. ``u`` is the
    statistic of ``a``. The verdict reads from a's side: "+" when a is
    significantly larger, "-" when significantly smaller, "≈" otherwise.
    Samples that are all one value give p = 1.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n1, n2 = a.size, b.size
    if n1 < 2 or n2 < 2:
        raise ValueError("rank-sum test needs at least two observations per sample")

    if np.ptp(np.concatenate([a, b])) == 0:
        return RankSumResult(n1 * n2 / 2.0, 1.0, SIMILAR)

    result = sps.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True)
    u1 = float(result.statistic)
    u2 = n1 * n2 - u1
    p_value = float(result.pvalue)
    if math.isnan(p_value):
        p_value = 1.0

    verdict = SIMILAR
    if p_value < alpha and u1 != u2:
        verdict = BETTER if u1 > u2 else WORSE
    return RankSumResult(u1, p_value, verdict)


def spearman(x: Sequence[float], y: Sequence[float]) -> SpearmanResult:
    """
    Spearman rank correlation with averaged ranks for ties.

    A constant vector has no ranking; both fields are None then. The
    p-value tests zero correlation with the t approximation and is None
    for two points.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size != y.size:
        raise ValueError("vectors must have the same length")
    if x.size < 2 or np.ptp(x) == 0 or np.ptp(y) == 0:
        return SpearmanResult(None, None)

    rho, p_value = sps.spearmanr(x, y)
    rho = max(-1.0, min(1.0, float(rho)))
    if x.size < 3 or math.isnan(p_value):
        return SpearmanResult(rho, None)
    return SpearmanResult(rho, float(p_value))
