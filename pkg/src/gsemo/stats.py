"""Summary statistics and the Mann-Whitney U rank test for run-time samples."""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations

#: Largest pooled sample size for which the exact permutation p-value is used.
EXACT_TEST_MAX_TOTAL = 16

#: Divisor convention used by :func:`summarize`, echoed in output metadata.
VARIANCE_DIVISOR = "n-1"


@dataclass(frozen=True)
class SampleSummary:
    mean: float
    variance: float
    count: int
    median: float


def summarize(samples) -> SampleSummary:
    """Mean, unbiased (n-1) variance, and midpoint median of a sample."""
    xs = sorted(float(v) for v in samples)
    k = len(xs)
    if k == 0:
        raise ValueError("samples must be non-empty")
    mean = sum(xs) / k
    variance = sum((v - mean) ** 2 for v in xs) / (k - 1) if k > 1 else 0.0
    mid = k // 2
    median = xs[mid] if k % 2 else (xs[mid - 1] + xs[mid]) / 2.0
    return SampleSummary(mean=mean, variance=variance, count=k, median=median)


def _midranks(pooled: list[float]) -> list[float]:
    """Ranks (1-based) of a sorted pooled sample, ties sharing the midrank."""
    k = len(pooled)
    ranks = [0.0] * k
    i = 0
    while i < k:
        j = i
        while j + 1 < k and pooled[j + 1] == pooled[i]:
            j += 1
        mid = (i + j + 2) / 2.0
        for t in range(i, j + 1):
            ranks[t] = mid
        i = j + 1
    return ranks


def mann_whitney_u(a, b, method: str = "auto") -> tuple[float, float]:
    """Two-sided Mann-Whitney U test with midrank tie handling.

    Returns (U, p) where U is the statistic of the first sample. With
    ``method="auto"`` the p-value comes from exact enumeration of all rank
    labelings when the pooled size is at most EXACT_TEST_MAX_TOTAL, and from
    the tie-corrected normal approximation with continuity correction
    otherwise; ``"exact"`` and ``"normal"`` force one route.
    """
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    n1, n2 = len(a), len(b)
    if n1 == 0 or n2 == 0:
        raise ValueError("both samples must be non-empty")
    if method not in ("auto", "exact", "normal"):
        raise ValueError(f"unknown method {method!r}")

    pooled = sorted(a + b)
    ranks = _midranks(pooled)
    # Rank sum of sample a: pull each a-value's rank out of the pool once.
    taken = [False] * (n1 + n2)
    r_a = 0.0
    for v in sorted(a):
        i = bisect_left(pooled, v)
        while taken[i]:
            i += 1
        taken[i] = True
        r_a += ranks[i]
    u = r_a - n1 * (n1 + 1) / 2.0

    mu = n1 * n2 / 2.0
    if method == "exact" or (method == "auto" and n1 + n2 <= EXACT_TEST_MAX_TOTAL):
        p = _exact_p(ranks, n1, u, mu)
    else:
        p = _normal_p(pooled, ranks, n1, n2, u, mu)
    return u, p


def _exact_p(ranks: list[float], n1: int, u_obs: float, mu: float) -> float:
    """Permutation p-value: share of labelings at least as extreme as u_obs."""
    dev = abs(u_obs - mu)
    offset = n1 * (n1 + 1) / 2.0
    total = 0
    extreme = 0
    for subset in combinations(ranks, n1):
        total += 1
        if abs(sum(subset) - offset - mu) >= dev - 1e-9:
            extreme += 1
    return extreme / total


def _normal_p(pooled, ranks, n1, n2, u, mu) -> float:
    n = n1 + n2
    tie_term = 0.0
    i = 0
    while i < n:
        j = i
        while j + 1 < n and pooled[j + 1] == pooled[i]:
            j += 1
        t = j - i + 1
        tie_term += t**3 - t
        i = j + 1
    var = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if var <= 0.0:
        return 1.0  # all observations tied
    z = max(abs(u - mu) - 0.5, 0.0) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2.0)))
