"""Mutation-strength samplers and the three self-adaptation update rules."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Bitstring

#: Variance decay applied per stagnant generation by the var-ctrl rule.
VARIANCE_DECAY = 0.98


@dataclass(frozen=True)
class TwoRateState:
    """Mutation strength r of the two-rate rule, kept in [1/2, n/4]."""

    r: float


@dataclass(frozen=True)
class LogNormalState:
    """Mutation rate p of the log-normal rule, kept in [1/(4n), 1/2]."""

    p: float


@dataclass(frozen=True)
class VarCtrlState:
    """Mean strength r and stagnation counter c of normalized bit mutation."""

    r: float
    c: int = 0
    decay: float = VARIANCE_DECAY

    def variance(self, n: int) -> float:
        """Sampling variance decay^c * r * (1 - r/n)."""
        return self.decay**self.c * self.r * (1.0 - self.r / n)


def sample_binomial_gt0(n: int, p: float, rng: np.random.Generator) -> int:
    """Draw from Binomial(n, p) conditioned on a strictly positive outcome."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must be in (0, 1], got {p}")
    while True:
        ell = int(rng.binomial(n, p))
        if ell > 0:
            return ell


def sample_binomial_gt0_batch(
    n: int, p, size: int, rng: np.random.Generator
) -> np.ndarray:
    """Vectorized conditional binomial; p may be a scalar or a length-size array."""
    p_arr = np.asarray(p, dtype=float)
    if p_arr.ndim == 0:
        pv = float(p_arr)
        if not 0.0 < pv <= 1.0:
            raise ValueError(f"p must be in (0, 1], got {pv}")
        ells = rng.binomial(n, pv, size)
        idx = np.flatnonzero(ells == 0)
        while idx.size:
            ells[idx] = rng.binomial(n, pv, idx.size)
            idx = idx[ells[idx] == 0]
        return ells.astype(np.int64)
    if p_arr.shape != (size,):
        raise ValueError("p must be a scalar or a length-size array")
    if p_arr.min() <= 0.0 or p_arr.max() > 1.0:
        raise ValueError("all rates must be in (0, 1]")
    ells = rng.binomial(n, p_arr)
    idx = np.flatnonzero(ells == 0)
    while idx.size:
        ells[idx] = rng.binomial(n, p_arr[idx])
        idx = idx[ells[idx] == 0]
    return ells.astype(np.int64)


def sample_normal_gt0(
    mean: float, variance: float, cap: int, rng: np.random.Generator
) -> int:
    """Integer strength from a Normal(mean, variance) draw, kept in [1, cap].

    The draw is truncated toward zero and then clamped from below at 1, so at
    small means the probability mass concentrates on ell = 1; this
    concentration is what lets the winning strength repeat and the sampling
    variance decay. A zero variance degenerates to min(max(int(mean), 1), cap).
    """
    if mean < 0.5:
        raise ValueError("mean must be >= 1/2")
    if variance < 0.0:
        raise ValueError("variance must be non-negative")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if variance == 0.0:
        return min(max(int(mean), 1), cap)
    ell = int(rng.normal(mean, math.sqrt(variance)))
    return min(max(ell, 1), cap)


def sample_normal_gt0_batch(
    mean: float, variance: float, cap: int, size: int, rng: np.random.Generator
) -> np.ndarray:
    """Vectorized counterpart of :func:`sample_normal_gt0`."""
    if variance < 0.0:
        raise ValueError("variance must be non-negative")
    if variance == 0.0:
        return np.full(size, min(max(int(mean), 1), cap), dtype=np.int64)
    ells = rng.normal(mean, math.sqrt(variance), size).astype(np.int64)
    return np.clip(ells, 1, cap)


def sample_normal_gt0_mixed(
    means: np.ndarray, variances: np.ndarray, cap: int, rng: np.random.Generator
) -> np.ndarray:
    """Elementwise :func:`sample_normal_gt0` with per-draw mean and variance.

    A zero variance degenerates to the truncated mean, matching the scalar
    sampler; one batched normal draw serves the whole generation.
    """
    means = np.asarray(means, dtype=float)
    variances = np.asarray(variances, dtype=float)
    if variances.min(initial=0.0) < 0.0:
        raise ValueError("variance must be non-negative")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ells = rng.normal(means, np.sqrt(variances)).astype(np.int64)
    return np.clip(ells, 1, cap)


def flip(x: Bitstring, ell: int, rng: np.random.Generator) -> Bitstring:
    """Invert exactly ell distinct positions chosen uniformly at random."""
    n = len(x)
    if not 1 <= ell <= n:
        raise ValueError(f"ell must be in [1, {n}], got {ell}")
    bits = x.bits.copy()
    idx = rng.permutation(n)[:ell]
    bits[idx] ^= 1
    return Bitstring._trusted(bits)


def two_rate_update(
    st: TwoRateState, winner_in_low_half: bool, n: int, rng: np.random.Generator
) -> TwoRateState:
    """Halve or double r, favoring the winning half with probability 3/4."""
    s = 0.75 if winner_in_low_half else 0.25
    if rng.random() <= s:
        return TwoRateState(max(st.r / 2.0, 0.5))
    return TwoRateState(min(2.0 * st.r, n / 4.0))


def lognormal_perturb(p: float, rng: np.random.Generator) -> float:
    """Multiply the odds (1-p)/p by a log-normal factor exp(0.22 * N(0,1))."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    g = rng.standard_normal()
    return 1.0 / (1.0 + (1.0 - p) / p * math.exp(0.22 * g))


def lognormal_perturb_batch(
    p, size: int, rng: np.random.Generator
) -> np.ndarray:
    """Vectorized :func:`lognormal_perturb`; p may be a scalar or array of size."""
    p_arr = np.asarray(p, dtype=float)
    if p_arr.min() <= 0.0 or p_arr.max() >= 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    g = rng.standard_normal(size)
    return 1.0 / (1.0 + (1.0 - p_arr) / p_arr * np.exp(0.22 * g))


def var_ctrl_update(st: VarCtrlState, winning_ell: int) -> VarCtrlState:
    """Adopt the winning strength; count stagnation while it repeats."""
    if winning_ell < 1:
        raise ValueError("winning strength must be >= 1")
    c = st.c + 1 if winning_ell == st.r else 0
    return VarCtrlState(float(winning_ell), c, st.decay)
