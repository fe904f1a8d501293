"""Quality indicators: hypervolume, IGD, and the single-objective metric.

These serve double duty: reporting, and the progress score used by the
self-adaptive mutation rules to rank offspring within a generation. The
score of a candidate is always computed against the archive as it stood at
the start of the generation (offspring are inserted only after the loop),
so sibling offspring never affect each other's scores.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, replace

import numpy as np

from .archive import Archive
from .core import ObjectiveVector

#: Reference point used for all hypervolume computations.
HV_REFERENCE: tuple[float, float] = (-1.0, -1.0)


@dataclass(frozen=True)
class MetricKind:
    kind: str  # "hv" | "igd" | "oneobj"
    period: int = 1  # resampling period T, OneObj only

    def __post_init__(self) -> None:
        if self.kind not in ("hv", "igd", "oneobj"):
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if self.period < 1:
            raise ValueError("period must be >= 1")


METRIC_TOKENS: dict[str, MetricKind] = {
    "hv": MetricKind("hv"),
    "igd": MetricKind("igd"),
    "oneobj": MetricKind("oneobj", 1),
    "oneobj10": MetricKind("oneobj", 10),
    "oneobj50": MetricKind("oneobj", 50),
}


def parse_metric(token: str) -> MetricKind:
    try:
        return METRIC_TOKENS[token.lower()]
    except KeyError:
        raise ValueError(
            f"unknown metric {token!r}; expected one of {sorted(METRIC_TOKENS)}"
        ) from None


@dataclass(frozen=True)
class OneObjState:
    """Which single objective currently drives the OneObj score."""

    period: int
    active: int  # 0 -> y1, 1 -> y2
    generations_since_resample: int = 0

    @classmethod
    def initial(cls, period: int, rng: np.random.Generator) -> "OneObjState":
        return cls(period=period, active=0 if rng.random() < 0.5 else 1)


def tick_oneobj(state: OneObjState, rng: np.random.Generator) -> OneObjState:
    """Advance one generation; resample the active objective every T ticks."""
    count = state.generations_since_resample + 1
    if count >= state.period:
        return replace(
            state,
            active=0 if rng.random() < 0.5 else 1,
            generations_since_resample=0,
        )
    return replace(state, generations_since_resample=count)


def hypervolume_2d(front, ref: tuple[float, float] = HV_REFERENCE) -> float:
    """Hypervolume of a maximized bi-objective point set.

    Sums disjoint horizontal slabs over the non-dominated subset; exact for
    the integer-valued benchmark objectives. Every point must strictly
    dominate the reference point in both components.
    """
    pts = sorted(front, key=lambda y: (-y[0], -y[1]))
    if not pts:
        raise ValueError("front must be non-empty")
    hv = 0.0
    last_y2 = ref[1]
    for y1, y2 in pts:
        if y1 <= ref[0] or y2 <= ref[1]:
            raise ValueError(f"point ({y1}, {y2}) does not dominate ref {ref}")
        if y2 > last_y2:
            hv += (y1 - ref[0]) * (y2 - last_y2)
            last_y2 = y2
    return hv


def igd(front_true, obtained) -> float:
    """Inverted generational distance, sqrt(sum d_i^2) / |front_true|.

    d_i is the Euclidean distance from the i-th true front point to its
    nearest point in the obtained set.
    """
    ft = np.asarray(sorted(front_true), dtype=float)
    ob = np.asarray(sorted(obtained), dtype=float)
    if ft.size == 0 or ob.size == 0:
        raise ValueError("both point sets must be non-empty")
    d2 = ((ft[:, None, :] - ob[None, :, :]) ** 2).sum(axis=2).min(axis=1)
    return float(math.sqrt(d2.sum()) / len(ft))


def score(
    metric: MetricKind,
    state: OneObjState | None,
    arch: Archive,
    cand: ObjectiveVector,
) -> float:
    """Progress score of a candidate objective vector, larger is better.

    HV scores the hypervolume of the archive united with the candidate; IGD
    scores the negated IGD of that union against the true front (negated so
    all metrics are maximized); OneObj scores the candidate's improvement of
    the currently active objective over the archive's best value.
    """
    if len(arch) == 0:
        raise ValueError("archive is empty")
    if metric.kind == "hv":
        return hypervolume_2d(arch.objective_vectors() + [tuple(cand)])
    if metric.kind == "igd":
        return -igd(arch.problem.pareto_front(), arch.objective_vectors() + [tuple(cand)])
    if state is None:
        raise ValueError("OneObj scoring requires a OneObjState")
    best = arch.best_values()
    return float(cand[state.active] - best[state.active])


class GenerationScorer:
    """Per-generation scoring engine used inside the optimizer loops.

    ``begin_generation`` freezes the archive snapshot (and, for OneObj,
    advances the period clock); ``score_batch`` then ranks the generation's
    offspring. Scores are identical to :func:`score` up to a per-generation
    constant, which leaves the argmax unchanged; the HV path computes each
    candidate's volume gain incrementally instead of re-summing the front.
    """

    def __init__(self, metric: MetricKind, problem, rng: np.random.Generator) -> None:
        self.metric = metric
        self.state = (
            OneObjState.initial(metric.period, rng) if metric.kind == "oneobj" else None
        )
        if metric.kind == "igd":
            self._front = np.asarray(sorted(problem.pareto_front()), dtype=float)
        self._y1s: list[int] = []
        self._y2s: list[int] = []
        self._best = (0, 0)
        self._base_d2: np.ndarray | None = None

    def begin_generation(self, arch: Archive, rng: np.random.Generator) -> None:
        kind = self.metric.kind
        if kind == "oneobj":
            self.state = tick_oneobj(self.state, rng)
            self._best = arch.best_values()
            return
        vecs = arch.objective_vectors()
        self._y1s = [y[0] for y in vecs]
        self._y2s = [y[1] for y in vecs]
        if kind == "igd":
            ob = np.asarray(vecs, dtype=float)
            self._base_d2 = (
                ((self._front[:, None, :] - ob[None, :, :]) ** 2).sum(axis=2).min(axis=1)
            )

    def score_batch(self, ys: list[ObjectiveVector]) -> list[float]:
        kind = self.metric.kind
        if kind == "oneobj":
            a = self.state.active
            best = self._best[a]
            return [float(y[a] - best) for y in ys]
        if kind == "hv":
            return [self._hv_gain(y) for y in ys]
        return [self._neg_igd(y) for y in ys]

    def _hv_gain(self, y: ObjectiveVector) -> float:
        """Volume added to the frozen front by y, relative to HV_REFERENCE."""
        y1s, y2s = self._y1s, self._y2s
        ref1, ref2 = HV_REFERENCE
        i = bisect_right(y1s, y[0])
        upper = y2s[i] if i < len(y2s) else ref2
        if upper >= y[1]:
            return 0.0
        gain = 0.0
        y_cur = upper
        j = i - 1
        while j >= 0 and y2s[j] < y[1]:
            gain += (y[0] - y1s[j]) * (y2s[j] - y_cur)
            y_cur = y2s[j]
            j -= 1
        left = y1s[j] if j >= 0 else ref1
        gain += (y[0] - left) * (y[1] - y_cur)
        return gain

    def _neg_igd(self, y: ObjectiveVector) -> float:
        d2 = ((self._front - np.asarray(y, dtype=float)) ** 2).sum(axis=1)
        d2 = np.minimum(self._base_d2, d2)
        return -float(math.sqrt(d2.sum()) / len(self._front))
