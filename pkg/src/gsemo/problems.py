"""Bi-objective pseudo-Boolean benchmark problems.

All three problems are maximization problems over {0,1}^n with integer
objective values. Each problem knows its exact Pareto front, which the
optimizers use for completion detection.
"""

from __future__ import annotations

import numpy as np

from .core import Bitstring, ObjectiveVector


class Problem:
    """Base class for the benchmark objective functions."""

    name: str = ""

    def __init__(self, n: int) -> None:
        if not isinstance(n, (int, np.integer)) or n < 2:
            raise ValueError("dimension n must be an integer >= 2")
        self.n = int(n)
        self._front: frozenset[ObjectiveVector] | None = None

    def _as_bits(self, x) -> np.ndarray:
        bits = x.bits if isinstance(x, Bitstring) else np.asarray(x, dtype=np.uint8)
        if bits.shape != (self.n,):
            raise ValueError(f"expected a bitstring of length {self.n}")
        return bits

    def evaluate(self, x) -> ObjectiveVector:
        raise NotImplementedError

    def evaluate_batch(self, mat: np.ndarray) -> np.ndarray:
        """Evaluate a (k, n) matrix of genotypes, returning a (k, 2) int array."""
        raise NotImplementedError

    def _compute_front(self) -> frozenset[ObjectiveVector]:
        raise NotImplementedError

    def pareto_front(self) -> frozenset[ObjectiveVector]:
        if self._front is None:
            self._front = self._compute_front()
        return self._front

    def is_pareto_optimal(self, y: ObjectiveVector) -> bool:
        return tuple(y) in self.pareto_front()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n})"


class OneMinMax(Problem):
    """Maximize the number of ones and the number of zeros."""

    name = "oneminmax"

    def evaluate(self, x) -> ObjectiveVector:
        ones = int(self._as_bits(x).sum())
        return (ones, self.n - ones)

    def evaluate_batch(self, mat: np.ndarray) -> np.ndarray:
        ones = mat.sum(axis=1, dtype=np.int64)
        return np.stack([ones, self.n - ones], axis=1)

    def _compute_front(self) -> frozenset[ObjectiveVector]:
        return frozenset((i, self.n - i) for i in range(self.n + 1))


class LOTZ(Problem):
    """Leading Ones, Trailing Zeros."""

    name = "lotz"

    def evaluate(self, x) -> ObjectiveVector:
        bits = self._as_bits(x)
        zeros = np.flatnonzero(bits == 0)
        lead = int(zeros[0]) if zeros.size else self.n
        ones = np.flatnonzero(bits == 1)
        trail = self.n - 1 - int(ones[-1]) if ones.size else self.n
        return (lead, trail)

    def evaluate_batch(self, mat: np.ndarray) -> np.ndarray:
        # Leading ones: sum of the running product of bits; trailing zeros the
        # same on the reversed complement. Branch-free on purpose.
        lead = mat.cumprod(axis=1).sum(axis=1, dtype=np.int64)
        trail = (1 - mat[:, ::-1]).cumprod(axis=1).sum(axis=1, dtype=np.int64)
        return np.stack([lead, trail], axis=1)

    def _compute_front(self) -> frozenset[ObjectiveVector]:
        return frozenset((i, self.n - i) for i in range(self.n + 1))


class COCZ(Problem):
    """Count Ones Count Zeros; requires even n = 2k.

    y1 counts all ones; y2 counts ones in the first half plus zeros in the
    second half (disjoint halves, each bit contributing once to y2).
    """

    name = "cocz"

    def __init__(self, n: int) -> None:
        super().__init__(n)
        if self.n % 2 != 0:
            raise ValueError("COCZ requires an even dimension")

    def evaluate(self, x) -> ObjectiveVector:
        bits = self._as_bits(x)
        h = self.n // 2
        y1 = int(bits.sum())
        y2 = int(bits[:h].sum()) + h - int(bits[h:].sum())
        return (y1, y2)

    def evaluate_batch(self, mat: np.ndarray) -> np.ndarray:
        h = self.n // 2
        y1 = mat.sum(axis=1, dtype=np.int64)
        y2 = mat[:, :h].sum(axis=1, dtype=np.int64) + h - mat[:, h:].sum(
            axis=1, dtype=np.int64
        )
        return np.stack([y1, y2], axis=1)

    def _compute_front(self) -> frozenset[ObjectiveVector]:
        # First half all ones; k ones in the second half give (n/2 + k, n - k).
        h = self.n // 2
        return frozenset((h + k, self.n - k) for k in range(h + 1))


PROBLEMS: dict[str, type[Problem]] = {
    OneMinMax.name: OneMinMax,
    LOTZ.name: LOTZ,
    COCZ.name: COCZ,
}


def make_problem(token: str, n: int) -> Problem:
    """Build a problem from its CLI token: "oneminmax" | "lotz" | "cocz"."""
    try:
        cls = PROBLEMS[token.lower()]
    except KeyError:
        raise ValueError(
            f"unknown problem {token!r}; expected one of {sorted(PROBLEMS)}"
        ) from None
    return cls(n)
