"""Pareto archive of mutually non-dominated individuals.

The archive keeps its members sorted by y1 ascending (hence y2 strictly
descending), which makes the dominance checks O(log k) and removals a
contiguous slice. One optimization run owns and mutates exactly one archive.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .core import Bitstring, ObjectiveVector
from .problems import Problem


@dataclass(frozen=True)
class Individual:
    """A solution plus the per-solution adaptation state used by AGSEMO.

    ``strength`` and ``stagnation`` default to (1, 0) and are ignored by the
    algorithms that adapt a single global parameter.
    """

    genotype: Bitstring
    objectives: ObjectiveVector
    strength: float = 1.0
    stagnation: int = 0


class Archive:
    def __init__(self, problem: Problem) -> None:
        self.problem = problem
        self._members: list[Individual] = []
        self._y1s: list[int] = []
        self._front_remaining = set(problem.pareto_front())
        self._geno_mat: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return iter(self._members)

    @property
    def members(self) -> list[Individual]:
        return list(self._members)

    def objective_vectors(self) -> list[ObjectiveVector]:
        return [m.objectives for m in self._members]

    def would_accept(self, y: ObjectiveVector) -> bool:
        """True iff no current member strictly dominates y.

        A candidate whose objective vector equals a member's is accepted (it
        replaces that member on insert), keeping the newest genotype per
        vector.
        """
        i = bisect_left(self._y1s, y[0])
        # Among members with y1 >= y[0] the first one has the largest y2.
        if i >= len(self._members):
            return True
        m = self._members[i]
        return m.objectives == y or m.objectives[1] < y[1]

    def try_insert(self, ind: Individual) -> bool:
        """Insert per the non-dominance acceptance rule.

        Rejects ind (returns False) when some member strictly dominates its
        objectives. Otherwise removes all members ind weakly dominates --
        including a member with the identical vector, which ind replaces --
        and adds it. Keeping the newest genotype per vector lets the middle
        bits of same-valued solutions drift, which measurably accelerates
        front coverage on problems whose vectors do not pin down the genotype.
        """
        y = ind.objectives
        i = bisect_left(self._y1s, y[0])
        members = self._members
        if i < len(members):
            m = members[i]
            if m.objectives[1] >= y[1] and m.objectives != y:
                return False
        # Members with y1 == y[0] now have y2 < y[1] and must go too.
        hi = i + 1 if i < len(members) and self._y1s[i] == y[0] else i
        lo = hi
        while lo > 0 and members[lo - 1].objectives[1] <= y[1]:
            lo -= 1
        if lo != hi:
            del members[lo:hi]
            del self._y1s[lo:hi]
        members.insert(lo, ind)
        self._y1s.insert(lo, y[0])
        self._front_remaining.discard(y)
        self._geno_mat = None
        return True

    def best_values(self) -> tuple[int, int]:
        """Componentwise maxima over member objectives."""
        if not self._members:
            raise ValueError("archive is empty")
        return (self._y1s[-1], self._members[0].objectives[1])

    def is_edge(self, ind: Individual) -> bool:
        """True iff the member attains the archive maximum of y1 or y2."""
        y = ind.objectives
        i = bisect_left(self._y1s, y[0])
        if (
            i >= len(self._members)
            or self._y1s[i] != y[0]
            or self._members[i].objectives != y
        ):
            raise ValueError("individual is not an archive member")
        y1_best, y2_best = self.best_values()
        return y[0] == y1_best or y[1] == y2_best

    def is_front_complete(self) -> bool:
        return not self._front_remaining

    def genotype_matrix(self) -> np.ndarray:
        """Member genotypes stacked as a read-only (k, n) uint8 matrix."""
        if self._geno_mat is None:
            self._geno_mat = np.stack([m.genotype.bits for m in self._members])
        return self._geno_mat

    def snapshot_lines(self) -> list[str]:
        """Serialized members, one "y1,y2,genotype" line each."""
        return [
            f"{m.objectives[0]},{m.objectives[1]},{m.genotype}" for m in self._members
        ]
