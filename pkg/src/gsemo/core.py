"""Genotypes, objective vectors, and Pareto dominance (maximization)."""

from __future__ import annotations

import numpy as np

# Bi-objective value pair (y1, y2), both maximized, non-negative integers.
ObjectiveVector = tuple[int, int]


class Bitstring:
    """Immutable fixed-length binary genotype."""

    __slots__ = ("_bits",)

    def __init__(self, bits) -> None:
        arr = np.ascontiguousarray(bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bitstring must be one-dimensional")
        if arr.size < 2:
            raise ValueError("bitstring length must be at least 2")
        if arr.max(initial=0) > 1:
            raise ValueError("bitstring elements must be 0 or 1")
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "Bitstring":
        # Fast path for arrays already known to be valid uint8 0/1 vectors.
        self = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        arr.flags.writeable = False
        self._bits = arr
        return self

    @classmethod
    def from_string(cls, text: str) -> "Bitstring":
        return cls([int(c) for c in text])

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def n(self) -> int:
        return self._bits.size

    def __len__(self) -> int:
        return self._bits.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bitstring):
            return NotImplemented
        return self._bits.size == other._bits.size and bool(
            np.array_equal(self._bits, other._bits)
        )

    def __hash__(self) -> int:
        return hash(self._bits.tobytes())

    def __str__(self) -> str:
        # Compact log form, most significant index first.
        return "".join("1" if b else "0" for b in self._bits)

    def __repr__(self) -> str:
        return f"Bitstring('{self}')"


def weakly_dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """True iff a is at least as good as b in both objectives."""
    return a[0] >= b[0] and a[1] >= b[1]


def strictly_dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """True iff a weakly dominates b and they differ."""
    return a[0] >= b[0] and a[1] >= b[1] and tuple(a) != tuple(b)


def hamming_distance(a: Bitstring, b: Bitstring) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return int(np.count_nonzero(a.bits != b.bits))
