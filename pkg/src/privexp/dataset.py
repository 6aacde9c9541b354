"""Immutable sample container and rate-bound interval."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDataset, InvalidRatio

__all__ = ["Dataset", "RateBounds"]


class Dataset:
    """An immutable collection of nonnegative finite reals.

    Keeps a sorted copy so counting queries (#{x < t}) cost O(log n) via
    binary search; the learners issue many of these per invocation.
    """

    def __init__(self, values):
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"expected a flat sequence, got shape {arr.shape}")
        if arr.size == 0:
            raise EmptyDataset("dataset must contain at least one value")
        if not np.all(np.isfinite(arr)):
            raise ValueError("dataset values must be finite")
        if np.any(arr < 0):
            raise ValueError("dataset values must be nonnegative")
        self._values = arr.copy()
        self._values.setflags(write=False)
        self._sorted = np.sort(arr)
        self._sorted.setflags(write=False)
        self.n = int(arr.size)

    @property
    def values(self) -> np.ndarray:
        return self._values

    def count_below(self, threshold: float) -> int:
        """#{x in data : x < threshold}."""
        return int(np.searchsorted(self._sorted, threshold, side="left"))

    def fraction_below(self, threshold: float) -> float:
        return self.count_below(threshold) / self.n

    def min(self) -> float:
        return float(self._sorted[0])

    def max(self) -> float:
        return float(self._sorted[-1])

    def __len__(self) -> int:
        return self.n

    def __repr__(self):  # pragma: no cover
        return f"Dataset(n={self.n})"


@dataclass(frozen=True)
class RateBounds:
    """An interval 0 < lower < upper of plausible rate (or shape) values."""

    lower: float
    upper: float

    def __post_init__(self):
        lo, hi = self.lower, self.upper
        ok = (isinstance(lo, (int, float)) and isinstance(hi, (int, float))
              and math.isfinite(lo) and math.isfinite(hi) and 0 < lo < hi)
        if not ok:
            raise InvalidRatio(f"need 0 < lower < upper, got ({lo!r}, {hi!r})")

    @property
    def ratio(self) -> float:
        return self.upper / self.lower

    def contains(self, value: float) -> bool:
        return self.lower < value < self.upper
