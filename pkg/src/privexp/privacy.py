"""Privacy primitives: budgets, Laplace noise, noisy counting queries.

The budget ledger enforces the composition structure of the learners: a
budget is either consumed whole or split into fractions exactly once, and
each fragment is then consumed by exactly one mechanism. Reuse raises.
Every noisy mechanism also accepts a ``noiseless`` flag that replaces each
draw with exactly 0.0 (without touching the random stream), which turns the
learners into deterministic functions of the data for oracle testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadSplit, BudgetExhausted, EmptyDataset, InvalidScale

__all__ = [
    "RngStream",
    "NoiseScale",
    "PrivacyBudget",
    "split_budget",
    "sample_laplace",
    "noisy_fraction_below",
]

# Fraction lists must sum to 1; tolerate accumulated representation error of
# one ulp at 1.0 (e.g. 1/3 + 2/3 lands one ulp short).
_SPLIT_TOL = 2.0 ** -50


class RngStream:
    """A seeded, independent random stream.

    (seed, stream_id) fully determines the draw sequence. Distinct
    stream_ids under the same seed give statistically independent streams,
    so parallel trials can each own stream_id = trial index without any
    coordination. ``laplace_draws`` counts the Laplace samples actually
    drawn, which the tests use to audit SVT halting behavior.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.PCG64(ss))
        self.laplace_draws = 0

    def random(self, size=None):
        """Uniform draw(s) in [0, 1)."""
        return self.generator.random(size)

    def __repr__(self):  # pragma: no cover
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


@dataclass(frozen=True)
class NoiseScale:
    """Laplace scale b = sensitivity / epsilon for a declared query."""

    scale_b: float

    def __post_init__(self):
        b = self.scale_b
        if not (isinstance(b, (int, float)) and math.isfinite(b) and b > 0):
            raise InvalidScale(f"Laplace scale must be positive and finite, got {b!r}")


def sample_laplace(scale: NoiseScale, rng: RngStream, noiseless: bool = False) -> float:
    """One draw from Laplace(0, b) via inverse CDF; exactly 0.0 when noiseless.

    Noiseless mode does not advance the stream, so noisy and noiseless runs
    of the same mechanism consume uniforms only for draws that really happen.
    """
    if noiseless:
        return 0.0
    b = scale.scale_b
    u = rng.generator.random() - 0.5
    while u == -0.5:  # log1p(-1) = -inf; probability-zero edge of the uniform
        u = rng.generator.random() - 0.5
    rng.laplace_draws += 1
    return -b * math.copysign(1.0, u) * math.log1p(-2.0 * abs(u))


def noisy_fraction_below(data, threshold: float, scale: NoiseScale, rng: RngStream,
                         noiseless: bool = False) -> float:
    """(#{x in data : x < threshold})/n + Laplace(scale), unclamped.

    Sensitivity of the fraction is 1/n; callers choose the scale. The raw
    noisy value may fall outside [0, 1] and is compared as-is.
    """
    if data.n == 0:
        raise EmptyDataset("fraction query needs at least one sample")
    return data.fraction_below(threshold) + sample_laplace(scale, rng, noiseless)


class PrivacyBudget:
    """An (epsilon, delta) budget that can be spent exactly once.

    A budget starts fresh, and a learner either consumes it whole or splits
    it into positive fractions summing to 1 (each child then follows the
    same discipline). ``spent()`` walks the ledger tree and reports the
    total actually consumed, which the tests compare against the configured
    budget.
    """

    def __init__(self, epsilon: float, delta: float = 0.0):
        if not (math.isfinite(epsilon) and epsilon > 0):
            raise ValueError(f"epsilon must be positive and finite, got {epsilon!r}")
        if not (0.0 <= delta < 1.0):
            raise ValueError(f"delta must lie in [0, 1), got {delta!r}")
        self.epsilon = float(epsilon)
        self.delta = float(delta)
        self._state = "fresh"
        self._children: list[PrivacyBudget] = []

    @property
    def state(self) -> str:
        return self._state

    @property
    def children(self) -> tuple["PrivacyBudget", ...]:
        """The fragments this budget was split into (empty unless split)."""
        return tuple(self._children)

    def consume(self) -> None:
        """Mark the whole budget as spent by one mechanism."""
        if self._state != "fresh":
            raise BudgetExhausted(f"budget already {self._state}")
        self._state = "consumed"

    def split(self, fractions, delta_fractions=None) -> list["PrivacyBudget"]:
        """Split into children with epsilons fraction*epsilon.

        ``delta_fractions`` lets a caller route the whole delta to one child
        (the bounds finder spends (epsilon/2, delta) then (epsilon/2, 0));
        by default delta follows the same fractions as epsilon.
        """
        if self._state != "fresh":
            raise BudgetExhausted(f"budget already {self._state}")
        fractions = list(fractions)
        if not fractions or any(not (f > 0) for f in fractions):
            raise BadSplit(f"fractions must be positive, got {fractions!r}")
        if abs(math.fsum(fractions) - 1.0) > _SPLIT_TOL:
            raise BadSplit(f"fractions must sum to 1, got {fractions!r}")
        if delta_fractions is None:
            delta_fractions = fractions
        else:
            delta_fractions = list(delta_fractions)
            if len(delta_fractions) != len(fractions):
                raise BadSplit("delta_fractions length must match fractions")
            if any(d < 0 for d in delta_fractions):
                raise BadSplit("delta fractions must be nonnegative")
            if abs(math.fsum(delta_fractions) - 1.0) > _SPLIT_TOL:
                raise BadSplit(f"delta fractions must sum to 1, got {delta_fractions!r}")
        children = [
            PrivacyBudget(f * self.epsilon, d * self.delta)
            for f, d in zip(fractions, delta_fractions)
        ]
        self._state = "split"
        self._children = children
        return children

    def spent(self) -> tuple[float, float]:
        """Total (epsilon, delta) consumed beneath this node."""
        if self._state == "consumed":
            return self.epsilon, self.delta
        if self._state == "split":
            eps = math.fsum(c.spent()[0] for c in self._children)
            dlt = math.fsum(c.spent()[1] for c in self._children)
            return eps, dlt
        return 0.0, 0.0

    def __repr__(self):  # pragma: no cover
        return (f"PrivacyBudget(epsilon={self.epsilon}, delta={self.delta}, "
                f"state={self._state})")


def split_budget(parent: PrivacyBudget, fractions, delta_fractions=None):
    """Functional alias for PrivacyBudget.split."""
    return parent.split(fractions, delta_fractions)
