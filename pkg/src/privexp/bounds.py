"""Approximate-DP discovery of rate bounds via a dyadic histogram.

The median of Exp(rate) is ln(2)/rate, so the power-of-two bin holding the
most mass brackets the median within a factor of 2 on each side. Releasing
noisy bin fractions and keeping only those above a threshold calibrated to
(eps, delta) gives a private argmax bin, hence bounds with ratio exactly 4.
Only nonempty bins receive noise; empty bins release exactly zero, which is
what costs the delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, RateBounds
from .errors import NoBinSurvived
from .learners import Estimate, LearnerConfig, best_of_both
from .privacy import NoiseScale, PrivacyBudget, RngStream, sample_laplace, split_budget

__all__ = ["DyadicHistogram", "dyadic_histogram", "find_bounds", "learn_without_bounds"]

# Bin index of x is k with x in [2^k, 2^(k+1)); every positive double lands
# in k in [-1074, 1023]. Zero is assigned to the lowest representable bin.
ZERO_BIN = -1074


def dyadic_histogram(data: Dataset) -> dict[int, float]:
    """Fractions of data per power-of-two bin [2^k, 2^(k+1)); nonempty bins only."""
    values = data.values
    _, exponents = np.frexp(values)
    k = exponents.astype(np.int64) - 1
    k[values == 0] = ZERO_BIN
    bins, counts = np.unique(k, return_counts=True)
    return {int(b): int(c) / data.n for b, c in zip(bins, counts)}


@dataclass(frozen=True)
class DyadicHistogram:
    """Raw fractions, their noisy releases, the survivor set, and the cutoff."""

    bins: dict[int, float]
    noisy_bins: dict[int, float]
    survivor_set: set[int]
    threshold: float


def noisy_histogram(data: Dataset, budget: PrivacyBudget, rng: RngStream,
                    noiseless: bool = False) -> DyadicHistogram:
    """Releases the stabilized noisy histogram; consumes the whole budget."""
    if not budget.delta > 0:
        raise ValueError("the histogram release needs delta > 0")
    budget.consume()
    eps, delta, n = budget.epsilon, budget.delta, data.n
    bins = dyadic_histogram(data)
    scale = NoiseScale(2.0 / (eps * n))
    noisy = {k: bins[k] + sample_laplace(scale, rng, noiseless)
             for k in sorted(bins)}
    threshold = (2.0 / (eps * n)) * math.log(2.0 / delta) + 1.0 / n
    survivors = {k for k, v in noisy.items() if v >= threshold}
    return DyadicHistogram(bins, noisy, survivors, threshold)


def find_bounds(data: Dataset, budget: PrivacyBudget, rng: RngStream,
                noiseless: bool = False):
    """RateBounds bracketing ln(2)/(top surviving bin), or None if no bin survives.

    The returned interval is (ln2 * 2^-(k*+1), ln2 * 2^-(k*-1)) where k* is
    the surviving bin with the largest noisy fraction (smallest k on ties),
    so its ratio is exactly 4.
    """
    hist = noisy_histogram(data, budget, rng, noiseless)
    if not hist.survivor_set:
        return None
    k_star = None
    best = -math.inf
    for k in sorted(hist.survivor_set):
        if hist.noisy_bins[k] > best:
            k_star, best = k, hist.noisy_bins[k]
    ln2 = math.log(2.0)
    return RateBounds(math.ldexp(ln2, -(k_star + 1)), math.ldexp(ln2, -(k_star - 1)))


def learn_without_bounds(data: Dataset, alpha: float, beta: float,
                         budget: PrivacyBudget, rng: RngStream,
                         noiseless: bool = False) -> Estimate:
    """End-to-end learner with no prior bounds: find bounds at (eps/2, delta),
    then run the adaptive learner at (eps/2, 0) inside them."""
    if not budget.delta > 0:
        raise ValueError("learning without bounds needs delta > 0")
    bounds_budget, learn_budget = split_budget(budget, [0.5, 0.5],
                                               delta_fractions=[1.0, 0.0])
    rate_bounds = find_bounds(data, bounds_budget, rng, noiseless)
    if rate_bounds is None:
        raise NoBinSurvived("no histogram bin cleared the release threshold; "
                            "n too small for this (epsilon, delta)")
    config = LearnerConfig(alpha, beta, rate_bounds, noiseless)
    inner = best_of_both(data, config, learn_budget, rng)
    return Estimate(inner.lambda_hat, inner.route, inner.coarse_estimate, budget)
