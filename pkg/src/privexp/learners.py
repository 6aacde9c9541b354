"""The exponential-rate learners.

Three pure-DP strategies, all returning a multiplicative (1 +- alpha)
estimate of the rate when given enough samples:

- private_mle / mle_learning: clip to a privately estimated range, release
  the noisy clipped mean, invert. Strong when the rate is large (samples
  are small, so the range and hence the noise scale is small).
- quantile_learning: noisy binary search for the (1 - 1/e)-quantile, whose
  reciprocal is exactly the rate. Strong when the rate is small.
- best_of_both: spends a third of the budget on a coarse estimate to pick
  between the two routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .dataset import Dataset, RateBounds
from .errors import (
    CoarseFailed,
    NonpositiveMean,
    RangeEstimationFailed,
    SearchExhausted,
)
from .privacy import NoiseScale, PrivacyBudget, RngStream, noisy_fraction_below, sample_laplace
from .quantile import clipping_range, svt_quantile

__all__ = ["Route", "LearnerConfig", "Estimate", "private_mle",
           "mle_learning", "quantile_learning", "best_of_both"]

# Target CDF level for quantile_learning: F(1/rate) = 1 - 1/e exactly.
_QUANTILE_LEVEL = 1.0 - 1.0 / math.e

# Quantile level used by the MLE pipeline's range-estimation stage.
MLE_RANGE_THETA = 0.1

# Coarse stage of best_of_both runs at this accuracy; a factor-3/2 estimate
# is enough to separate the two branch regions.
COARSE_ALPHA = 0.5
MLE_BRANCH_CUTOFF = 2.0


class Route(str, Enum):
    MLE = "mle"
    QUANTILE = "quantile"


@dataclass(frozen=True)
class LearnerConfig:
    """Shared learner knobs: target error, failure probability, rate bounds."""

    alpha: float
    beta: float
    bounds: RateBounds
    noiseless: bool = False

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not (0.0 < self.beta < 1.0):
            raise ValueError(f"beta must lie in (0, 1), got {self.beta!r}")


@dataclass(frozen=True)
class Estimate:
    """Learner output: the rate estimate, the route that produced it, the
    coarse first-stage estimate when one was made, and the budget ledger."""

    lambda_hat: float
    route: Route
    coarse_estimate: Optional[float]
    budget_spent: PrivacyBudget


def private_mle(data: Dataset, clip_r: float, budget: PrivacyBudget,
                rng: RngStream, noiseless: bool = False) -> float:
    """1 / (noisy clipped mean): clip at clip_r, add Laplace(clip_r/(eps*n)).

    Raises NonpositiveMean when the noise swamps the mean; clamping instead
    would silently break the multiplicative guarantee.
    """
    if not (isinstance(clip_r, (int, float)) and math.isfinite(clip_r) and clip_r > 0):
        raise ValueError(f"clipping level must be positive and finite, got {clip_r!r}")
    budget.consume()
    n = data.n
    # fsum is exactly rounded, so the released mean does not depend on
    # summation order; the oracle tests rely on that.
    clipped_mean = math.fsum(data.values.clip(max=clip_r)) / n
    scale = NoiseScale(clip_r / (budget.epsilon * n))
    noisy_mean = clipped_mean + sample_laplace(scale, rng, noiseless)
    if noisy_mean <= 0:
        raise NonpositiveMean(f"noisy clipped mean {noisy_mean} <= 0; "
                              f"n too small for this budget")
    return 1.0 / noisy_mean


def mle_learning(data: Dataset, config: LearnerConfig, budget: PrivacyBudget,
                 rng: RngStream) -> Estimate:
    """Range estimation at eps/2, then private MLE at eps/2."""
    range_budget, mle_budget = budget.split([0.5, 0.5])
    qres = svt_quantile(data, config.bounds, MLE_RANGE_THETA, range_budget,
                        rng, config.noiseless)
    if qres is None:
        raise RangeEstimationFailed("quantile scan exhausted its grid")
    clip_r = clipping_range(qres, data.n, MLE_RANGE_THETA, config.beta)
    lam = private_mle(data, clip_r, mle_budget, rng, config.noiseless)
    return Estimate(lam, Route.MLE, None, budget)


def quantile_learning(data: Dataset, config: LearnerConfig, budget: PrivacyBudget,
                      rng: RngStream) -> Estimate:
    """Noisy binary search for the (1 - 1/e)-quantile position.

    Candidate positions run geometrically from 1/upper to past 1/lower with
    ratio 1/(1 - alpha/2), so adjacent positions correspond to rates one
    accuracy step apart. Each probe compares a noisy CDF value against the
    band (1 - 1/e) +- alpha/(2e); landing inside the band means the probed
    position is within (1 +- alpha) of 1/rate, and its reciprocal is
    returned. The iteration cap also fixes the per-probe noise scale, so the
    whole search costs exactly the given budget.
    """
    budget.consume()
    alpha = config.alpha
    bounds = config.bounds
    n = data.n

    step = 1.0 / (1.0 - alpha / 2.0)
    n_steps = math.ceil(math.log(bounds.ratio) / math.log(step))
    cap = math.ceil(math.log2(n_steps + 1))
    scale = NoiseScale(cap / (budget.epsilon * n))
    band_lo = _QUANTILE_LEVEL - alpha / (2.0 * math.e)
    band_hi = _QUANTILE_LEVEL + alpha / (2.0 * math.e)

    low, high = 0, n_steps
    for _ in range(cap):
        mid = (low + high) // 2
        position = (1.0 / bounds.upper) * step ** mid
        value = noisy_fraction_below(data, position, scale, rng, config.noiseless)
        if value > band_hi:
            high = mid
        elif value < band_lo:
            low = mid
        else:
            return Estimate(1.0 / position, Route.QUANTILE, None, budget)
    raise SearchExhausted(f"no position accepted within {cap} probes; "
                          f"rate outside bounds or n too small")


def best_of_both(data: Dataset, config: LearnerConfig, budget: PrivacyBudget,
                 rng: RngStream) -> Estimate:
    """Coarse estimate at eps/3 picks the route; the winner runs at 2*eps/3."""
    coarse_budget, main_budget = budget.split([1.0 / 3.0, 2.0 / 3.0])
    coarse_config = LearnerConfig(COARSE_ALPHA, config.beta, config.bounds,
                                  config.noiseless)
    try:
        coarse = quantile_learning(data, coarse_config, coarse_budget, rng)
    except SearchExhausted as exc:
        raise CoarseFailed("coarse rate estimate did not converge") from exc
    lambda_0 = coarse.lambda_hat
    if lambda_0 >= MLE_BRANCH_CUTOFF:
        inner = mle_learning(data, config, main_budget, rng)
    else:
        inner = quantile_learning(data, config, main_budget, rng)
    return Estimate(inner.lambda_hat, inner.route, lambda_0, budget)
