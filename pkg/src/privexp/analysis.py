"""Closed-form sample-size calculators, the geometric packing family, and
the packing lower bound.

Each learner guarantee has a calculator mapping (accuracy, confidence,
budget, bounds, ...) to a sufficient sample size. Calculators whose source
states explicit constants evaluate them verbatim (`exact_constants=True`);
the pipeline-level ones hide constants behind O(.), so those compose the
stage calculators and carry unit constants on the remaining terms
(`exact_constants=False`, "up to constants"). The harness multiplies the
latter by a safety factor when sizing experiments.

All logarithms are natural unless a quantity is explicitly a binary search
depth or a dyadic grid size; ceilings are applied last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .dataset import RateBounds
from .errors import DegenerateBounds, IncompleteInputs, OutOfRegime, RegimeViolation
from .pareto import DEFAULT_TAIL_QUANTILE

__all__ = ["SampleBound", "SampleSizeReport", "PackingFamily", "build_packing",
           "lower_bound_n", "required_n", "quantile_order_terms"]

PACKING_RATIO_FACTOR = 8.0  # adjacent packing rates differ by 1 + 8*alpha


class SampleBound(Enum):
    """Which guarantee a sample-size calculation targets."""

    SVT_QUANTILE = "svt-quantile"
    CLIPPED_MLE = "clipped-mle"
    MLE_LEARNING = "mle-learning"
    QUANTILE_SEARCH = "quantile-search"
    QUANTILE_LEARNING = "quantile-learning"
    BEST_OF_BOTH = "best-of-both"
    BOUNDS_FINDER = "bounds-finder"
    LEARN_WITHOUT_BOUNDS = "learn-without-bounds"
    PARETO_LEARNING = "pareto-learning"
    PACKING_LOWER_BOUND = "packing-lower-bound"


@dataclass(frozen=True)
class SampleSizeReport:
    bound_id: SampleBound
    n_required: int
    inputs: dict
    exact_constants: bool


@dataclass(frozen=True)
class PackingFamily:
    """Geometric family of rates, adjacent pairs separated by TV >= alpha."""

    rates: tuple
    alpha: float
    bounds: RateBounds


def build_packing(bounds: RateBounds, alpha: float) -> PackingFamily:
    """Rates lower * (1 + 8*alpha)^i for i = 0 .. floor(log(ratio)/log(1+8*alpha))."""
    if not (0.0 < alpha < 0.5):
        raise OutOfRegime(f"packing needs alpha in (0, 1/2), got {alpha!r}")
    r = 1.0 + PACKING_RATIO_FACTOR * alpha
    count = math.floor(math.log(bounds.ratio) / math.log(r))
    rates = tuple(bounds.lower * r ** i for i in range(count + 1))
    return PackingFamily(rates, alpha, bounds)


def _as_bounds(bounds) -> RateBounds:
    if isinstance(bounds, RateBounds):
        return bounds
    lo, hi = bounds
    if not (isinstance(lo, (int, float)) and isinstance(hi, (int, float))
            and math.isfinite(lo) and math.isfinite(hi) and 0 < lo < hi):
        raise DegenerateBounds(f"need 0 < lower < upper, got ({lo!r}, {hi!r})")
    return RateBounds(float(lo), float(hi))


def lower_bound_n(alpha: float, beta: float, epsilon: float, bounds) -> int:
    """Packing lower bound: any private learner this accurate needs at least
    ceil((1/(6*eps*alpha)) * ln((ln(ratio)/(16*alpha)) / beta)) samples."""
    if not (0.0 < alpha < 0.5) or not (0.0 < beta < 0.5):
        raise OutOfRegime(f"lower bound needs alpha, beta in (0, 1/2), "
                          f"got ({alpha!r}, {beta!r})")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    bounds = _as_bounds(bounds)
    inner = (math.log(bounds.ratio) / (16.0 * alpha)) / beta
    value = math.log(inner) / (6.0 * epsilon * alpha)
    return max(1, math.ceil(value))


# --- raw (un-ceiled) term values per guarantee -----------------------------

def _svt_quantile_value(epsilon, beta, bounds) -> float:
    log_ratio = math.log(bounds.ratio)
    return max((5.0 / epsilon) * math.log(4.0 * log_ratio / beta),
               200.0 * math.log(4.0 / beta))


def _clipped_mle_value(epsilon, beta, alpha, lam, clip_r) -> float:
    tail_mass = math.exp(-lam * clip_r)
    if alpha / 2.0 <= tail_mass:
        raise RegimeViolation(
            f"clipping bias e^(-lam*R) = {tail_mass:.3g} is not below "
            f"alpha/2 = {alpha / 2.0:.3g}; increase R or relax alpha")
    privacy = clip_r * lam * math.log(2.0 / beta) / (epsilon * (alpha / 2.0 - tail_mass))
    statistical = (12.0 / alpha ** 2) * math.log(4.0 / beta)
    return max(privacy, statistical)


def _mle_learning_value(epsilon, beta, alpha, lam, bounds) -> float:
    """Fixed point in n: the clipping level grows like ln(n), and n must
    cover both pipeline stages (each at epsilon/2, beta/2) plus the
    composed pipeline terms."""
    stage_eps, stage_beta = epsilon / 2.0, beta / 2.0
    svt_need = _svt_quantile_value(stage_eps, stage_beta, bounds)
    ln10 = math.log(10.0)
    n = 16.0
    for _ in range(200):
        log_n = math.log(n)
        c = (6.0 / ln10) * (1.0 + math.log(1.0 / stage_beta) / log_n)
        clip_r = c * (ln10 / lam) * log_n
        try:
            mle_need = _clipped_mle_value(stage_eps, stage_beta, alpha, lam, clip_r)
        except RegimeViolation:
            n *= 2.0  # clipping level still too low at this n; grow and retry
            continue
        composed = max(
            math.log(1.0 / alpha) * math.log(1.0 / beta) * log_n / (lam * epsilon * alpha),
            math.log(1.0 / beta) / alpha ** 2,
            math.log(math.log(bounds.ratio) / beta) / epsilon,
        )
        target = max(svt_need, mle_need, composed)
        if abs(target - n) <= 0.5:
            return target
        n = target
    return n


def _search_depth(alpha, bounds) -> int:
    return math.ceil(math.log2(math.log(bounds.ratio) / alpha))


def _quantile_search_value(epsilon, beta, alpha, bounds) -> float:
    depth = _search_depth(alpha, bounds)
    log_term = math.log(2.0 * depth / beta)
    return max((2.0 * math.e * depth / (epsilon * alpha)) * log_term,
               (2.0 / alpha ** 2) * log_term)


def quantile_order_terms(epsilon, beta, alpha, bounds) -> tuple[float, float]:
    """(privacy term, statistical term) of the order-form quantile-route
    bound, with unit constants. The privacy term is the one the packing
    lower bound matches up to log factors."""
    bounds = _as_bounds(bounds)
    level = math.log(bounds.ratio) / alpha
    log_term = math.log(level / beta)
    return (math.log(level) * log_term / (epsilon * alpha),
            log_term / alpha ** 2)


def _quantile_learning_value(epsilon, beta, alpha, bounds) -> float:
    return max(quantile_order_terms(epsilon, beta, alpha, bounds))


# Branch reachability for the adaptive learner: the coarse stage returns a
# factor-3/2 estimate whp, so the MLE branch (coarse >= 2) is reachable only
# when 1.5*lam >= 2 and the quantile branch only when lam/2 < 2.
MLE_BRANCH_MIN_RATE = 4.0 / 3.0
QUANTILE_BRANCH_MAX_RATE = 4.0


def _best_of_both_value(epsilon, beta, alpha, lam, bounds) -> float:
    coarse = _quantile_search_value(epsilon / 3.0, beta / 3.0, 0.5, bounds)
    need = coarse
    main_eps, main_beta = 2.0 * epsilon / 3.0, 2.0 * beta / 3.0
    if lam >= MLE_BRANCH_MIN_RATE:
        need = max(need, _mle_learning_value(main_eps, main_beta, alpha, lam, bounds))
    if lam < QUANTILE_BRANCH_MAX_RATE:
        need = max(need, _quantile_search_value(main_eps, main_beta, alpha, bounds))
    return need


def _bounds_finder_value(epsilon, delta, beta) -> float:
    return max((800.0 / epsilon) * math.log(2.0 / (delta * beta)),
               5000.0 * math.log(2.0 / beta))


def _learn_without_bounds_value(epsilon, delta, beta, alpha, lam) -> float:
    # The discovered interval has ratio 4 and contains lam whp; (lam/2, 2*lam)
    # is the representative interval for sizing the second stage.
    found = RateBounds(lam / 2.0, 2.0 * lam)
    return max(_bounds_finder_value(epsilon / 2.0, delta, beta / 2.0),
               _best_of_both_value(epsilon / 2.0, beta / 2.0, alpha, lam, found))


def _pareto_value(epsilon, beta, alpha, shape, bounds, tau) -> float:
    # Pivot stage at eps/2, shape stage at eps/2 on ~(1-tau)*n exceedances.
    pivot = _svt_quantile_value(epsilon / 2.0, beta / 2.0, bounds)
    tail = _best_of_both_value(epsilon / 2.0, beta / 2.0, alpha, shape, bounds)
    return max(pivot, tail / (1.0 - tau))


def required_n(bound_id: SampleBound, *, alpha=None, beta=None, epsilon=None,
               delta=None, lam=None, bounds=None, clip_r=None,
               tau=DEFAULT_TAIL_QUANTILE) -> SampleSizeReport:
    """Evaluate the sample-size bound for one guarantee.

    Raises IncompleteInputs when the selected bound needs an input that was
    not provided (e.g. the clipped-MLE bound needs both lam and clip_r).
    """
    def need(**kwargs):
        missing = [k for k, v in kwargs.items() if v is None]
        if missing:
            raise IncompleteInputs(f"{bound_id.value} needs {', '.join(missing)}")

    if bounds is not None:
        bounds = _as_bounds(bounds)

    exact = True
    if bound_id is SampleBound.SVT_QUANTILE:
        need(epsilon=epsilon, beta=beta, bounds=bounds)
        value = _svt_quantile_value(epsilon, beta, bounds)
    elif bound_id is SampleBound.CLIPPED_MLE:
        need(epsilon=epsilon, beta=beta, alpha=alpha, lam=lam, clip_r=clip_r)
        value = _clipped_mle_value(epsilon, beta, alpha, lam, clip_r)
    elif bound_id is SampleBound.MLE_LEARNING:
        need(epsilon=epsilon, beta=beta, alpha=alpha, lam=lam, bounds=bounds)
        value = _mle_learning_value(epsilon, beta, alpha, lam, bounds)
        exact = False
    elif bound_id is SampleBound.QUANTILE_SEARCH:
        need(epsilon=epsilon, beta=beta, alpha=alpha, bounds=bounds)
        value = _quantile_search_value(epsilon, beta, alpha, bounds)
    elif bound_id is SampleBound.QUANTILE_LEARNING:
        need(epsilon=epsilon, beta=beta, alpha=alpha, bounds=bounds)
        value = _quantile_learning_value(epsilon, beta, alpha, bounds)
        exact = False
    elif bound_id is SampleBound.BEST_OF_BOTH:
        need(epsilon=epsilon, beta=beta, alpha=alpha, lam=lam, bounds=bounds)
        value = _best_of_both_value(epsilon, beta, alpha, lam, bounds)
        exact = False
    elif bound_id is SampleBound.BOUNDS_FINDER:
        need(epsilon=epsilon, delta=delta, beta=beta)
        value = _bounds_finder_value(epsilon, delta, beta)
    elif bound_id is SampleBound.LEARN_WITHOUT_BOUNDS:
        need(epsilon=epsilon, delta=delta, beta=beta, alpha=alpha, lam=lam)
        value = _learn_without_bounds_value(epsilon, delta, beta, alpha, lam)
        exact = False
    elif bound_id is SampleBound.PARETO_LEARNING:
        need(epsilon=epsilon, beta=beta, alpha=alpha, lam=lam, bounds=bounds)
        value = _pareto_value(epsilon, beta, alpha, lam, bounds, tau)
        exact = False
    elif bound_id is SampleBound.PACKING_LOWER_BOUND:
        need(epsilon=epsilon, beta=beta, alpha=alpha, bounds=bounds)
        return SampleSizeReport(
            bound_id, lower_bound_n(alpha, beta, epsilon, bounds),
            {"alpha": alpha, "beta": beta, "epsilon": epsilon,
             "bounds": bounds}, True)
    else:  # pragma: no cover
        raise ValueError(f"unknown bound id {bound_id!r}")

    inputs = {k: v for k, v in [("alpha", alpha), ("beta", beta),
                                ("epsilon", epsilon), ("delta", delta),
                                ("lam", lam), ("bounds", bounds),
                                ("clip_r", clip_r)] if v is not None}
    if bound_id is SampleBound.PARETO_LEARNING:
        inputs["tau"] = tau
    return SampleSizeReport(bound_id, max(1, math.ceil(value)), inputs, exact)
