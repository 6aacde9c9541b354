"""Monte Carlo validation harness plus the file formats used by the CLI.

An experiment draws fresh synthetic data per trial, runs one learner under a
fresh privacy budget, and scores the result against the known ground truth.
Trial i always uses the random stream with stream_id=i derived from the
experiment's base seed, and records are aggregated in trial order, so the
output is byte-identical across reruns and worker counts.
"""

from __future__ import annotations

import json
import math
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

from .analysis import SampleBound, required_n
from .bounds import find_bounds
from .dataset import Dataset, RateBounds
from .distributions import ExpModel, ParetoModel, sample
from .errors import IncompleteInputs, InputError, PrivexpError
from .learners import (LearnerConfig, best_of_both, mle_learning, private_mle,
                       quantile_learning)
from .pareto import (DEFAULT_TAIL_QUANTILE, learn_pareto,
                     learn_pareto_known_scale)
from .privacy import PrivacyBudget, RngStream

__all__ = ["Learner", "ExperimentSpec", "TrialRecord", "ExperimentSummary",
           "run_experiment", "run_sweep", "sweep_csv", "read_values",
           "write_sample", "estimate_from_file", "SWEEP_CSV_HEADER"]

SWEEP_CSV_HEADER = "n,success_rate,trials,seed"

OUTCOME_SUCCESS = "success"
OUTCOME_MISSED = "missed_tolerance"
OUTCOME_FAILURE = "failure"


class Learner(str, Enum):
    MLE = "mle"
    QUANTILE = "quantile"
    BEST_OF_BOTH = "best-of-both"
    BOUNDS_FINDER = "bounds-finder"
    PARETO = "pareto"
    PARETO_KNOWN_SCALE = "pareto-known-scale"


_EXP_LEARNERS = frozenset({Learner.MLE, Learner.QUANTILE, Learner.BEST_OF_BOTH})
_PARETO_LEARNERS = frozenset({Learner.PARETO, Learner.PARETO_KNOWN_SCALE})

_AUTOSIZE_BOUND = {
    Learner.MLE: SampleBound.MLE_LEARNING,
    Learner.QUANTILE: SampleBound.QUANTILE_LEARNING,
    Learner.BEST_OF_BOTH: SampleBound.BEST_OF_BOTH,
    Learner.BOUNDS_FINDER: SampleBound.BOUNDS_FINDER,
    Learner.PARETO: SampleBound.PARETO_LEARNING,
    Learner.PARETO_KNOWN_SCALE: SampleBound.MLE_LEARNING,
}


@dataclass(frozen=True)
class ExperimentSpec:
    learner: Learner
    alpha: float
    beta: float
    epsilon: float
    delta: float = 0.0
    bounds: RateBounds | None = None
    true_lambda: float | None = None
    true_xm: float | None = None
    true_shape: float | None = None
    n: int | None = None
    trials: int = 100
    base_seed: int = 0
    noiseless: bool = False
    safety_factor: float = 4.0
    tau: float = DEFAULT_TAIL_QUANTILE


@dataclass(frozen=True)
class TrialRecord:
    trial_id: int
    outcome: str
    estimate: float | None
    route: str | None
    failure_name: str | None
    detail: dict
    wall_time_us: int  # informational only, never serialized

    def to_dict(self) -> dict:
        return {"trial_id": self.trial_id, "outcome": self.outcome,
                "estimate": self.estimate, "route": self.route,
                "failure_name": self.failure_name, "detail": self.detail}


@dataclass(frozen=True)
class ExperimentSummary:
    spec: ExperimentSpec
    n_used: int
    success_rate: float
    failure_breakdown: dict
    mean_estimate: float | None
    median_estimate: float | None
    records: tuple

    def to_dict(self) -> dict:
        spec = self.spec
        bounds = None if spec.bounds is None else [spec.bounds.lower,
                                                   spec.bounds.upper]
        return {
            "learner": spec.learner.value,
            "alpha": spec.alpha, "beta": spec.beta,
            "epsilon": spec.epsilon, "delta": spec.delta,
            "bounds": bounds, "noiseless": spec.noiseless,
            "true_lambda": spec.true_lambda, "true_xm": spec.true_xm,
            "true_shape": spec.true_shape, "tau": spec.tau,
            "n": self.n_used, "trials": spec.trials,
            "base_seed": spec.base_seed, "safety_factor": spec.safety_factor,
            "success_rate": self.success_rate,
            "failure_breakdown": self.failure_breakdown,
            "mean_estimate": self.mean_estimate,
            "median_estimate": self.median_estimate,
            "records": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _check_spec(spec: ExperimentSpec) -> None:
    if spec.trials < 1:
        raise ValueError(f"trials must be >= 1, got {spec.trials!r}")
    if spec.n is not None and spec.n < 1:
        raise ValueError(f"n must be >= 1, got {spec.n!r}")
    if spec.learner in _EXP_LEARNERS:
        if spec.true_lambda is None:
            raise IncompleteInputs(f"{spec.learner.value} experiment needs true_lambda")
        if spec.bounds is None:
            raise IncompleteInputs(f"{spec.learner.value} experiment needs bounds")
    elif spec.learner is Learner.BOUNDS_FINDER:
        if spec.true_lambda is None:
            raise IncompleteInputs("bounds-finder experiment needs true_lambda")
        if spec.delta <= 0.0:
            raise IncompleteInputs("bounds-finder experiment needs delta > 0")
    else:
        if spec.true_xm is None or spec.true_shape is None:
            raise IncompleteInputs(f"{spec.learner.value} experiment needs "
                                   "true_xm and true_shape")
        if spec.bounds is None:
            raise IncompleteInputs(f"{spec.learner.value} experiment needs bounds")


def resolve_n(spec: ExperimentSpec) -> int:
    """Explicit n wins; otherwise size the experiment from the learner's
    sample-size bound times the safety factor."""
    if spec.n is not None:
        return spec.n
    bound_id = _AUTOSIZE_BOUND[spec.learner]
    lam = spec.true_shape if spec.learner in _PARETO_LEARNERS else spec.true_lambda
    report = required_n(bound_id, alpha=spec.alpha, beta=spec.beta,
                        epsilon=spec.epsilon,
                        delta=spec.delta if spec.delta > 0 else None,
                        lam=lam, bounds=spec.bounds, tau=spec.tau)
    return max(1, math.ceil(spec.safety_factor * report.n_required))


def _config(spec: ExperimentSpec) -> LearnerConfig:
    return LearnerConfig(spec.alpha, spec.beta, spec.bounds, spec.noiseless)


def _in_band(value: float, center: float, alpha: float) -> bool:
    return (1.0 - alpha) * center <= value <= (1.0 + alpha) * center


def _scale_factor_limit(spec: ExperimentSpec) -> float:
    # Largest tolerated multiplicative overshoot of the recovered scale.
    return math.exp(2.0 * math.log(7.0) * (spec.alpha / spec.true_shape) * spec.tau)


def _run_trial(spec: ExperimentSpec, n: int, trial_id: int) -> TrialRecord:
    rng = RngStream(spec.base_seed, trial_id)
    start = time.perf_counter()
    if spec.learner in _PARETO_LEARNERS:
        model = ParetoModel(spec.true_xm, spec.true_shape)
    else:
        model = ExpModel(spec.true_lambda)
    data = sample(model, n, rng)
    delta = spec.delta if spec.learner is Learner.BOUNDS_FINDER else 0.0
    budget = PrivacyBudget(spec.epsilon, delta)

    estimate = route = failure = None
    detail: dict = {}
    try:
        if spec.learner is Learner.MLE:
            est = mle_learning(data, _config(spec), budget, rng)
            estimate, route = est.lambda_hat, est.route.value
        elif spec.learner is Learner.QUANTILE:
            est = quantile_learning(data, _config(spec), budget, rng)
            estimate, route = est.lambda_hat, est.route.value
        elif spec.learner is Learner.BEST_OF_BOTH:
            est = best_of_both(data, _config(spec), budget, rng)
            estimate, route = est.lambda_hat, est.route.value
            detail = {"coarse_estimate": est.coarse_estimate}
        elif spec.learner is Learner.BOUNDS_FINDER:
            found = find_bounds(data, budget, rng, noiseless=spec.noiseless)
            if found is None:
                failure = "NoBinSurvived"
            else:
                route = "bounds-finder"
                detail = {"lower": found.lower, "upper": found.upper}
        elif spec.learner is Learner.PARETO:
            est = learn_pareto(data, _config(spec), budget, rng, tau=spec.tau)
            estimate, route = est.shape_hat, est.route
            detail = {"scale_hat": est.scale_hat, "tail_count": est.tail_count}
        else:
            est = learn_pareto_known_scale(data, spec.true_xm, _config(spec),
                                           budget, rng)
            estimate, route = est.shape_hat, est.route
    except PrivexpError as exc:
        failure = type(exc).__name__

    wall_us = int((time.perf_counter() - start) * 1e6)
    if failure is not None:
        outcome = OUTCOME_FAILURE
    elif _trial_success(spec, estimate, detail):
        outcome = OUTCOME_SUCCESS
    else:
        outcome = OUTCOME_MISSED
    return TrialRecord(trial_id, outcome, estimate, route, failure, detail,
                       wall_us)


def _trial_success(spec: ExperimentSpec, estimate, detail) -> bool:
    if spec.learner is Learner.BOUNDS_FINDER:
        return bool(detail) and detail["lower"] < spec.true_lambda < detail["upper"]
    if spec.learner in _EXP_LEARNERS:
        return _in_band(estimate, spec.true_lambda, spec.alpha)
    shape_ok = _in_band(estimate, spec.true_shape, spec.alpha)
    if spec.learner is Learner.PARETO_KNOWN_SCALE:
        return shape_ok
    scale_ok = detail["scale_hat"] / spec.true_xm <= _scale_factor_limit(spec)
    return shape_ok and scale_ok


def run_experiment(spec: ExperimentSpec, workers: int | None = None) -> ExperimentSummary:
    _check_spec(spec)
    n = resolve_n(spec)
    ids = range(spec.trials)
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _run_trial(spec, n, i), ids))
    else:
        results = [_run_trial(spec, n, i) for i in ids]
    records = tuple(sorted(results, key=lambda r: r.trial_id))

    successes = sum(1 for r in records if r.outcome == OUTCOME_SUCCESS)
    breakdown: dict = {}
    for r in records:
        if r.failure_name is not None:
            breakdown[r.failure_name] = breakdown.get(r.failure_name, 0) + 1
    breakdown = dict(sorted(breakdown.items()))
    produced = [r.estimate for r in records if r.estimate is not None]
    mean_est = math.fsum(produced) / len(produced) if produced else None
    median_est = float(statistics.median(produced)) if produced else None
    return ExperimentSummary(spec, n, successes / spec.trials, breakdown,
                             mean_est, median_est, records)


def run_sweep(spec: ExperimentSpec, n_values, workers: int | None = None) -> list:
    """One experiment per sample size; rows ordered as given."""
    rows = []
    for n in n_values:
        summary = run_experiment(replace(spec, n=int(n)), workers=workers)
        rows.append({"n": int(n), "success_rate": summary.success_rate,
                     "trials": spec.trials, "seed": spec.base_seed})
    return rows


def sweep_csv(rows) -> str:
    lines = [SWEEP_CSV_HEADER]
    for row in rows:
        lines.append(f"{row['n']},{row['success_rate']!r},"
                     f"{row['trials']},{row['seed']}")
    return "\n".join(lines) + "\n"


# --- plain-text sample files ------------------------------------------------

def write_sample(path, model, n: int, seed: int) -> None:
    """One value per line, full round-trip precision, seed recorded in a
    comment header."""
    rng = RngStream(seed)
    data = sample(model, n, rng)
    lines = [f"# seed={seed}"]
    lines.extend(repr(float(v)) for v in data.values)
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise InputError(str(exc)) from None


def read_values(path, require_positive: bool = False) -> list:
    """Parse one float per line; blank lines and '#' comments are skipped.
    Bad lines raise InputError carrying the 1-based line number."""
    values = []
    try:
        fh = open(path)
    except OSError as exc:
        raise InputError(str(exc)) from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            try:
                value = float(text)
            except ValueError:
                raise InputError(f"could not parse {text!r} as a number",
                                 line=lineno) from None
            if not math.isfinite(value):
                raise InputError(f"non-finite value {text!r}", line=lineno)
            if value < 0.0:
                raise InputError(f"negative value {text!r}", line=lineno)
            if require_positive and value == 0.0:
                raise InputError("value must be strictly positive",
                                 line=lineno)
            values.append(value)
    return values


def estimate_from_file(path, learner: Learner, *, alpha=None, beta=None,
                       epsilon=None, delta=0.0, bounds=None, seed=0,
                       noiseless=False, clip_r=None, known_scale=None,
                       tau=DEFAULT_TAIL_QUANTILE) -> dict:
    """Run one learner on a data file and return the JSON-ready result.

    clip_r bypasses range estimation and runs the clipped-mean estimator
    directly at that clipping level (debugging aid; spends the whole budget
    on the one release).
    """
    require_positive = learner in _PARETO_LEARNERS
    data = Dataset(read_values(path, require_positive=require_positive))
    rng = RngStream(seed)
    budget = PrivacyBudget(epsilon, delta)

    extra: dict = {}
    if clip_r is not None:
        estimate = private_mle(data, clip_r, budget, rng, noiseless=noiseless)
        route = "mle"
    elif learner is Learner.BOUNDS_FINDER:
        found = find_bounds(data, budget, rng, noiseless=noiseless)
        estimate, route = None, "bounds-finder"
        extra["bounds_found"] = (None if found is None
                                 else [found.lower, found.upper])
    else:
        config = LearnerConfig(alpha, beta, bounds, noiseless)
        if learner is Learner.MLE:
            est = mle_learning(data, config, budget, rng)
            estimate, route = est.lambda_hat, est.route.value
        elif learner is Learner.QUANTILE:
            est = quantile_learning(data, config, budget, rng)
            estimate, route = est.lambda_hat, est.route.value
        elif learner is Learner.BEST_OF_BOTH:
            est = best_of_both(data, config, budget, rng)
            estimate, route = est.lambda_hat, est.route.value
        elif learner is Learner.PARETO:
            est = learn_pareto(data, config, budget, rng, tau=tau)
            estimate, route = est.shape_hat, est.route
            extra["scale_hat"] = est.scale_hat
        elif learner is Learner.PARETO_KNOWN_SCALE:
            if known_scale is None:
                raise IncompleteInputs("pareto-known-scale needs the known "
                                       "scale value")
            est = learn_pareto_known_scale(data, known_scale, config, budget, rng)
            estimate, route = est.shape_hat, est.route
        else:  # pragma: no cover
            raise ValueError(f"unknown learner {learner!r}")

    spent_eps, spent_delta = budget.spent()
    payload = {"estimate": estimate, "route": route,
               "budget_spent": {"epsilon": spent_eps, "delta": spent_delta},
               "n": data.n}
    payload.update(extra)
    return payload
