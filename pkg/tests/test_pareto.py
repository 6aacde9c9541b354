import math

import numpy as np
import pytest

from oracles import oracle_learn_pareto, oracle_learn_pareto_known_scale, oracle_log_transform
from privexp.analysis import SampleBound, required_n
from privexp.dataset import Dataset, RateBounds
from privexp.distributions import ParetoModel, sample
from privexp.errors import (
    EmptyTail,
    NonpositiveMean,
    OutOfRegime,
    RangeEstimationFailed,
    ScaleViolation,
    SearchExhausted,
)
from privexp.learners import CoarseFailed, LearnerConfig
from privexp.pareto import (
    DEFAULT_TAIL_QUANTILE,
    learn_pareto,
    learn_pareto_known_scale,
    log_transform,
    recover_scale,
)
from privexp.privacy import PrivacyBudget, RngStream
from privexp.quantile import svt_quantile

WIDE = RateBounds(0.01, 100.0)


def config(alpha=0.2, beta=0.1, bounds=WIDE, noiseless=True):
    return LearnerConfig(alpha, beta, bounds, noiseless)


class TestLogTransform:
    def test_pivot_itself_maps_to_zero(self):
        out = log_transform(Dataset([2.0]), 2.0)
        assert list(out.values) == [0.0]

    def test_values_below_pivot_dropped(self):
        out = log_transform(Dataset([1.0, 3.0]), 2.0)
        assert list(out.values) == [math.log(1.5)]

    def test_order_preserved(self):
        out = log_transform(Dataset([5.0, 2.0, 3.0]), 2.0)
        assert list(out.values) == [math.log(2.5), 0.0, math.log(1.5)]

    def test_empty_tail(self):
        with pytest.raises(EmptyTail):
            log_transform(Dataset([1.0, 1.5]), 2.0)

    def test_pivot_validation(self):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                log_transform(Dataset([1.0]), bad)

    def test_matches_oracle(self):
        gen = np.random.default_rng(3)
        for _ in range(40):
            values = gen.uniform(0.5, 10.0, int(gen.integers(1, 50))).tolist()
            pivot = float(gen.uniform(0.5, 5.0))
            try:
                want = oracle_log_transform(values, pivot)
            except EmptyTail as exc:
                want = type(exc)
            try:
                got = log_transform(Dataset(values), pivot)
                assert list(got.values) == want
            except EmptyTail as exc:
                assert type(exc) is want


class TestRecoverScale:
    def test_unit_exponent(self):
        assert recover_scale(2.0, 0.5, 1.0) == 1.0

    def test_identity(self):
        for q, tau, a in [(1.28, DEFAULT_TAIL_QUANTILE, 2.0), (3.0, 0.2, 0.7)]:
            assert recover_scale(q, tau, a) == q * (1.0 - tau) ** (1.0 / a)

    def test_default_tau_value(self):
        assert DEFAULT_TAIL_QUANTILE == 1.0 / (4.0 * math.log(7.0))
        assert 0.1 <= DEFAULT_TAIL_QUANTILE <= 0.25


class TestKnownScale:
    def test_scale_violation(self):
        with pytest.raises(ScaleViolation):
            learn_pareto_known_scale(Dataset([0.5, 2.0]), 1.0, config(),
                                     PrivacyBudget(1.0), RngStream(0))

    def test_matches_oracle(self):
        gen = np.random.default_rng(5)
        for _ in range(60):
            values = (1.0 + gen.pareto(2.0, int(gen.integers(2, 60)))).tolist()
            try:
                want = oracle_learn_pareto_known_scale(values, 1.0, 0.01, 100.0, 0.1)
            except (RangeEstimationFailed, NonpositiveMean, ScaleViolation) as exc:
                want = type(exc)
            try:
                got = learn_pareto_known_scale(Dataset(values), 1.0, config(),
                                               PrivacyBudget(1.0), RngStream(0))
                assert got.shape_hat == want[0]
                assert got.scale_hat == 1.0
            except (RangeEstimationFailed, NonpositiveMean, ScaleViolation) as exc:
                assert type(exc) is want

    def test_statistical_success_rate(self):
        shape = 5.0
        n = 4 * required_n(SampleBound.MLE_LEARNING, alpha=0.2, beta=0.1,
                           epsilon=1.0, lam=shape, bounds=(0.01, 100.0)).n_required
        hits, trials = 0, 60
        cfg = LearnerConfig(0.2, 0.1, WIDE)
        for t in range(trials):
            rng = RngStream(77, t)
            data = sample(ParetoModel(1.0, shape), n, rng)
            try:
                est = learn_pareto_known_scale(data, 1.0, cfg, PrivacyBudget(1.0), rng)
            except (RangeEstimationFailed, NonpositiveMean):
                continue
            if shape * 0.8 <= est.shape_hat <= shape * 1.2:
                hits += 1
        assert hits >= 0.85 * trials


class TestLearnPareto:
    def test_tau_regime(self):
        data = Dataset([1.0, 2.0])
        for tau in (0.05, 0.3):
            with pytest.raises(OutOfRegime):
                learn_pareto(data, config(), PrivacyBudget(1.0), RngStream(0), tau)

    def test_budget_ledger_halves(self):
        data = stratified_pareto(2.0, 5000)
        budget = PrivacyBudget(1.0)
        learn_pareto(data, config(), budget, RngStream(0))
        pivot, shape = budget.children
        assert pivot.epsilon == shape.epsilon == 0.5
        assert budget.spent() == (1.0, 0.0)

    def test_noiseless_pipeline_sanity(self):
        # Pareto(1, 2): the pivot lands on grid point 1.28, the shape comes
        # back near 2, and the recovered scale sits at 1.28 * (1-tau)^(1/2)
        est = learn_pareto(stratified_pareto(2.0, 20_000), config(),
                           PrivacyBudget(1.0), RngStream(0))
        assert 1.6 <= est.shape_hat <= 2.4
        assert 1.0 <= est.scale_hat <= 1.3
        assert est.tail_quantile_tau == DEFAULT_TAIL_QUANTILE
        assert 0 < est.tail_count < 20_000

    def test_composition_is_exactly_the_manual_pipeline(self):
        gen = np.random.default_rng(9)
        values = (1.0 + gen.pareto(2.0, 500)).tolist()
        data = Dataset(values)
        tau = DEFAULT_TAIL_QUANTILE

        est = learn_pareto(data, config(), PrivacyBudget(1.0), RngStream(0), tau)

        from privexp.learners import best_of_both
        pivot_b, shape_b = PrivacyBudget(1.0).split([0.5, 0.5])
        qres = svt_quantile(data, WIDE, 1.0 - tau, pivot_b, RngStream(1),
                            noiseless=True)
        tail = log_transform(data, qres.quantile_value)
        inner = best_of_both(tail, config(), shape_b, RngStream(1))
        assert est.shape_hat == inner.lambda_hat
        assert est.scale_hat == recover_scale(qres.quantile_value, tau,
                                              inner.lambda_hat)
        assert est.tail_count == tail.n
        assert est.route == inner.route.value

    def test_matches_oracle(self):
        gen = np.random.default_rng(13)
        tau = DEFAULT_TAIL_QUANTILE
        for _ in range(60):
            shape = float(gen.uniform(0.5, 4.0))
            values = (1.0 + gen.pareto(shape, int(gen.integers(5, 120)))).tolist()
            try:
                want = oracle_learn_pareto(values, 0.01, 100.0, 0.2, 0.1, tau)
            except (RangeEstimationFailed, EmptyTail, SearchExhausted,
                    NonpositiveMean) as exc:
                want = type(exc)
            try:
                got = learn_pareto(Dataset(values), config(), PrivacyBudget(1.0),
                                   RngStream(0), tau)
                assert (got.shape_hat, got.scale_hat, got.route,
                        got.tail_count) == want
            except CoarseFailed as exc:
                assert want is SearchExhausted
                assert type(exc.__cause__) is want
            except (RangeEstimationFailed, EmptyTail, SearchExhausted,
                    NonpositiveMean) as exc:
                assert type(exc) is want


def stratified_pareto(shape: float, n: int) -> Dataset:
    model = ParetoModel(1.0, shape)
    return Dataset(model.quantile((np.arange(n) + 0.5) / n))
