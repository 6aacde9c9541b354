import math

import numpy as np
import pytest

from oracles import (
    oracle_dyadic_bins,
    oracle_find_bounds,
    oracle_learn_without_bounds,
)
from privexp.bounds import dyadic_histogram, find_bounds, learn_without_bounds, noisy_histogram
from privexp.dataset import Dataset, RateBounds
from privexp.distributions import ExpModel
from privexp.errors import (
    NoBinSurvived,
    NonpositiveMean,
    RangeEstimationFailed,
    SearchExhausted,
)
from privexp.learners import CoarseFailed
from privexp.privacy import PrivacyBudget, RngStream

LN2 = math.log(2.0)


def stratified(rate: float, n: int) -> Dataset:
    return Dataset(ExpModel(rate).quantile((np.arange(n) + 0.5) / n))


class TestDyadicHistogram:
    def test_single_bin(self):
        assert dyadic_histogram(Dataset([3.0, 3.5, 2.5, 3.9])) == {1: 1.0}

    def test_zero_goes_to_lowest_bin(self):
        assert dyadic_histogram(Dataset([0.0])) == {-1074: 1.0}

    def test_bin_edges(self):
        # [2^k, 2^(k+1)): the left edge belongs to the bin, the right does not
        hist = dyadic_histogram(Dataset([1.0, 1.999, 2.0, 0.5]))
        assert hist == {0: 0.5, 1: 0.25, -1: 0.25}

    def test_matches_oracle(self):
        gen = np.random.default_rng(7)
        for _ in range(40):
            values = gen.exponential(1.0, int(gen.integers(1, 80))).tolist()
            assert dyadic_histogram(Dataset(values)) == oracle_dyadic_bins(values)

    def test_fractions_sum_to_one(self):
        gen = np.random.default_rng(8)
        values = gen.uniform(0.0, 100.0, 500).tolist()
        assert math.isclose(math.fsum(dyadic_histogram(Dataset(values)).values()), 1.0)


class TestNoisyHistogram:
    def test_needs_positive_delta(self):
        with pytest.raises(ValueError):
            noisy_histogram(Dataset([1.0]), PrivacyBudget(1.0, 0.0), RngStream(0))

    def test_threshold_formula(self):
        hist = noisy_histogram(Dataset([1.0] * 4), PrivacyBudget(10.0, 0.5),
                               RngStream(0), noiseless=True)
        assert hist.threshold == (2.0 / 40.0) * math.log(4.0) + 0.25

    def test_noiseless_releases_raw_fractions(self):
        data = Dataset([1.0, 2.0, 2.5, 8.0])
        hist = noisy_histogram(data, PrivacyBudget(1.0, 0.1), RngStream(0),
                               noiseless=True)
        assert hist.noisy_bins == hist.bins == {0: 0.25, 1: 0.5, 3: 0.25}

    def test_empty_bins_not_released(self):
        hist = noisy_histogram(Dataset([1.0] * 10), PrivacyBudget(1.0, 0.1),
                               RngStream(0))
        assert set(hist.noisy_bins) == {0}

    def test_budget_consumed(self):
        budget = PrivacyBudget(1.0, 0.1)
        noisy_histogram(Dataset([1.0]), budget, RngStream(0), noiseless=True)
        assert budget.state == "consumed"
        assert budget.spent() == (1.0, 0.1)

    def test_survivors_monotone_in_delta(self):
        data = Dataset(np.random.default_rng(3).exponential(1.0, 200).tolist())
        loose = noisy_histogram(data, PrivacyBudget(1.0, 0.5), RngStream(0),
                                noiseless=True)
        tight = noisy_histogram(data, PrivacyBudget(1.0, 1e-6), RngStream(0),
                                noiseless=True)
        assert tight.survivor_set <= loose.survivor_set


class TestFindBounds:
    def test_frozen_example(self):
        bounds = find_bounds(Dataset([3.0, 3.5, 2.5, 3.9]), PrivacyBudget(10.0, 0.5),
                             RngStream(0), noiseless=True)
        assert bounds.lower == math.ldexp(LN2, -2)
        assert bounds.upper == math.ldexp(LN2, 0)
        assert bounds.ratio == 4.0

    def test_none_when_threshold_unreachable(self):
        budget = PrivacyBudget(0.01, 1e-9)
        out = find_bounds(Dataset([1.0] * 10), budget, RngStream(0), noiseless=True)
        assert out is None
        assert budget.state == "consumed"  # spent even without a release

    def test_tie_breaks_to_smaller_bin(self):
        data = Dataset([1.0] * 5 + [2.0] * 5)
        bounds = find_bounds(data, PrivacyBudget(10.0, 0.5), RngStream(0),
                             noiseless=True)
        assert bounds.lower == math.ldexp(LN2, -1)
        assert bounds.upper == math.ldexp(LN2, 1)

    def test_brackets_unit_rate(self):
        bounds = find_bounds(stratified(1.0, 100_000), PrivacyBudget(1.0, 1e-6),
                             RngStream(0), noiseless=True)
        assert bounds.contains(1.0)
        assert bounds.ratio == 4.0

    def test_matches_oracle(self):
        gen = np.random.default_rng(11)
        for _ in range(60):
            values = gen.exponential(1.0, int(gen.integers(5, 150))).tolist()
            got = find_bounds(Dataset(values), PrivacyBudget(1.0, 0.5),
                              RngStream(0), noiseless=True)
            want = oracle_find_bounds(values, 1.0, 0.5)
            if want is None:
                assert got is None
            else:
                assert (got.lower, got.upper) == want


class TestLearnWithoutBounds:
    def test_needs_positive_delta(self):
        with pytest.raises(ValueError):
            learn_without_bounds(Dataset([1.0]), 0.2, 0.1, PrivacyBudget(1.0),
                                 RngStream(0))

    def test_budget_ledger_routes_delta_to_finder(self):
        budget = PrivacyBudget(1.0, 1e-6)
        learn_without_bounds(stratified(1.0, 100_000), 0.2, 0.1, budget,
                             RngStream(0), noiseless=True)
        finder, learner = budget.children
        assert (finder.epsilon, finder.delta) == (0.5, 1e-6)
        assert (learner.epsilon, learner.delta) == (0.5, 0.0)
        assert budget.spent() == (1.0, 1e-6)

    def test_no_bin_survived(self):
        with pytest.raises(NoBinSurvived):
            learn_without_bounds(Dataset([1.0] * 5), 0.2, 0.1,
                                 PrivacyBudget(0.01, 1e-9), RngStream(0),
                                 noiseless=True)

    def test_noiseless_recovers_rate(self):
        est = learn_without_bounds(stratified(1.0, 100_000), 0.2, 0.1,
                                   PrivacyBudget(1.0, 1e-6), RngStream(0),
                                   noiseless=True)
        assert 0.8 <= est.lambda_hat <= 1.2

    def test_matches_oracle(self):
        gen = np.random.default_rng(13)
        for _ in range(60):
            values = gen.exponential(1.0, int(gen.integers(10, 200))).tolist()
            try:
                want = oracle_learn_without_bounds(values, 0.2, 0.1, 1.0, 0.5)
            except (NoBinSurvived, SearchExhausted, RangeEstimationFailed,
                    NonpositiveMean) as exc:
                want = type(exc)
            try:
                got = learn_without_bounds(Dataset(values), 0.2, 0.1,
                                           PrivacyBudget(1.0, 0.5), RngStream(0),
                                           noiseless=True)
                assert (got.lambda_hat, got.route.value) == want
            except CoarseFailed as exc:
                assert want is SearchExhausted
                assert type(exc.__cause__) is want
            except (NoBinSurvived, SearchExhausted, RangeEstimationFailed,
                    NonpositiveMean) as exc:
                assert type(exc) is want
