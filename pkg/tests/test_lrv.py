"""Long-run variance estimators: Bartlett window and rank-correlation plug-in."""

import numpy as np
import pytest

from hdrank import DomainError, default_bandwidth, long_run_variance, tau_from_matrices, tau_from_matrix
from hdrank.lrv import bartlett_weights, lag_grade_correlations


class TestBartlettSequenceEstimator:
    def test_bandwidth_zero_returns_lag_zero_autocovariance(self):
        rng = np.random.default_rng(0)
        r = rng.standard_normal(50)
        est = long_run_variance(r, bandwidth=0)
        rc = r - r.mean()
        assert est.tau_sq == pytest.approx(rc @ rc / 50, rel=1e-12)
        assert est.bandwidth == 0
        assert est.autocovariances.shape == (1,)

    def test_vanishing_higher_lags_reduce_to_lag_zero(self):
        # one spike at each end: every lag-k autocovariance with
        # 1 <= k <= p-2 is exactly zero, so the Bartlett sum vanishes
        r = np.zeros(40)
        r[0], r[-1] = 1.0, -1.0
        est = long_run_variance(r)
        assert est.autocovariances[1:] == pytest.approx(np.zeros(est.bandwidth), abs=0)
        assert est.tau_sq == est.autocovariances[0] == 2.0 / 40.0

    def test_iid_sequence_close_to_unit(self):
        rng = np.random.default_rng(1)
        vals = [long_run_variance(rng.standard_normal(5000)).tau_sq for _ in range(100)]
        assert 0.9 <= np.mean(vals) <= 1.1

    def test_default_bandwidth_rule(self):
        assert default_bandwidth(200) == 17
        assert default_bandwidth(1000) == 30
        assert default_bandwidth(5000) == 51
        assert default_bandwidth(4) == 2  # capped at p - 2

    def test_weights(self):
        assert bartlett_weights(3) == pytest.approx([0.75, 0.5, 0.25])

    def test_floor_applies(self):
        est = long_run_variance(np.full(10, 3.14), bandwidth=2)
        assert est.tau_sq == 1e-6  # constant sequence centers to zero

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            long_run_variance(np.ones(3))
        with pytest.raises(DomainError):
            long_run_variance(np.ones(10), bandwidth=9)
        with pytest.raises(DomainError):
            long_run_variance(np.ones(10), bandwidth=-1)

    def test_positive_dependence_raises_estimate(self):
        rng = np.random.default_rng(2)
        eps = rng.standard_normal(4000)
        ar = np.empty(4000)
        ar[0] = eps[0]
        for i in range(1, 4000):
            ar[i] = 0.5 * ar[i - 1] + eps[i]
        est = long_run_variance(ar)
        # true long-run variance of AR(0.5) is 1/(1-0.5)^2 = 4x the variance
        assert est.tau_sq > 2.0 * ar.var()


class TestRankCorrelationPlugIn:
    def test_independent_columns_give_unit_tau(self):
        rng = np.random.default_rng(3)
        taus = [tau_from_matrix(rng.standard_normal((100, 200))).tau_sq for _ in range(50)]
        assert 0.95 <= np.mean(taus) <= 1.1
        assert min(taus) >= 1.0  # squared correlations can only add

    def test_shift_immunity(self):
        # coordinate-wise location shifts change nothing at all
        rng = np.random.default_rng(4)
        X = rng.standard_normal((60, 50))
        shifted = X + np.linspace(-5.0, 5.0, 50)
        a = tau_from_matrix(X)
        b = tau_from_matrix(shifted)
        assert a.tau_sq == b.tau_sq
        assert np.array_equal(a.autocovariances, b.autocovariances)

    def test_monotone_transform_immunity(self):
        rng = np.random.default_rng(5)
        X = rng.standard_normal((40, 30))
        assert tau_from_matrix(np.exp(X)).tau_sq == tau_from_matrix(X).tau_sq

    def test_dependent_columns_raise_tau(self):
        rng = np.random.default_rng(6)
        z = rng.standard_normal((150, 121))
        X = z[:, :-1] + z[:, 1:]  # adjacent columns share a component
        est = tau_from_matrix(X)
        assert est.tau_sq > 1.2
        assert est.autocovariances[0] == 1.0

    def test_lag_zero_anchor_and_bandwidth_zero(self):
        rng = np.random.default_rng(7)
        X = rng.standard_normal((30, 20))
        est = tau_from_matrix(X, bandwidth=0)
        assert est.tau_sq == 1.0
        assert est.autocovariances.tolist() == [1.0]

    def test_two_sample_combination_weights(self):
        rng = np.random.default_rng(8)
        X = rng.standard_normal((25, 40))
        Y = rng.standard_normal((35, 40))
        b = default_bandwidth(40)
        rx = lag_grade_correlations(X, b)
        ry = lag_grade_correlations(Y, b)
        mixed = (35 * rx + 25 * ry) / 60
        est = tau_from_matrices(X, Y)
        expect = 1.0 + 2.0 * (bartlett_weights(b) @ mixed**2)
        assert est.tau_sq == pytest.approx(expect, rel=1e-12)

    def test_constant_column_contributes_zero(self):
        rng = np.random.default_rng(9)
        X = rng.standard_normal((20, 10))
        X[:, 3] = 7.0
        est = tau_from_matrix(X)
        assert np.isfinite(est.tau_sq)

    def test_grade_correlation_of_identical_columns_is_one(self):
        col = np.random.default_rng(10).standard_normal(50)
        M = np.column_stack([col, col])
        assert lag_grade_correlations(M, 1)[0] == pytest.approx(1.0, abs=1e-12)
