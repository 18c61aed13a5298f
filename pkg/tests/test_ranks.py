"""Rank kernels against brute-force oracles and exact enumeration."""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdrank import (
    DomainError,
    TiesWarning,
    ValidationError,
    mann_whitney_null_moments,
    mann_whitney_u,
    midrank,
    signed_rank_null_moments,
    signed_rank_sum,
    squared_mann_whitney_null_moments,
    squared_signed_rank_null_moments,
    standardized_mann_whitney,
    standardized_signed_ranks,
)


def walsh_pairs(x):
    """Independent oracle: #{(i, j): i <= j, x_i + x_j > 0}."""
    x = np.asarray(x, dtype=float)
    n = x.size
    return sum(
        1 for i in range(n) for j in range(i, n) if x[i] + x[j] > 0
    )


def exceed_pairs(x, y):
    """Independent oracle: #{(i, j): x_i > y_j}."""
    return sum(1 for xi in x for yj in y if xi > yj)


tie_free = st.lists(
    st.integers(min_value=-500, max_value=500), min_size=1, max_size=30, unique=True
).map(lambda v: [float(t) + 0.25 for t in v])  # offset away from zero


class TestMidrank:
    def test_distinct_values_are_permutation_ranks(self):
        assert midrank([3.0, 1.0, 2.0]).tolist() == [3.0, 1.0, 2.0]

    def test_two_way_tie_gets_mid_rank(self):
        assert midrank([1.0, 1.0, 2.0]).tolist() == [1.5, 1.5, 3.0]

    def test_singleton(self):
        assert midrank([5.0]).tolist() == [1.0]

    @given(st.lists(st.integers(-20, 20), min_size=1, max_size=40))
    def test_rank_sum_is_k_k_plus_1_over_2(self, values):
        r = midrank([float(v) for v in values])
        k = len(values)
        assert r.sum() == pytest.approx(k * (k + 1) / 2)
        assert r.min() >= 1.0 and r.max() <= k

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            midrank([1.0, float("nan")])
        with pytest.raises(ValidationError):
            midrank([np.inf])


class TestSignedRankSum:
    def test_example_mixed_signs(self):
        # Walsh-pair oracle gives 5 for this vector
        assert walsh_pairs([1.2, -0.5, 2.0]) == 5
        assert signed_rank_sum([1.2, -0.5, 2.0]) == 5.0

    def test_all_negative_is_zero(self):
        assert signed_rank_sum([-1.0, -2.0, -3.0]) == 0.0

    def test_all_positive_is_max(self):
        assert signed_rank_sum([1.0, 2.0, 3.0, 4.0]) == 10.0

    @given(tie_free)
    @settings(max_examples=200)
    def test_matches_walsh_pair_oracle(self, x):
        assert signed_rank_sum(x) == walsh_pairs(x)

    @given(tie_free)
    def test_range(self, x):
        n = len(x)
        assert 0.0 <= signed_rank_sum(x) <= n * (n + 1) / 2

    @given(tie_free)
    def test_odd_increasing_map_invariance(self, x):
        # x -> x^3 is odd and strictly increasing; exact for these values
        cubed = [v**3 for v in x]
        assert signed_rank_sum(cubed) == signed_rank_sum(x)
        doubled = [2.0 * v for v in x]
        assert signed_rank_sum(doubled) == signed_rank_sum(x)

    def test_zero_keeps_rank_slot_but_not_counted(self):
        # |values| ranks: 0 -> 1, -2 -> 2, 3 -> 3; only 3 is positive
        with pytest.warns(TiesWarning):
            assert signed_rank_sum([0.0, -2.0, 3.0]) == 3.0


class TestMannWhitney:
    def test_example(self):
        assert mann_whitney_u([1.0, 2.0], [0.0]) == 2.0

    def test_x_above_all_y(self):
        assert mann_whitney_u([5.0], [1.0, 2.0, 3.0]) == 3.0

    def test_x_below_all_y(self):
        assert mann_whitney_u([0.0], [1.0, 2.0]) == 0.0

    @given(
        st.lists(st.integers(0, 10_000), min_size=2, max_size=60, unique=True).map(
            lambda v: [float(t) for t in v]
        ),
        st.integers(1, 59),
    )
    @settings(max_examples=200)
    def test_matches_pair_count_oracle(self, pooled, cut):
        cut = min(cut, len(pooled) - 1)
        x, y = pooled[:cut], pooled[cut:]
        assert mann_whitney_u(x, y) == exceed_pairs(x, y)
        assert 0.0 <= mann_whitney_u(x, y) <= len(x) * len(y)

    @given(
        st.lists(st.integers(-300, 300), min_size=4, max_size=30, unique=True),
        st.integers(2, 28),
    )
    def test_increasing_map_on_pooled_sample_invariance(self, pooled, cut):
        cut = min(cut, len(pooled) - 2)
        x = [float(v) for v in pooled[:cut]]
        y = [float(v) for v in pooled[cut:]]
        gx = [v**3 for v in x]
        gy = [v**3 for v in y]
        assert mann_whitney_u(gx, gy) == mann_whitney_u(x, y)

    def test_duality_with_swap(self):
        x, y = [1.0, 4.0, 2.5], [3.0, 0.5]
        assert mann_whitney_u(x, y) + mann_whitney_u(y, x) == len(x) * len(y)


class TestNullMoments:
    @pytest.mark.parametrize(
        "n,mean,var",
        [(10, 27.5, 96.25), (1, 0.5, 0.25), (100, 2525.0, 84587.5)],
    )
    def test_signed_rank_moments(self, n, mean, var):
        got = signed_rank_null_moments(n)
        assert got.mean == mean
        assert got.variance == var

    @pytest.mark.parametrize(
        "n,mean,var", [(10, 96.25, 15361.5), (2, 1.25, 1.0)]
    )
    def test_squared_signed_rank_moments(self, n, mean, var):
        got = squared_signed_rank_null_moments(n)
        assert got.mean == pytest.approx(mean, abs=1e-12)
        assert got.variance == pytest.approx(var, abs=1e-12)

    def test_squared_moments_large_n_no_overflow(self):
        n = 10**6
        exact = Fraction(
            6 * n + 5 * n**2 - 30 * n**3 - 25 * n**4 + 24 * n**5 + 20 * n**6, 1440
        )
        got = squared_signed_rank_null_moments(n)
        assert got.variance == pytest.approx(float(exact), rel=1e-15)
        assert np.isfinite(got.variance)

    @pytest.mark.parametrize(
        "n,m,mean,var",
        [(10, 10, 50.0, 175.0), (1, 1, 0.5, 0.25), (100, 100, 5000.0, 167500.0)],
    )
    def test_mann_whitney_moments(self, n, m, mean, var):
        got = mann_whitney_null_moments(n, m)
        assert got == (mean, var)

    def test_squared_mann_whitney_examples(self):
        assert squared_mann_whitney_null_moments(10, 10) == (175.0, 55650.0)
        mean, var = squared_mann_whitney_null_moments(1, 1)
        assert mean == 0.25 and var == 0.0

    def test_squared_mann_whitney_symmetric(self):
        for n in range(1, 51, 7):
            for m in range(1, 51, 9):
                a = squared_mann_whitney_null_moments(n, m)
                b = squared_mann_whitney_null_moments(m, n)
                assert a == b

    @pytest.mark.parametrize("bad", [0, -3])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            signed_rank_null_moments(bad)
        with pytest.raises(DomainError):
            squared_signed_rank_null_moments(bad)
        with pytest.raises(DomainError):
            mann_whitney_null_moments(bad, 5)
        with pytest.raises(DomainError):
            squared_mann_whitney_null_moments(5, bad)


class TestExhaustiveMoments:
    """Enumerate the exact null distributions for small sizes."""

    @pytest.mark.parametrize("n", range(1, 9))
    def test_sign_pattern_enumeration(self, n):
        rng = np.random.default_rng(n)
        base = np.sort(rng.uniform(0.5, 10.0, size=n))  # tie-free magnitudes
        stats = []
        for signs in itertools.product([-1.0, 1.0], repeat=n):
            stats.append(signed_rank_sum(base * np.array(signs)))
        stats = np.array(stats)
        mean, var = signed_rank_null_moments(n)
        assert abs(stats.mean() - mean) < 1e-9
        assert abs(stats.var() - var) < 1e-9
        sq = (stats - mean) ** 2
        sq_mean, sq_var = squared_signed_rank_null_moments(n)
        assert abs(sq.mean() - sq_mean) < 1e-9
        assert abs(sq.var() - sq_var) < 1e-9

    @pytest.mark.parametrize(
        "n,m", [(n, m) for n in range(1, 8) for m in range(1, 9 - n)]
    )
    def test_rank_assignment_enumeration(self, n, m):
        pooled = np.arange(1.0, n + m + 1.0)
        stats = []
        for xi in itertools.combinations(range(n + m), n):
            mask = np.zeros(n + m, dtype=bool)
            mask[list(xi)] = True
            stats.append(mann_whitney_u(pooled[mask], pooled[~mask]))
        stats = np.array(stats)
        mean, var = mann_whitney_null_moments(n, m)
        assert abs(stats.mean() - mean) < 1e-9
        assert abs(stats.var() - var) < 1e-9
        sq = (stats - mean) ** 2
        sq_mean, sq_var = squared_mann_whitney_null_moments(n, m)
        assert abs(sq.mean() - sq_mean) < 1e-9
        assert abs(sq.var() - sq_var) < 1e-9


class TestStandardizedVectors:
    def test_all_positive_column_value(self):
        X = np.abs(np.random.default_rng(3).standard_normal((10, 4))) + 0.1
        v = standardized_signed_ranks(X)
        # (55 - 27.5) / sqrt(96.25), frozen from the exact moments
        assert v == pytest.approx(np.full(4, 2.803059552906940), abs=1e-12)

    def test_all_negative_column_is_negated_max(self):
        rng = np.random.default_rng(4)
        X = np.abs(rng.standard_normal((17, 3))) + 0.1
        hi = standardized_signed_ranks(X)
        lo = standardized_signed_ranks(-X)
        assert lo == pytest.approx(-hi, abs=1e-12)

    def test_duplicated_columns_identical_entries(self):
        rng = np.random.default_rng(5)
        col = rng.standard_normal(12)
        X = np.column_stack([col, col, rng.standard_normal(12)])
        with pytest.warns(TiesWarning):
            v = standardized_signed_ranks(X)
        assert v[0] == v[1]

    def test_two_sample_separated_columns(self):
        rng = np.random.default_rng(6)
        X = rng.uniform(10.0, 20.0, size=(10, 5))
        Y = rng.uniform(0.0, 1.0, size=(10, 5))
        v = standardized_mann_whitney(X, Y)
        # (100 - 50) / sqrt(175), frozen from the exact moments
        assert v == pytest.approx(np.full(5, 3.779644730092272), abs=1e-12)

    def test_swap_negates_entries(self):
        rng = np.random.default_rng(7)
        X = rng.standard_normal((9, 6))
        Y = rng.standard_normal((13, 6))
        assert standardized_mann_whitney(Y, X) == pytest.approx(
            -standardized_mann_whitney(X, Y), abs=1e-12
        )

    def test_null_columns_have_near_zero_mean(self):
        # i.i.d. same-distribution columns over many draws
        rng = np.random.default_rng(8)
        draws = 10_000
        vals = np.empty(draws)
        for i in range(draws):
            vals[i] = standardized_mann_whitney(
                rng.standard_normal((6, 1)), rng.standard_normal((5, 1))
            )[0]
        assert abs(vals.mean()) < 0.05

    def test_dimension_mismatch(self):
        X = np.zeros((5, 3)) + np.arange(3)
        Y = np.zeros((5, 4)) + np.arange(4)
        with pytest.raises(ValidationError):
            standardized_mann_whitney(X, Y)

    def test_matrix_validation(self):
        with pytest.raises(ValidationError):
            standardized_signed_ranks(np.ones((1, 4)))  # n < 2
        bad = np.ones((4, 4))
        bad[2, 1] = np.nan
        with pytest.raises(ValidationError):
            standardized_signed_ranks(bad)
