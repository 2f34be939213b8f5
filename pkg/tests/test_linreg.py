import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from ardlkit.errors import PerfectFitError, RankDeficiencyError, SampleTooShortError
from ardlkit.linreg import (
    DesignMatrix,
    automatic_bandwidth,
    information_criteria,
    long_run_variance,
    nested_rss,
    ols_fit,
)
from oracles import bartlett_lrv_loop, ols_normal_equations


def _random_design(rng, n=20, k=3):
    X = np.column_stack((np.ones(n), rng.normal(size=(n, k - 1))))
    y = X @ rng.normal(size=k) + rng.normal(size=n)
    return DesignMatrix(X, y, tuple(f"c{i}" for i in range(k)))


class TestOls:
    def test_exact_line(self):
        fit = ols_fit(DesignMatrix.build([1, 3, 5], {"x": [0, 1, 2]}))
        assert_allclose(fit.coefficients, [1, 2], atol=1e-12)
        assert fit.r_squared == 1.0
        assert_allclose(fit.residuals, 0, atol=1e-12)
        assert math.isnan(fit.aic)

    def test_intercept_only_is_mean(self, rng):
        y = rng.normal(3, 1, 25)
        fit = ols_fit(DesignMatrix.build(y))
        assert fit.coef("const") == pytest.approx(y.mean(), rel=1e-13)

    def test_normal_equations_oracle(self, rng):
        design = _random_design(rng)
        fit = ols_fit(design)
        ref = ols_normal_equations(design.X, design.y)
        assert_allclose(fit.coefficients, ref["beta"], rtol=1e-10)
        assert_allclose(fit.standard_errors, ref["se"], rtol=1e-10)
        assert fit.r_squared == pytest.approx(ref["r2"], rel=1e-10)

    def test_criteria_match_formulas(self, rng):
        fit = ols_fit(_random_design(rng))
        n, k, rss = fit.nobs, fit.k, fit.rss
        base = n * math.log(rss / n)
        assert fit.aic == pytest.approx(base + 2 * k, rel=1e-12)
        assert fit.bic == pytest.approx(base + k * math.log(n), rel=1e-12)
        assert fit.hq == pytest.approx(base + 2 * k * math.log(math.log(n)), rel=1e-12)

    def test_t_is_coef_over_se(self, rng):
        fit = ols_fit(_random_design(rng))
        assert_allclose(fit.t_statistics, fit.coefficients / fit.standard_errors, rtol=1e-14)

    def test_rank_deficiency_names_columns(self, rng):
        x = rng.normal(size=20)
        design = DesignMatrix.build(rng.normal(size=20), {"x": x, "x2": 2 * x}, response_name="LCO2")
        with pytest.raises(RankDeficiencyError, match="LCO2") as info:
            ols_fit(design)
        assert "x2" in info.value.columns

    def test_perturbed_collinear_column_is_fine(self, rng):
        x = rng.normal(size=20)
        design = DesignMatrix.build(rng.normal(size=20), {"x": x, "x2": 2 * x + 1e-3 * rng.normal(size=20)})
        ols_fit(design)

    def test_n_not_above_k(self):
        with pytest.raises(SampleTooShortError):
            DesignMatrix.build([1.0, 2.0], {"x": [1.0, 3.0]})

    @settings(max_examples=60, deadline=None)
    @given(st.integers(8, 50), st.integers(1, 5), st.integers(0, 2**32 - 1))
    def test_reconstruction_and_orthogonality(self, n, k, seed):
        if n <= k + 1:
            return
        rng = np.random.default_rng(seed)
        design = _random_design(rng, n, k)
        fit = ols_fit(design)
        assert_allclose(fit.fitted + fit.residuals, design.y, atol=1e-10)
        norms = np.linalg.norm(design.X, axis=0)
        assert np.all(np.abs(design.X.T @ fit.residuals) <= 1e-8 * norms * max(1.0, np.linalg.norm(design.y)))
        assert 0.0 <= fit.r_squared <= 1.0


class TestInformationCriteria:
    def test_unit_mean_squared_residual(self):
        aic, bic, hq = information_criteria(10.0, 10, 2)
        assert aic == pytest.approx(4.0)
        assert bic == pytest.approx(2 * math.log(10), rel=1e-12)
        assert bic == pytest.approx(4.60517, abs=1e-5)
        assert hq == pytest.approx(4 * math.log(math.log(10)))

    def test_perfect_fit_flagged(self):
        with pytest.raises(PerfectFitError):
            information_criteria(0.0, 10, 2)


class TestNestedRss:
    def test_matches_separate_fits(self, rng):
        X = np.column_stack((np.ones(40), rng.normal(size=(40, 4))))
        y = rng.normal(size=40)
        got = nested_rss(X, y, [1, 3, 5])
        for m, value in zip([1, 3, 5], got):
            assert value == pytest.approx(ols_normal_equations(X[:, :m], y)["rss"], rel=1e-10)


class TestLongRunVariance:
    def test_bandwidth_zero_is_gamma0(self, rng):
        u = rng.normal(size=(50, 2))
        lrv = long_run_variance(u, 0)
        assert_allclose(lrv.omega, u.T @ u / 50, rtol=1e-14)
        assert_allclose(lrv.lambda_one_sided, lrv.omega)

    def test_loop_oracle(self, rng):
        u = rng.normal(size=60)
        assert long_run_variance(u, 4).scalar == pytest.approx(bartlett_lrv_loop(u, 4), rel=1e-12)

    def test_one_sided_plus_transpose(self, rng):
        u = rng.normal(size=(80, 3))
        lrv = long_run_variance(u, 3)
        assert_allclose(lrv.omega, lrv.lambda_one_sided + lrv.lambda_one_sided.T - lrv.gamma0, atol=1e-14)
        assert_allclose(lrv.omega, lrv.omega.T, atol=1e-12)
        assert np.all(np.diag(lrv.omega) >= 0)

    def test_automatic_bandwidth(self):
        assert automatic_bandwidth(100) == 4
        assert automatic_bandwidth(32) == 3
        assert automatic_bandwidth(20000) == math.floor(4 * 200 ** (2 / 9))

    def test_iid_normal_near_one(self):
        u = np.random.default_rng(2024).standard_normal(20000)
        assert long_run_variance(u).scalar == pytest.approx(1.0, abs=0.05)

    def test_ar1_long_run_variance(self):
        # seed fixed a priori; the Bartlett bias at B=40 is about -0.13 of the target 4
        rng = np.random.default_rng(7)
        e = rng.standard_normal(50_100)
        u = np.empty_like(e)
        u[0] = e[0]
        for t in range(1, e.size):
            u[t] = 0.5 * u[t - 1] + e[t]
        assert long_run_variance(u[100:], 40).scalar == pytest.approx(4.0, abs=0.2)

    def test_bandwidth_too_large(self, rng):
        with pytest.raises(SampleTooShortError):
            long_run_variance(rng.normal(size=10), 9)

    def test_permutation_invariance_only_at_bandwidth_zero(self, rng):
        e = rng.normal(size=500)
        u = np.empty(500)
        u[0] = e[0]
        for t in range(1, 500):
            u[t] = 0.8 * u[t - 1] + e[t]
        perm = rng.permutation(500)
        assert long_run_variance(u[perm], 0).scalar == pytest.approx(long_run_variance(u, 0).scalar, rel=1e-12)
        assert abs(long_run_variance(u[perm], 5).scalar - long_run_variance(u, 5).scalar) > 0.5
