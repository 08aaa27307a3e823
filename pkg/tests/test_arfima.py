import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmca import dmca_coefficient
from dmca.arfima import (
    ArfimaSpec,
    arfima_weights,
    correlated_innovations,
    fractional_filter,
    generate_pair,
)
from dmca.errors import InvalidParameter

from oracles import gamma_weight, naive_filter


class TestWeights:
    def test_white_noise(self):
        np.testing.assert_array_equal(arfima_weights(0.0, 3), [1, 0, 0, 0])

    def test_pure_integrator(self):
        np.testing.assert_array_equal(arfima_weights(1.0, 3), [1, 1, 1, 1])

    def test_half(self):
        np.testing.assert_allclose(arfima_weights(0.5, 3), [1, 0.5, 0.375, 0.3125], rtol=1e-15)

    @pytest.mark.parametrize("d", [-0.45, -0.2, 0.1, 0.4, 0.5, 0.6, 0.9, 1.1, 1.4])
    def test_against_gamma_closed_form(self, d):
        w = arfima_weights(d, 50)
        ref = [gamma_weight(n, d) for n in range(51)]
        np.testing.assert_allclose(w, ref, rtol=1e-12)

    def test_no_overflow_on_long_history(self):
        w = arfima_weights(1.4, 6000)
        assert np.all(np.isfinite(w))
        # far beyond where Gamma(n + 1) overflows
        assert w[5000] == pytest.approx(gamma_weight(5000, 1.4), rel=1e-10)

    @settings(max_examples=50, deadline=None)
    @given(d=st.floats(-0.5, 1.5), n_max=st.integers(1, 300))
    def test_recurrence(self, d, n_max):
        w = arfima_weights(d, n_max)
        assert w[0] == 1.0 and np.all(np.isfinite(w))
        n = np.arange(1, n_max + 1)
        np.testing.assert_allclose(w[1:], w[:-1] * (n - 1 + d) / n, rtol=1e-12, atol=0)

    @settings(max_examples=50, deadline=None)
    @given(d=st.floats(0.001, 0.499))
    def test_stationary_weights_decrease(self, d):
        w = arfima_weights(d, 200)
        assert np.all(w > 0)
        assert np.all(np.diff(w[1:]) < 0)

    @pytest.mark.parametrize("d", [-0.6, 1.6, math.nan, math.inf])
    def test_rejects_bad_d(self, d):
        with pytest.raises(InvalidParameter):
            arfima_weights(d, 3)

    def test_zero_length(self):
        np.testing.assert_array_equal(arfima_weights(0.3, 0), [1.0])


class TestInnovations:
    def test_full_correlation_copies(self):
        eps, nu = correlated_innovations(1.0, 1000, 3)
        np.testing.assert_array_equal(nu, eps)
        eps, nu = correlated_innovations(-1.0, 1000, 3)
        np.testing.assert_array_equal(nu, -eps)

    def test_independent(self):
        n = 10**6
        eps, nu = correlated_innovations(0.0, n, 4)
        assert abs(np.corrcoef(eps, nu)[0, 1]) <= 5 / math.sqrt(n)

    def test_correlated(self):
        n = 10**6
        eps, nu = correlated_innovations(0.7, n, 5)
        assert abs(np.corrcoef(eps, nu)[0, 1] - 0.7) <= 0.005

    @pytest.mark.parametrize("rho", [-0.9, 0.3])
    def test_standard_normal_marginals(self, rho):
        n = 200_000
        for s in correlated_innovations(rho, n, 6):
            assert abs(s.mean()) <= 5 / math.sqrt(n)
            # sd of the sample variance of N(0,1) is sqrt(2/n)
            assert abs(s.var() - 1.0) <= 5 * math.sqrt(2 / n)

    def test_deterministic(self):
        a = correlated_innovations(0.4, 500, 2**64 - 1)
        b = correlated_innovations(0.4, 500, 2**64 - 1)
        np.testing.assert_array_equal(a.eps, b.eps)
        np.testing.assert_array_equal(a.nu, b.nu)
        c = correlated_innovations(0.4, 500, 2**64 - 2)
        assert not np.array_equal(a.eps, c.eps)

    @pytest.mark.parametrize("rho", [1.01, -2.0, math.nan])
    def test_rejects_bad_rho(self, rho):
        with pytest.raises(InvalidParameter):
            correlated_innovations(rho, 10, 0)

    @pytest.mark.parametrize("seed", [-1, 2**64, 1.5])
    def test_rejects_bad_seed(self, seed):
        with pytest.raises(InvalidParameter):
            correlated_innovations(0.0, 10, seed)


class TestGeneratePair:
    def test_white_noise_returns_innovations(self):
        spec = ArfimaSpec(0.0, 0.0, 0.9, 300, burn_in=50, seed=7)
        x, y = generate_pair(spec)
        eps, nu = correlated_innovations(0.9, 350, 7)
        np.testing.assert_array_equal(x, eps[50:])
        np.testing.assert_array_equal(y, nu[50:])

    def test_integrator_is_running_sum(self):
        x, _ = generate_pair(ArfimaSpec(1.0, 1.0, 0.0, 100, burn_in=0, seed=8))
        eps, _ = correlated_innovations(0.0, 100, 8)
        np.testing.assert_allclose(x, np.cumsum(eps), rtol=0, atol=1e-12)

    def test_lengths_and_burn_in_slice(self):
        x, y = generate_pair(ArfimaSpec(0.6, 0.3, 0.2, 123, burn_in=77, seed=9))
        assert len(x) == len(y) == 123
        full_x, full_y = generate_pair(ArfimaSpec(0.6, 0.3, 0.2, 200, burn_in=0, seed=9))
        np.testing.assert_array_equal(x, full_x[77:])
        np.testing.assert_array_equal(y, full_y[77:])

    def test_variance_matches_finite_history(self):
        d, T, burn = 0.4, 1000, 500
        sq = [np.mean(generate_pair(ArfimaSpec(d, d, 0.0, T, burn, seed=s))[0] ** 2)
              for s in range(200)]
        w = arfima_weights(d, T + burn - 1)
        assert np.mean(sq) == pytest.approx(np.sum(w**2), rel=0.15)
        # exact expectation: average over t of the history-length partial sums
        partial = np.cumsum(w**2)[burn:]
        assert np.mean(sq) == pytest.approx(np.mean(partial), rel=0.05)

    @pytest.mark.parametrize("method", ["direct", "fft"])
    @pytest.mark.parametrize("d", [0.1, 0.6, 1.4, -0.3])
    def test_filter_matches_double_loop(self, method, d):
        noise = np.random.default_rng(10).standard_normal(500)
        out = fractional_filter(noise, d, method)
        ref = np.array(naive_filter(noise.tolist(), arfima_weights(d, 499).tolist()))
        assert np.max(np.abs(out - ref)) <= 1e-9 * np.max(np.abs(ref))

    def test_unknown_method(self):
        with pytest.raises(InvalidParameter):
            fractional_filter(np.ones(4), 0.3, "magic")

    def test_deterministic(self):
        spec = ArfimaSpec(1.1, 1.1, -0.4, 400, 200, seed=12345)
        a, b = generate_pair(spec), generate_pair(spec)
        np.testing.assert_array_equal(a[0], b[0])
        np.testing.assert_array_equal(a[1], b[1])

    @pytest.mark.parametrize("d", [0.1, 0.9, 1.4])
    @pytest.mark.parametrize("lam", [5, 15, 101])
    def test_fully_correlated_pair_gives_unit_coefficient(self, d, lam):
        x, y = generate_pair(ArfimaSpec(d, d, 1.0, 500, 100, seed=13))
        np.testing.assert_array_equal(x, y)
        assert dmca_coefficient(x, y, lam).rho == 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [dict(d1=2.0), dict(d2=-1.0), dict(rho=1.5), dict(length=0), dict(burn_in=-1),
         dict(seed=-5), dict(length=10.5)],
    )
    def test_spec_validation(self, kwargs):
        base = dict(d1=0.4, d2=0.4, rho=0.0, length=10, burn_in=0, seed=0)
        base.update(kwargs)
        with pytest.raises(InvalidParameter):
            ArfimaSpec(**base)
