"""Tail constants: Goldie formula, rank fit, Hill cross-check, limit constant."""

import math

import numpy as np
import pytest

import kestenlab as kl
from kestenlab.tails import goldie_from_draws


class TestGoldie:
    def test_uniform_alpha_one_collapses(self, uniform_model, uniform_profile):
        """At alpha = 1 the increment is identically 1/rho."""
        est = kl.goldie_c_inf(uniform_model, uniform_profile, 10**4,
                              kl.master_stream(40))
        assert est.value == pytest.approx(1.0 / uniform_profile.rho, rel=1e-9)
        assert est.se <= 1e-9

    def test_one_term_fixture(self, model15):
        """With a one-term chain the estimator reduces to the gain moment."""
        rng = kl.rng_from(kl.master_stream(41))
        draws = model15.a_law.sample(rng, 10**5)
        est = goldie_from_draws(draws, 1.5, 0.25)
        direct = ((1.0 + draws) ** 1.5 - draws**1.5) / (1.5 * 0.25)
        assert est.value == pytest.approx(direct.mean(), rel=1e-12)
        assert est.se == pytest.approx(direct.std(ddof=1) / math.sqrt(draws.size),
                                       rel=1e-9)

    def test_min_samples(self, model15, prof15):
        with pytest.raises(ValueError):
            kl.goldie_c_inf(model15, prof15, 100, kl.master_stream(42))

    def test_ignores_model_b_law(self, model15, prof15):
        """c_inf comes from the unit-shift chain: the B-law must not matter."""
        shifted = kl.SREModel(model15.a_law, kl.ExponentialB(2.0))
        a = kl.goldie_c_inf(model15, prof15, 10**4, kl.master_stream(43))
        b = kl.goldie_c_inf(shifted, prof15, 10**4, kl.master_stream(43))
        assert a == b


class TestRankFit:
    def test_exact_pareto_recovers_unit_constant(self):
        rng = kl.rng_from(kl.master_stream(44))
        y = (1.0 - rng.random(10**6)) ** (-1.0 / 1.5)
        c_plus, c_minus = kl.rank_fit_tail(y, 1.5)
        assert abs(c_plus.value - 1.0) <= 0.05
        assert c_minus.value == 0.0

    def test_all_positive_sample_zero_lower_tail(self):
        rng = kl.rng_from(kl.master_stream(45))
        y = rng.exponential(1.0, 10**6) + 0.1
        _, c_minus = kl.rank_fit_tail(y, 1.5)
        assert c_minus == kl.Estimate(0.0, 0.0)

    def test_scaling_identity(self):
        """Multiplying the sample by s multiplies the constants by s**alpha."""
        rng = kl.rng_from(kl.master_stream(46))
        y = (1.0 - rng.random(2 * 10**5)) ** (-1.0 / 1.5)
        base, _ = kl.rank_fit_tail(y, 1.5)
        scaled, _ = kl.rank_fit_tail(2.0 * y, 1.5)
        assert scaled.value == pytest.approx(2.0**1.5 * base.value, rel=1e-12)
        assert scaled.se == pytest.approx(2.0**1.5 * base.se, rel=1e-12)

    def test_window_stability(self, model15, prof15):
        y = kl.sample_stationary(model15, prof15, 1e-12,
                                 kl.master_stream(47), size=10**6)
        a, _ = kl.rank_fit_tail(y, 1.5, 0.001, 0.005)
        b, _ = kl.rank_fit_tail(y, 1.5, 0.005, 0.02)
        assert abs(a.value - b.value) <= 3.0 * math.hypot(a.se, b.se)

    def test_insufficient_tail(self):
        y = -np.ones(10**5)  # empty upper tail
        with pytest.raises(kl.InsufficientTail):
            kl.rank_fit_tail(y, 1.5)

    def test_window_validation(self):
        with pytest.raises(ValueError):
            kl.rank_fit_tail(np.ones(10**5), 1.5, 0.01, 0.2)


class TestHill:
    def test_exact_pareto(self):
        rng = kl.rng_from(kl.master_stream(48))
        y = (1.0 - rng.random(10**6)) ** (-1.0 / 1.5)
        est = kl.hill_cross_check(y, 1000)
        assert est.se == pytest.approx(1.5 / math.sqrt(1000), rel=0.2)
        assert abs(est.value - 1.5) <= 3 * est.se

    def test_chain_tail_index(self, model15, prof15):
        y = kl.sample_stationary(model15, prof15, 1e-12,
                                 kl.master_stream(49), size=10**6)
        est = kl.hill_cross_check(y, 2000)
        assert abs(est.value - 1.5) <= 0.15

    def test_constant_sample_rejected(self):
        with pytest.raises(kl.InsufficientTail):
            kl.hill_cross_check(np.ones(10**5), 500)

    def test_k_bounds(self):
        with pytest.raises(ValueError):
            kl.hill_cross_check(np.ones(10**5), 50)
        with pytest.raises(ValueError):
            kl.hill_cross_check(np.ones(10**5), 10**5 // 2)


class TestLdLimit:
    def test_arithmetic(self):
        lim = kl.ld_limit(kl.Estimate(3.0, 0.0), kl.Estimate(2.0, 0.0),
                          kl.Estimate(1.0, 0.0))
        assert lim.value == pytest.approx(2.0)
        assert lim.se == 0.0

    def test_unit_shift_collapse(self):
        """c_minus = 0 makes the limit equal c_inf whatever c_plus is."""
        lim = kl.ld_limit(kl.Estimate(11.9, 0.1), kl.Estimate(10.5, 0.4),
                          kl.Estimate(0.0, 0.0))
        assert lim.value == pytest.approx(11.9)

    def test_symmetric_halves(self):
        lim = kl.ld_limit(kl.Estimate(4.0, 0.0), kl.Estimate(0.7, 0.0),
                          kl.Estimate(0.7, 0.0))
        assert lim.value == pytest.approx(2.0)

    def test_degenerate(self):
        with pytest.raises(kl.DegenerateTails):
            kl.ld_limit(kl.Estimate(1.0, 0.0), kl.Estimate(0.0, 0.0),
                        kl.Estimate(0.0, 0.0))


class TestSymmetricShift:
    def test_balanced_tails(self, model15, prof15):
        model = kl.SREModel(model15.a_law, kl.NormalB(0.0, 1.0))
        y = kl.sample_stationary(model, prof15, 1e-12,
                                 kl.master_stream(50), size=4 * 10**5)
        c_plus, c_minus = kl.rank_fit_tail(y, 1.5)
        assert c_minus.value > 0
        assert abs(c_plus.value - c_minus.value) \
            <= 3.0 * math.hypot(c_plus.se, c_minus.se)


class TestEstimateConstants:
    def test_bundle(self, model15, prof15):
        tc = kl.estimate_constants(model15, prof15, 10**5,
                                   kl.master_stream(51))
        assert tc.c_minus == kl.Estimate(0.0, 0.0)
        assert tc.ld_limit.value == pytest.approx(tc.c_inf.value)
        assert tc.method_c_inf == "goldie-formula"
        assert tc.method_tails == "rank-fit"
        assert tc.rank_window == (0.001, 0.01)
