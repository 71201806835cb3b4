"""Distribution catalog: moments, tilting, and the iid step laws."""

import math

import numpy as np
import pytest
from scipy import stats

import kestenlab as kl


class TestTilting:
    def test_lognormal_tilt_mean(self, model15):
        """Under the power tilt the log-gain mean shifts to rho."""
        rng = kl.rng_from(kl.master_stream(30))
        a = model15.a_law.sample_tilted(1.5, rng, 10**6)
        sd = math.sqrt(1.0 / 3.0)
        assert abs(np.log(a).mean() - 0.25) <= 3 * sd / 1e3

    def test_uniform_tilt_law(self):
        """Tilted uniform has distribution function (a/hi)**(alpha+1)."""
        law = kl.UniformA(2.0)
        rng = kl.rng_from(kl.master_stream(31))
        a = law.sample_tilted(1.0, rng, 10**5)
        stat = stats.kstest(a, lambda t: (t / 2.0) ** 2.0)
        assert stat.pvalue > 0.01

    def test_gamma_tilt_law(self):
        """a**alpha tilt of Gamma(k, theta) is Gamma(k + alpha, theta)."""
        law = kl.GammaScaledA(1.2, 0.7)
        rng = kl.rng_from(kl.master_stream(32))
        a = law.sample_tilted(2.0, rng, 10**5)
        stat = stats.kstest(a, stats.gamma(a=3.2, scale=0.7).cdf)
        assert stat.pvalue > 0.01

    def test_tilt_is_probability_at_root(self, model15):
        """E A**alpha = 1 normalizes the tilt exactly."""
        assert kl.psi(model15, 1.5).value == pytest.approx(1.0, abs=1e-12)


class TestBMoments:
    def test_const(self):
        assert kl.ConstB(-2.0).abs_moment(1.5) == 2.0**1.5
        assert kl.ConstB(-2.0).mean() == -2.0
        assert not kl.ConstB(-2.0).nonnegative

    def test_normal_abs_moment_zero_mean(self):
        law = kl.NormalB(0.0, 4.0)
        # E|B| = sigma sqrt(2/pi)
        assert law.abs_moment(1.0) == pytest.approx(2.0 * math.sqrt(2 / math.pi),
                                                    rel=1e-9)

    def test_normal_abs_moment_quadrature(self):
        law = kl.NormalB(1.0, 1.0)
        rng = kl.rng_from(kl.master_stream(33))
        mc = np.abs(law.sample(rng, 10**6)) ** 1.7
        assert law.abs_moment(1.7) == pytest.approx(mc.mean(), rel=0.01)

    def test_pareto_moments(self):
        law = kl.ParetoB(2.5, 1.0)
        assert law.mean() == pytest.approx(2.5 / 1.5)
        assert law.abs_moment(2.0) == pytest.approx(2.5 / 0.5)
        assert law.abs_moment(2.5) == math.inf
        assert law.abs_moment(3.0) == math.inf

    def test_exponential_moments(self):
        law = kl.ExponentialB(2.0)
        assert law.mean() == 0.5
        assert law.abs_moment(2.0) == pytest.approx(math.gamma(3.0) / 4.0)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            kl.ParetoB(-1.0)
        with pytest.raises(ValueError):
            kl.ExponentialB(0.0)
        with pytest.raises(ValueError):
            kl.UniformA(0.0)
        with pytest.raises(ValueError):
            kl.GammaScaledA(1.0, -1.0)
        with pytest.raises(ValueError):
            kl.ConstA(0.0)


class TestIIDLaws:
    def test_pareto_tail_and_balance(self):
        law = kl.ParetoIID(1.5)
        assert law.p_balance == 1.0
        assert law.abs_tail(10.0) == pytest.approx(10.0**-1.5)
        assert law.abs_tail(0.5) == 1.0
        assert law.mean() == pytest.approx(3.0)

    def test_symmetric_pareto(self):
        law = kl.SymmetricParetoIID(2.5)
        assert law.p_balance == 0.5
        assert law.mean() == 0.0
        assert law.upper_tail(10.0) == pytest.approx(0.5 * 10.0**-2.5)
        rng = kl.rng_from(kl.master_stream(34))
        draws = law.sample(rng, 10**5)
        assert abs(np.mean(draws > 0) - 0.5) < 0.01
        assert np.abs(draws).min() >= 1.0

    def test_pareto_sample_tail(self):
        law = kl.ParetoIID(1.5)
        rng = kl.rng_from(kl.master_stream(35))
        draws = law.sample(rng, 10**6)
        emp = np.count_nonzero(draws > 10.0) / draws.size
        assert emp == pytest.approx(10.0**-1.5, rel=0.05)

    def test_heavy_mean_infinite(self):
        assert kl.ParetoIID(0.8).mean() == math.inf


class TestVarLog:
    def test_values(self):
        assert kl.LognormalA(-0.25, 1 / 3).var_log() == pytest.approx(1 / 3)
        assert kl.UniformA(2.0).var_log() == 1.0
        assert kl.ConstA(2.0).var_log() == 0.0
        rng = kl.rng_from(kl.master_stream(36))
        g = kl.GammaScaledA(1.2, 0.7)
        logs = np.log(g.sample(rng, 10**6))
        assert g.var_log() == pytest.approx(logs.var(), rel=0.02)
