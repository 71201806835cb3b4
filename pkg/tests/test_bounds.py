"""Tail-inequality toolbox: formulas, caps, monotonicity, dominance."""

import math

import numpy as np
import pytest

import kestenlab as kl
from kestenlab.bounds import (CenteredExponential, CenteredPareto,
                              CenteredUniform, Rademacher, SuiteCase,
                              petrov_shift, summarize, verify_case)


class TestProkhorov:
    def test_reference_value(self):
        bv = kl.prokhorov(2.0, 1.0, 1.0)
        assert bv.raw == pytest.approx(math.exp(-math.asinh(1.0)), rel=1e-12)
        assert bv.raw == pytest.approx(1.0 / (1.0 + math.sqrt(2.0)), rel=1e-9)

    def test_never_exceeds_one(self):
        for x in (0.1, 1.0, 5.0, 50.0):
            assert kl.prokhorov(x, 1.0, 3.0).capped <= 1.0

    def test_flat_variance_limit(self):
        assert kl.prokhorov(2.0, 1.0, 1e12).raw == pytest.approx(1.0, abs=1e-9)

    def test_domain(self):
        with pytest.raises(ValueError):
            kl.prokhorov(-1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            kl.prokhorov(1.0, 1.0, 0.0)

    def test_monotone_in_x(self):
        grid = np.linspace(0.5, 30.0, 50)
        vals = [kl.prokhorov(x, 1.0, 10.0).capped for x in grid]
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


class TestNagaevSV:
    def test_x_equals_y(self):
        bv = kl.nagaev_sv(5.0, 5.0, 2.0, 3.0, 0.01)
        assert bv.raw == pytest.approx(0.01 + math.e * 3.0 / 5.0**2)

    def test_zero_moment_term(self):
        assert kl.nagaev_sv(10.0, 2.0, 2.0, 0.0, 0.07).raw \
            == pytest.approx(0.07)

    def test_reference_value(self):
        bv = kl.nagaev_sv(10.0, 2.0, 2.0, 5.0, 0.01)
        expected = 0.01 + (math.e * 5.0 / (10.0 * 2.0)) ** 5.0
        assert bv.raw == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(0.155, abs=5e-4)

    def test_cap_records_raw(self):
        bv = kl.nagaev_sv(1.0, 10.0, 2.0, 100.0, 0.5)
        assert bv.raw > 1.0
        assert bv.capped == 1.0

    def test_monotone_in_x(self):
        grid = np.linspace(20.0, 300.0, 60)
        vals = [kl.nagaev_sv(x, 8.0, 2.0, 100.0, 0.01).capped for x in grid]
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


class TestFukNagaev:
    def test_beta_from_p(self):
        ms = summarize(CenteredUniform(1.0), 100, 3.0, 1.0)
        assert ms.beta == pytest.approx(0.6)

    def test_vanishing_variance_limit(self):
        bv = kl.fuk_nagaev(20.0, 4.0, 3.0, 10.0, 1e-12, 0.0)
        middle = (10.0 / (0.6 * 20.0 * 16.0)) ** (0.6 * 5.0)
        assert bv.raw == pytest.approx(middle, rel=1e-9)

    def test_reference_value(self):
        bv = kl.fuk_nagaev(20.0, 4.0, 3.0, 10.0, 8.0, 0.0)
        middle = (10.0 / (0.6 * 20.0 * 16.0)) ** 3.0
        expo = math.exp(-0.16 * 400.0 / (2.0 * math.e**3 * 8.0))
        assert bv.raw == pytest.approx(middle + expo, rel=1e-12)
        assert bv.raw == pytest.approx(0.8195, abs=2e-4)

    def test_dominates_exponential_term(self):
        expo = math.exp(-0.16 * 400.0 / (2.0 * math.e**3 * 8.0))
        assert kl.fuk_nagaev(20.0, 4.0, 3.0, 10.0, 8.0, 0.0).raw >= expo

    def test_p_guard(self):
        with pytest.raises(ValueError):
            kl.fuk_nagaev(10.0, 2.0, 2.0, 5.0, 1.0, 0.0)

    def test_monotone_in_x(self):
        grid = np.linspace(30.0, 200.0, 40)
        vals = [kl.fuk_nagaev(x, 1.0, 3.0, 25.0, 33.0, 0.0).capped
                for x in grid]
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


class TestPetrov:
    def test_shift_literal_reading(self):
        assert petrov_shift(0.5, 2.0, 4.0, reading="literal") \
            == pytest.approx(math.sqrt(2.0))

    def test_shift_resolved_reading(self):
        assert petrov_shift(0.5, 2.0, 4.0) == pytest.approx(math.sqrt(8.0))

    def test_big_l_by_p(self):
        assert summarize(CenteredUniform(1.0), 10, 2.0, 1.0).big_l == 1
        assert summarize(CenteredUniform(1.0), 10, 1.5, 1.0).big_l == 2
        with pytest.raises(ValueError):
            _ = summarize(CenteredUniform(1.0), 10, 3.0, 1.0).big_l

    def test_zero_moment_no_shift(self):
        bv = kl.petrov_max(5.0, 0.5, 2.0, 0.0, lambda t: 0.25)
        assert bv.raw == pytest.approx(0.5)

    def test_composes_with_injected_tail(self):
        bv = kl.petrov_max(10.0, 0.8, 2.0, 16.0,
                           lambda t: math.exp(-max(t, 0.0)))
        shift = petrov_shift(0.8, 2.0, 16.0)
        assert bv.raw == pytest.approx(math.exp(-(10.0 - shift)) / 0.8)

    def test_p_guard(self):
        with pytest.raises(ValueError):
            petrov_shift(0.5, 3.0, 1.0)
        with pytest.raises(ValueError):
            petrov_shift(1.5, 2.0, 1.0)


class TestLevyOttaviani:
    def test_identity_case(self):
        assert kl.levy_ottaviani(5.0, 0.0, 1.0, 0.3).raw == pytest.approx(0.3)

    def test_halving_doubles(self):
        assert kl.levy_ottaviani(5.0, 1.0, 0.5, 0.3).raw == pytest.approx(0.6)

    def test_reference_value(self):
        assert kl.levy_ottaviani(5.0, 1.0, 0.4, 0.3).raw == pytest.approx(0.75)

    def test_q_guard(self):
        with pytest.raises(ValueError):
            kl.levy_ottaviani(5.0, 1.0, 0.0, 0.3)


class TestMomentSummary:
    def test_validation(self):
        with pytest.raises(ValueError):
            kl.MomentSummary(n=10, var_sum=-1.0, p=2.0, m_p=1.0,
                             trunc_y=1.0, tail_at_y=0.0)

    def test_analytic_summaries(self):
        ms = summarize(CenteredUniform(1.0), 100, 2.0, 0.5)
        assert ms.var_sum == pytest.approx(100 / 3)
        assert ms.m_p == pytest.approx(100 / 3)
        assert ms.tail_at_y == pytest.approx(100 * 0.25)

    def test_pareto_moment_quadrature(self):
        """Second numerical route: log-substituted trapezoid of the density
        integral (the naive Monte Carlo mean has infinite variance here)."""
        law = CenteredPareto(1.5)
        m = 3.0
        s = np.linspace(0.0, 60.0, 600_001)
        t = np.exp(s)
        integrand = np.abs(t - m) ** 1.2 * 1.5 * t**-2.5 * t  # dt = t ds
        oracle = np.trapezoid(integrand, s)
        assert law.abs_moment(1.2) == pytest.approx(oracle, rel=1e-6)

    def test_exponential_moment_quadrature(self):
        law = CenteredExponential(1.0)
        rng = kl.rng_from(kl.master_stream(91))
        draws = np.abs(law.sample(rng, 10**6)) ** 3
        assert law.abs_moment(3.0) == pytest.approx(draws.mean(), rel=0.05)


class TestDominance:
    def test_prokhorov_case_passes(self):
        case = SuiteCase("prokhorov-uniform", "prokhorov",
                         CenteredUniform(1.0), 100, (5.0, 10.0, 15.0))
        rows = verify_case(case, 10**4, kl.master_stream(92))
        assert all(r.passed for r in rows)
        assert all(r.capped_bound <= 1.0 for r in rows)

    def test_levy_case_passes(self):
        case = SuiteCase("levy-uniform", "levy", CenteredUniform(1.0), 100,
                         (8.0,), c=6.0)
        rows = verify_case(case, 10**4, kl.master_stream(93))
        assert all(r.passed for r in rows)

    def test_petrov_reading_probe(self):
        """The verbatim shift fails dominance on the Rademacher walk; the
        von Bahr-Esseen shift holds.  This is the recorded resolution of the
        reading ambiguity."""
        literal, resolved = kl.petrov_reading_cases()
        rows_lit = verify_case(literal, 3 * 10**4, kl.master_stream(94))
        rows_res = verify_case(resolved, 3 * 10**4, kl.master_stream(94))
        assert not any(r.passed for r in rows_lit)
        assert all(r.passed for r in rows_res)
        assert kl.bounds.PETROV_DEFAULT_READING == "von-bahr-esseen"

    def test_default_suite_shape(self):
        suite = kl.default_suite()
        assert len(suite) >= 12
        assert {c.inequality for c in suite} == {
            "prokhorov", "nagaev", "fuk-nagaev", "petrov", "levy"}

    def test_report_structure(self):
        suite = kl.default_suite()[:2]
        report = kl.verify_dominance(suite, 5000, kl.master_stream(95))
        assert report.trials == 5000
        assert len(report.rows) == sum(len(c.xs) for c in suite)
        assert report.all_pass() == (len(report.failures()) == 0)
