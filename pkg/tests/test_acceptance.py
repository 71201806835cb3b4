"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines live.  Tolerances are declared in each test; budgets are sized so the
Monte Carlo noise sits well inside each tolerance.

Several criteria probe asymptotic statements whose constants are approached
only logarithmically for the reference models; where measurement shows a
stated target to be out of reach at any feasible budget, the test still
asserts the criterion as written and the failure is analyzed in the
decisions ledger rather than papered over.
"""

import hashlib
import math
from functools import partial

import numpy as np
import pytest
from scipy import special

import kestenlab as kl
from kestenlab import bounds as bounds_mod
from kestenlab.cli import main as cli_main
from kestenlab.ldlab import iid_lower_bound
from kestenlab.stats import intervals_admit_common_value
from kestenlab.streams import substream

from conftest import criterion_line

RANK_WINDOW = (1e-5, 1e-4)   # deep enough that the fitted tail has settled
SEED = 20260810


@pytest.fixture(scope="module")
def tc15(model15, prof15):
    return kl.estimate_constants(model15, prof15, 10**6,
                                 kl.task_stream(SEED, "constants15"),
                                 rank_window=RANK_WINDOW)


@pytest.fixture(scope="module")
def tc25(model25, prof25):
    return kl.estimate_constants(model25, prof25, 10**6,
                                 kl.task_stream(SEED, "constants25"),
                                 rank_window=RANK_WINDOW)


def test_criterion_1_solver_exactness(model15, model25, uniform_model):
    """Closed-form tail indices and drifts to 1e-10."""
    tol = 1e-10
    results = []
    for model, alpha_ref, rho_ref in (
            (uniform_model, 1.0, math.log(2.0) - 0.5),
            (model15, 1.5, 0.25),
            (model25, 2.5, 0.25)):
        alpha = kl.solve_alpha(model)
        rho = kl.rho(model, alpha).value
        results.append((abs(alpha - alpha_ref), abs(rho - rho_ref)))
    worst = max(max(r) for r in results)
    ok = worst <= tol
    criterion_line(1, ok, f"max |error| = {worst:.2e} (tol {tol:g})")
    assert ok, f"solver drift {worst:.2e} exceeds {tol:g}"


def test_criterion_2_constant_coherence(model15, prof15, model25, prof25,
                                        tc15, tc25):
    """Goldie formula vs rank-fit upper tail for unit-shift chains at 1e6."""
    details = []
    ok = True
    for name, tc in (("alpha=1.5", tc15), ("alpha=2.5", tc25)):
        gap = abs(tc.c_inf.value - tc.c_plus.value)
        limit = 3.0 * math.hypot(tc.c_inf.se, tc.c_plus.se)
        details.append(f"{name}: |{tc.c_inf.value:.2f} - {tc.c_plus.value:.2f}|"
                       f" = {gap:.2f} vs {limit:.2f}")
        ok = ok and gap <= limit
    criterion_line(2, ok, "; ".join(details))
    assert ok, "; ".join(details)


def test_criterion_3_nagaev_iid_baseline():
    """One-sided Pareto(1.5), n = 100, crude 1e7 paths, grid from b_n."""
    law = kl.ParetoIID(1.5)
    n, budget = 100, 10**7
    b_n = iid_lower_bound(law, n)
    assert b_n == pytest.approx(100 ** (0.1 + 2.0 / 3.0))
    # grid top keeps >= ~200 expected exceedances at this budget
    x_top = (n / 2e-5) ** (1.0 / law.alpha)
    grid = np.geomspace(b_n, x_top, 8)
    curve = kl.nagaev_baseline(law, n, grid, budget,
                               kl.task_stream(SEED, "nagaev"))
    in_band = [0.7 * law.p_balance
               <= p.ratio.value <= 1.3 * law.p_balance
               for p in curve.points]
    frac = sum(in_band) / len(in_band)
    ok = frac >= 0.8
    ratios = ", ".join(f"{p.ratio.value:.3f}" for p in curve.points)
    criterion_line(3, ok, f"{frac:.0%} of points in [0.7, 1.3]p; "
                          f"ratios: {ratios}")
    assert ok, f"only {frac:.0%} of grid points inside [0.7, 1.3] p"


def _ratio_curves(model, profile, tc, ns, stream, budget=2 * 10**5):
    curves = {}
    for j, n in enumerate(ns):
        region = kl.build_region(profile, n, m_exponent=2.2) \
            if profile.alpha <= 2 else kl.build_region(profile, n)
        grid = kl.x_grid(region, profile, estimator="tilted")
        curves[n] = kl.ld_ratio_curve(model, profile, tc, n, grid, "tilted",
                                      budget, substream(stream, j),
                                      denom_samples=10**6)
    return curves


def _three_checks(curves, tc, num):
    """(a) per-n flatness, (b) median error trend, (c) band verdict at the
    largest n."""
    ns = sorted(curves)
    flat = {}
    for n, curve in curves.items():
        ratios = [p.ratio for p in curve.points
                  if math.isfinite(p.ratio.value)]
        flat[n] = (len(ratios) == len(curve.points)
                   and intervals_admit_common_value(ratios, z=3.0))
    a_ok = all(flat.values())
    medians = {n: float(np.median([abs(p.ratio.value - tc.ld_limit.value)
                                   for p in curves[n].points]))
               for n in ns}
    b_ok = all(medians[a] >= medians[b] for a, b in zip(ns, ns[1:]))
    top = curves[ns[-1]]
    c_ok = top.verdict
    detail = (f"(a) flat-in-x per n: {flat}; "
              f"(b) median |ratio - {tc.ld_limit.value:.2f}|: "
              + ", ".join(f"n={n}: {medians[n]:.2f}" for n in ns)
              + f"; (c) n={ns[-1]} band pass fraction {top.pass_fraction:.0%}")
    ok = a_ok and b_ok and c_ok
    criterion_line(num, ok, detail)
    return ok, detail


def test_criterion_4_main_ratio_low_alpha(model15, prof15, tc15):
    """Tilted ratio curves at n in {100, 200, 400}, M = 2.2."""
    curves = _ratio_curves(model15, prof15, tc15, (100, 200, 400),
                           kl.task_stream(SEED, "ld15"))
    ok, detail = _three_checks(curves, tc15, 4)
    assert ok, detail


def test_criterion_5_main_ratio_high_alpha(model25, prof25, tc25):
    """Same three checks on the alpha = 2.5 region c_n sqrt(n) log n."""
    curves = _ratio_curves(model25, prof25, tc25, (100, 200, 400),
                           kl.task_stream(SEED, "ld25"))
    ok, detail = _three_checks(curves, tc25, 5)
    assert ok, detail


def test_criterion_6_block_diagnostics(model15, prof15, tc15):
    """Block-level ratios at x = x_lo(n = 200)."""
    x_lo = kl.build_region(prof15, 200, m_exponent=2.2).x_lo
    scheme = kl.block_scheme(prof15, model15, x_lo, 200)
    diag = kl.block_diagnostics(model15, prof15, tc15, scheme, 4 * 10**5,
                                kl.task_stream(SEED, "blocks"),
                                denom_samples=10**6)
    c_inf = tc15.c_inf.value
    window_ok = 0.5 * c_inf <= diag.window_block_ratio.value <= 1.5 * c_inf
    scores_ok = (diag.head_score.value < 0.1 and diag.tail_score.value < 0.1)
    eta_ok = intervals_admit_common_value([r for _, r in diag.eta_ratios],
                                          z=3.0)
    ok = window_ok and scores_ok and eta_ok
    detail = (f"window ratio {diag.window_block_ratio.value:.2f} vs "
              f"[{0.5 * c_inf:.1f}, {1.5 * c_inf:.1f}]; head score "
              f"{diag.head_score.value:.3f}, tail score "
              f"{diag.tail_score.value:.3f} (< 0.1); eta ratios "
              + ", ".join(f"k={k}: {r.value:.2f}+/-{r.se:.2f}"
                          for k, r in diag.eta_ratios))
    criterion_line(6, ok, detail)
    assert ok, detail


def test_criterion_7_ruin_asymptote(model15, prof15, tc15):
    """Ruin levels vs the power asymptote, horizon stability, iid baseline."""
    stream = kl.task_stream(SEED, "ruin")
    exp = kl.RuinExperiment(mu=1.0, u_grid=(25.0, 50.0, 100.0),
                            horizon_mult=32.0, budget=10**6)
    curve = kl.ruin_curve(model15, prof15, tc15, exp, substream(stream, 0))
    band_ok = all(0.6 <= r.normalized.value <= 1.5 for r in curve.rows)

    horizon_ok = True
    horizon_detail = []
    for j, row in enumerate(curve.rows):
        doubled = kl.estimate_ruin(model15, prof15, exp, row.u,
                                   substream(stream, 10 + j),
                                   horizon_mult=64.0)
        diff = abs(doubled.psi.value - row.psi.value)
        se = math.hypot(row.psi.se, doubled.psi.se)
        horizon_ok = horizon_ok and diff < se
        horizon_detail.append(f"u={row.u:.0f}: |d psi|={diff:.2e} vs se={se:.2e}")

    iid = kl.iid_ruin_curve(kl.ParetoIID(2.5), 1.0, (25.0, 50.0, 100.0),
                            10**6, substream(stream, 20))
    iid_ok = all(abs(r.normalized.value - 1.0) <= 0.25 for r in iid.rows)

    ok = band_ok and horizon_ok and iid_ok
    detail = ("normalized: "
              + ", ".join(f"u={r.u:.0f}: {r.normalized.value:.3f}"
                          for r in curve.rows)
              + f" (band [0.6, 1.5]); horizon: {'; '.join(horizon_detail)}; "
              + "iid normalized: "
              + ", ".join(f"{r.normalized.value:.3f}" for r in iid.rows))
    criterion_line(7, ok, detail)
    assert ok, detail


def test_criterion_8_inequality_dominance():
    """All five bounds dominate empirical frequencies; Petrov reading
    resolved and recorded."""
    stream = kl.task_stream(SEED, "bounds")
    suite = kl.default_suite()
    assert len(suite) >= 12
    report = kl.verify_dominance(suite, 10**5, substream(stream, 0))
    literal, resolved = kl.petrov_reading_cases()
    lit_rows = bounds_mod.verify_case(literal, 10**5, substream(stream, 1))
    res_rows = bounds_mod.verify_case(resolved, 10**5, substream(stream, 1))
    reading_resolved = (not any(r.passed for r in lit_rows)
                        and all(r.passed for r in res_rows))
    ok = report.all_pass() and reading_resolved
    fails = [f"{r.case}@x={r.x:g}" for r in report.failures()]
    detail = (f"{len(report.rows)} dominance rows over {len(suite)} cases"
              + (f"; failures: {fails}" if fails else "; all dominate")
              + "; Petrov verbatim bracket fails, von Bahr-Esseen shift "
                "holds (recorded default: "
              + bounds_mod.PETROV_DEFAULT_READING + ")")
    criterion_line(8, ok, detail)
    assert ok, detail


def _random_valid_model(rng):
    while True:
        kind = int(rng.integers(0, 3))
        if kind == 0:
            a_law = kl.LognormalA(float(rng.uniform(-0.6, -0.15)),
                                  float(rng.uniform(0.15, 0.5)))
        elif kind == 1:
            a_law = kl.UniformA(float(rng.uniform(1.7, 2.4)))
        else:
            shape = float(rng.uniform(0.8, 2.5))
            scale = float(math.exp(-special.digamma(shape))
                          * rng.uniform(0.6, 0.95))
            a_law = kl.GammaScaledA(shape, scale)
        probe = kl.SREModel(a_law, kl.ConstB(1.0))
        try:
            alpha = kl.solve_alpha(probe)
        except (kl.NoRoot, kl.InvalidModel):
            continue
        if not 0.35 <= alpha <= 3.5:
            continue
        bkind = int(rng.integers(0, 4))
        if bkind == 0:
            b_law = kl.ConstB(1.0)
        elif bkind == 1:
            b_law = kl.ExponentialB(1.0)
        elif bkind == 2:
            b_law = kl.NormalB(0.0, 1.0)
        else:
            b_law = kl.ParetoB(alpha + 0.7 + float(rng.uniform(0.0, 1.0)), 1.0)
        model = kl.SREModel(a_law, b_law)
        return model, kl.solve_profile(model)


def test_criterion_9_tilted_unbiasedness():
    """Tilted vs crude agreement on 10 random models x 3 moderate events."""
    stream = kl.task_stream(SEED, "unbiased")
    rng = kl.rng_from(substream(stream, 0))
    n = 64
    worst = 0.0
    rows = []
    for m_idx in range(10):
        model, profile = _random_valid_model(rng)
        d_n = kl.centering(model, profile, n)
        # a pilot ensemble of path sums fixes three event levels whose
        # crude probabilities land in the moderate range [1e-4, 1e-2]
        sums = _path_sums(model, profile, n, 10**5,
                          substream(stream, 200 + m_idx))
        xs = np.quantile(sums - d_n, [1 - 6e-3, 1 - 1.5e-3, 1 - 4e-4])
        for x_idx, x in enumerate(xs):
            crude, _ = kl.estimate_ld_probability(
                model, profile, n, float(x), d_n, "crude", 4 * 10**5,
                substream(stream, 300 + 10 * m_idx + x_idx))
            tilted, _ = kl.estimate_ld_probability(
                model, profile, n, float(x), d_n, "tilted", 2 * 10**5,
                substream(stream, 400 + 10 * m_idx + x_idx))
            z = abs(crude.value - tilted.value) \
                / math.hypot(crude.se, tilted.se)
            worst = max(worst, z)
            rows.append((model.label(), float(x), crude.value,
                         tilted.value, z))
    ok = all(z <= 3.0 for *_, z in rows)
    criterion_line(9, ok, f"30 comparisons, max |z| = {worst:.2f} (limit 3)")
    if not ok:
        bad = [r for r in rows if r[-1] > 3.0]
        pytest.fail(f"tilted/crude disagreement beyond 3 se: {bad}")


def _path_sums(model, profile, n, budget, stream):
    rng = kl.rng_from(stream)
    y = kl.sample_stationary(model, profile, 1e-12, rng, size=budget)
    s = np.zeros(budget)
    for _ in range(n):
        y = model.a_law.sample(rng, budget) * y + model.b_law.sample(rng,
                                                                     budget)
        s += y
    return s


MODEL_CFG = """
model.a_law = lognormal
model.a_mu = -0.25
model.a_sigma2 = 0.3333333333333333
model.b_law = const
model.b_value = 1
seed = 31
"""


def _run_cli(tmp_path, task, cfg_text, tag, workers):
    cfg = tmp_path / f"{tag}.cfg"
    cfg.write_text(cfg_text, encoding="utf-8")
    out = tmp_path / f"{tag}-w{workers}"
    rc = cli_main([task, "--config", str(cfg), "--workers", str(workers),
                   "--out", str(out)])
    assert rc in (0, 2)
    return out


def test_criterion_10_determinism(tmp_path):
    """Same seed, different worker counts: byte-identical CSVs."""
    digests = {}
    jobs = {
        "ld-ratio": (MODEL_CFG + "ld.n = 32\nld.budget = 40000\n"
                     "ld.denom_samples = 100000\nld.grid_points = 4\n",
                     "ld_ratio.csv"),
        "nagaev-iid": ("nagaev.law = pareto\nnagaev.alpha = 1.5\n"
                       "nagaev.n = 50\nnagaev.budget = 200000\n"
                       "nagaev.p_floor = 0.0001\nseed = 31\n",
                       "nagaev_iid.csv"),
        "ruin": (MODEL_CFG + "ruin.u_grid = 30\nruin.budget = 135000\n",
                 "ruin.csv"),
    }
    ok = True
    for task, (cfg_text, csv_name) in jobs.items():
        blobs = [( _run_cli(tmp_path, task, cfg_text, task, w) / csv_name)
                 .read_bytes() for w in (1, 2)]
        digests[task] = hashlib.sha256(blobs[0]).hexdigest()[:12]
        ok = ok and blobs[0] == blobs[1]
    criterion_line(10, ok, "csv sha256/12: " + ", ".join(
        f"{t}={d}" for t, d in digests.items()))
    assert ok, "worker count changed CSV bytes"
