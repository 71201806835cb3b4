"""Large-deviation ratio P(S_n - d_n > x) / (n P(|Y| > x)) across a region.

For independent regularly varying steps this ratio converges to the upper
tail balance p (the Nagaev picture: one big jump).  For the dependent
recurrence the limit is the cluster constant c+ c_inf / (c+ + c-), but the
approach is logarithmic: the script prints both curves so the contrast and
the finite-n gap are visible.  The tilted estimator follows the ratio far
beyond crude Monte Carlo reach.
"""

import numpy as np

import kestenlab as kl
from kestenlab.ldlab import iid_lower_bound

SEED = 11


def main():
    print("=== independent one-sided Pareto(1.5) steps, n = 100")
    law = kl.ParetoIID(1.5)
    n = 100
    grid = np.geomspace(iid_lower_bound(law, n), (n / 2e-4) ** (1 / 1.5), 6)
    curve = kl.nagaev_baseline(law, n, grid, 10**6,
                               kl.task_stream(SEED, "iid"))
    print(f"    target p = {curve.target.value}")
    for p in curve.points:
        print(f"    x = {p.x:10.1f}  ratio = {p.ratio.value:6.3f} "
              f"+/- {p.ratio.se:.3f}")
    print(f"    verdict (80% of points near target): {curve.verdict}")

    print("\n=== recurrence with lognormal gain, unit shift, n = 200")
    model = kl.SREModel(kl.LognormalA(-0.25, 1.0 / 3.0), kl.ConstB(1.0))
    profile = kl.solve_profile(model)
    tc = kl.estimate_constants(model, profile, 200_000,
                               kl.task_stream(SEED, "constants"),
                               rank_window=(1e-4, 1e-3))
    print(f"    limit constant c_inf = {tc.ld_limit}")
    region = kl.build_region(profile, 200, m_exponent=2.2)
    print(f"    region [{region.x_lo:.0f}, {region.x_hi:.3g}]")
    grid = kl.x_grid(region, profile, estimator="tilted", points=6)
    curve = kl.ld_ratio_curve(model, profile, tc, 200, grid, "tilted",
                              50_000, kl.task_stream(SEED, "ld"),
                              denom_samples=200_000)
    for p in curve.points:
        print(f"    x = {p.x:9.3g}  ratio = {p.ratio.value:6.2f} "
              f"+/- {p.ratio.se:5.2f}  ({p.denom_method} denominator, "
              f"ess {p.n_eff:.0f})")
    print(f"    the ratio sits far below the limit {tc.ld_limit.value:.1f} "
          "at every reachable x:")
    print("    the cluster constant is approached only logarithmically in "
          "log x and n.")


if __name__ == "__main__":
    main()
