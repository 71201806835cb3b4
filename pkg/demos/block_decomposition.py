"""Head / window / tail decomposition of the summands at one level x.

Each summand splits by lag into a head (lags below n1), the critical window
of width 2m around n0 = log(x)/rho, and a tail (lags up to n3).  The theory
says only the window carries the large-deviation mass as x grows; at
terrestrial x the effective ladder length 1/|log E A| exceeds the window
half-width m, so the measured head share is still large.  The script prints
the scheme, the block-level ratios, and the product-chain ratios that probe
the cluster constant directly.
"""

import kestenlab as kl

SEED = 13


def main():
    model = kl.SREModel(kl.LognormalA(-0.25, 1.0 / 3.0), kl.ConstB(1.0))
    profile = kl.solve_profile(model)
    n = 200
    x = kl.build_region(profile, n, m_exponent=2.2).x_lo
    scheme = kl.block_scheme(profile, model, x, n)
    print(f"x = {x:.1f}, n = {n}")
    print(f"scheme: n0 = {scheme.n0}, m = {scheme.m}, n1 = {scheme.n1}, "
          f"n2 = {scheme.n2}, n3 = {scheme.n3}, D = {scheme.big_d}")
    print(f"block counts: p1 = {scheme.p1}, p = {scheme.p}, p3 = {scheme.p3}")

    tc = kl.estimate_constants(model, profile, 200_000,
                               kl.task_stream(SEED, "constants"),
                               rank_window=(1e-4, 1e-3))
    diag = kl.block_diagnostics(model, profile, tc, scheme, 200_000,
                                kl.task_stream(SEED, "blocks"),
                                denom_samples=500_000)
    c = tc.c_inf.value
    print(f"\ncluster constant c_inf = {tc.c_inf}")
    print(f"window block ratio P(S_1 > x)/(n1 P(Y > x)) = "
          f"{diag.window_block_ratio} (limit: c_inf = {c:.1f})")
    print(f"head score  P(X_1 > x)/(n1 P(Y > x)) = {diag.head_score} "
          "(asymptotically negligible)")
    print(f"tail score  P(Z_1 > x)/(n1 P(Y > x)) = {diag.tail_score} "
          "(asymptotically negligible)")
    print("product-chain ratios P(eta_k Y > x)/(k P(Y > x)):")
    for k, r in diag.eta_ratios:
        print(f"    k = {k:3d}: {r}")
    print(f"start-term ratio P(|Y0| eta_n > x)/(n P(|Y| > x)) = "
          f"{diag.start_term_ratio}")
    print(f"adjacent-block joint tail P(|S_1|>x, |S_2|>x) = "
          f"{diag.adjacent_joint}")
    print("\nat this x the head still dominates the window: the asymptotic")
    print("ordering (window ~ c_inf, head negligible) needs m >> the ladder")
    print("decay length 1/|log E A|, i.e. astronomically large x here.")


if __name__ == "__main__":
    main()
