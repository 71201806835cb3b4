"""Estimate the tail constants of a stationary recurrence three ways.

For the unit-shift chain the positive tail constant has the closed sampling
form c_inf = E[(1+Y)**alpha - Y**alpha] / (alpha rho); a rank-based fit of
x**alpha P(Y > x) over deep order statistics gives an independent estimate,
and the Hill estimator cross-checks the tail index itself.  The rank fit
converges slowly from below: the printout shows how the fitted constant
climbs as the window deepens.
"""

import numpy as np

import kestenlab as kl
from kestenlab.ldlab import draw_stationary_sample

SEED = 7
N = 500_000


def main():
    model = kl.SREModel(kl.LognormalA(-0.25, 1.0 / 3.0), kl.ConstB(1.0))
    profile = kl.solve_profile(model)
    stream = kl.master_stream(SEED)
    print(f"model: {model.label()}  alpha = {profile.alpha:.3f}")

    c_inf = kl.goldie_c_inf(model, profile, N, kl.substream(stream, 0))
    print(f"\nclosed-form sampling estimate: c_inf = {c_inf}")

    y = draw_stationary_sample(model, profile, N, kl.substream(stream, 1))
    print(f"\nrank-fit of x^alpha P(Y > x) on {N:.0e} stationary draws:")
    for lo, hi in ((1e-3, 1e-2), (1e-4, 1e-3), (2e-5, 2e-4)):
        c_plus, _ = kl.rank_fit_tail(y, profile.alpha, lo, hi)
        print(f"    window [{lo:g}, {hi:g}] N : c_plus = {c_plus}")
    print("    (the deep-tail limit is the sampling estimate above; the"
          " fitted constant approaches it roughly logarithmically)")

    hill = kl.hill_cross_check(y, 2000)
    print(f"\nHill cross-check at k = 2000: alpha_hat = {hill}")

    c_plus, c_minus = kl.rank_fit_tail(y, profile.alpha, 1e-4, 1e-3)
    lim = kl.ld_limit(c_inf, c_plus, c_minus)
    print(f"\nlarge-deviation limit constant c+ c_inf / (c+ + c-) = {lim}")

    sym = kl.SREModel(model.a_law, kl.NormalB(0.0, 1.0))
    ys = draw_stationary_sample(sym, profile, N, kl.substream(stream, 2))
    cp, cm = kl.rank_fit_tail(ys, profile.alpha)
    print(f"\nsymmetric shift B ~ N(0,1): c_plus = {cp}, c_minus = {cm}"
          f"\n    (balanced tails, so the limit constant halves:"
          f" {kl.ld_limit(c_inf, cp, cm)})")


if __name__ == "__main__":
    main()
