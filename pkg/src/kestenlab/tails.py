"""Tail constants of the stationary solution.

The positive constant for the B = 1 chain has a closed sampling form
(c_inf = E[(1+Y)**alpha - Y**alpha] / (alpha rho) with Y the stationary
solution of that chain); the signed constants c_plus / c_minus come from a
rank-based fit of x**alpha * P(|Y| > x) over deep order statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from .exceptions import DegenerateTails, InsufficientTail
from .laws import ConstB
from .sre import SREModel, sample_stationary
from .stats import Estimate
from .streams import map_chunks, substream

DEFAULT_RANK_WINDOW = (0.001, 0.01)


@dataclass(frozen=True)
class TailConstants:
    """Estimated tail constants and the large-deviation limit they imply."""

    c_inf: Estimate
    c_plus: Estimate
    c_minus: Estimate
    ld_limit: Estimate
    method_c_inf: str = "goldie-formula"
    method_tails: str = "rank-fit"
    rank_window: tuple[float, float] = DEFAULT_RANK_WINDOW


def goldie_from_draws(draws: np.ndarray, alpha: float, rho: float) -> Estimate:
    """Sample mean of ((1+Y)**alpha - Y**alpha) / (alpha rho) with stderr."""
    y = np.asarray(draws, dtype=float)
    vals = ((1.0 + y) ** alpha - y**alpha) / (alpha * rho)
    return Estimate(float(vals.mean()),
                    float(vals.std(ddof=1) / math.sqrt(vals.size)))


def _goldie_chunk(model, profile, eps_trunc, size, stream):
    y = sample_stationary(model, profile, eps_trunc, stream, size=size)
    vals = ((1.0 + y) ** profile.alpha - y**profile.alpha) / (profile.alpha * profile.rho)
    return vals.size, float(vals.sum()), float((vals**2).sum())


def goldie_c_inf(model: SREModel, profile, nsamples: int, stream,
                 eps_trunc: float = 1e-12, workers: int = 1) -> Estimate:
    """c_inf via stationary draws of the B = 1 chain built on the model's A-law.

    The B = 1 chain is used regardless of the model's own B-law: its
    stationary solution is the perpetuity 1 + A + A A' + ..., whose upper
    tail constant is exactly c_inf.
    """
    if nsamples < 10**4:
        raise ValueError("nsamples must be at least 1e4")
    unit_model = SREModel(model.a_law, ConstB(1.0))
    fn = partial(_goldie_chunk, unit_model, profile, eps_trunc)
    parts = map_chunks(fn, nsamples, stream, workers=workers)
    n = sum(p[0] for p in parts)
    s1 = sum(p[1] for p in parts)
    s2 = sum(p[2] for p in parts)
    mean = s1 / n
    var = max(0.0, (s2 - n * mean * mean) / (n - 1))
    return Estimate(mean, math.sqrt(var / n))


def _one_tail(sorted_desc: np.ndarray, total: int, alpha: float,
              k_lo: int, k_hi: int) -> Estimate:
    """Mean and spread of c_hat(k) = (k/N) * Y_(k)**alpha over the rank window.

    The spread combines the dispersion of c_hat across the window (which
    absorbs slow drift of the tail constant) with the order-statistic noise
    floor mean / sqrt(k_hi): successive order statistics are strongly
    dependent, so a window that happens to drift smoothly would otherwise
    understate the sampling variability of its own mean.
    """
    ks = np.arange(k_lo, k_hi + 1)
    vals = sorted_desc[ks - 1]
    chat = (ks / total) * vals**alpha
    mean = float(chat.mean())
    spread = max(float(chat.std()), mean / math.sqrt(k_hi))
    return Estimate(mean, spread)


def rank_fit_tail(samples: np.ndarray, alpha: float,
                  k_lo_frac: float = DEFAULT_RANK_WINDOW[0],
                  k_hi_frac: float = DEFAULT_RANK_WINDOW[1],
                  ) -> tuple[Estimate, Estimate]:
    """Rank-fit the upper and lower tail constants of a sample.

    Upper tail: c_hat(k) = (k/N) Y_(k)**alpha over order-statistic ranks
    k in [k_lo_frac N, k_hi_frac N]; the lower tail mirrors this on -Y.
    A lower tail with no mass returns an exact zero (nonnegative models);
    an upper-tail window with fewer than 100 positive exceedances raises
    InsufficientTail.
    """
    if not 0.0 < k_lo_frac < k_hi_frac <= 0.05:
        raise ValueError("need 0 < k_lo_frac < k_hi_frac <= 0.05")
    y = np.asarray(samples, dtype=float)
    n = y.size
    k_lo = max(1, int(k_lo_frac * n))
    k_hi = max(k_lo, int(k_hi_frac * n))

    upper_desc = np.sort(y)[::-1]
    if k_hi > n or upper_desc[min(k_hi, n) - 1] <= 0 or k_hi < 100:
        raise InsufficientTail(
            f"fewer than 100 positive exceedances in rank window [{k_lo}, {k_hi}]")
    c_plus = _one_tail(upper_desc, n, alpha, k_lo, k_hi)

    lower_desc = np.sort(-y)[::-1]
    if lower_desc[min(k_hi, n) - 1] <= 0 or k_hi < 100:
        c_minus = Estimate(0.0, 0.0)
    else:
        c_minus = _one_tail(lower_desc, n, alpha, k_lo, k_hi)
    return c_plus, c_minus


def hill_cross_check(samples: np.ndarray, k: int) -> Estimate:
    """Hill estimator on the k upper order statistics, with alpha/sqrt(k) stderr."""
    y = np.asarray(samples, dtype=float)
    n = y.size
    if not 100 <= k <= 0.05 * n:
        raise ValueError(f"k must lie in [100, 0.05 N], got {k} for N = {n}")
    top = np.sort(y)[::-1][:k + 1]
    if top[-1] <= 0:
        raise InsufficientTail("Hill estimator needs k+1 positive order statistics")
    logs = np.log(top[:k]) - math.log(top[k])
    mean_log = logs.mean()
    if mean_log <= 0:
        raise InsufficientTail("degenerate order statistics (constant tail)")
    alpha_hat = 1.0 / mean_log
    return Estimate(float(alpha_hat), float(alpha_hat / math.sqrt(k)))


def ld_limit(c_inf: Estimate, c_plus: Estimate, c_minus: Estimate) -> Estimate:
    """Limit constant c_plus c_inf / (c_plus + c_minus), delta-method stderr."""
    tot = c_plus.value + c_minus.value
    if tot <= 0:
        raise DegenerateTails("c_plus + c_minus <= 0")
    p, m, ci = c_plus.value, c_minus.value, c_inf.value
    value = p * ci / tot
    d_ci = p / tot
    d_p = ci * m / tot**2
    d_m = -ci * p / tot**2
    se = math.sqrt((d_ci * c_inf.se) ** 2 + (d_p * c_plus.se) ** 2
                   + (d_m * c_minus.se) ** 2)
    return Estimate(value, se)


def estimate_constants(model: SREModel, profile, nsamples: int, stream,
                       stationary_sample: np.ndarray | None = None,
                       rank_window: tuple[float, float] = DEFAULT_RANK_WINDOW,
                       eps_trunc: float = 1e-12,
                       workers: int = 1) -> TailConstants:
    """Full constants block: Goldie c_inf, rank-fit c_plus/c_minus, limit.

    ``stationary_sample`` lets the caller reuse an existing sample of the
    model's stationary law for the rank fit; otherwise one is drawn here.
    """
    ci = goldie_c_inf(model, profile, nsamples, substream(stream, 0),
                      eps_trunc=eps_trunc, workers=workers)
    if stationary_sample is None:
        stationary_sample = sample_stationary(
            model, profile, eps_trunc, substream(stream, 1), size=nsamples)
    c_plus, c_minus = rank_fit_tail(stationary_sample, profile.alpha,
                                    rank_window[0], rank_window[1])
    lim = ld_limit(ci, c_plus, c_minus)
    return TailConstants(c_inf=ci, c_plus=c_plus, c_minus=c_minus,
                         ld_limit=lim, rank_window=rank_window)
