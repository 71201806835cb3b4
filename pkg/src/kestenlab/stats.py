"""Value-with-uncertainty container and small statistical helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Estimate:
    """A point value with a standard error (0 for exact quantities)."""

    value: float
    se: float = 0.0

    def interval(self, z: float = 3.0) -> tuple[float, float]:
        return self.value - z * self.se, self.value + z * self.se

    def __str__(self) -> str:
        return f"{self.value:.6g} +/- {self.se:.3g}"


def mean_estimate(x: np.ndarray) -> Estimate:
    x = np.asarray(x, dtype=float)
    n = x.size
    se = float(x.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return Estimate(float(x.mean()), se)


def binomial_estimate(hits: int, trials: int) -> Estimate:
    p = hits / trials
    return Estimate(p, math.sqrt(p * (1.0 - p) / trials))


def scaled(est: Estimate, c: float) -> Estimate:
    return Estimate(c * est.value, abs(c) * est.se)


def ratio_estimate(num: Estimate, den: Estimate) -> Estimate:
    """Delta-method ratio of independent estimates."""
    if den.value == 0.0:
        return Estimate(math.inf, math.inf)
    r = num.value / den.value
    rel2 = 0.0
    if num.value != 0.0:
        rel2 += (num.se / num.value) ** 2
    rel2 += (den.se / den.value) ** 2
    return Estimate(r, abs(r) * math.sqrt(rel2))


def combined_se(a: Estimate, b: Estimate) -> float:
    return math.hypot(a.se, b.se)


def interval_intersects(est: Estimate, lo: float, hi: float, z: float = 3.0) -> bool:
    a, b = est.interval(z)
    return a <= hi and b >= lo


def intervals_admit_common_value(estimates, z: float = 3.0) -> bool:
    """True when one constant lies inside every z-sigma interval."""
    los = [e.interval(z)[0] for e in estimates]
    his = [e.interval(z)[1] for e in estimates]
    return max(los) <= min(his)


def ls_slope(x, y) -> tuple[float, float]:
    """Least-squares slope of y on x with its standard error."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    xm = x - x.mean()
    sxx = float((xm**2).sum())
    slope = float((xm * y).sum() / sxx)
    resid = y - y.mean() - slope * xm
    if n > 2:
        se = math.sqrt(float((resid**2).sum()) / (n - 2) / sxx)
    else:
        se = 0.0
    return slope, se


def kish_ess(weight_sum: float, weight_sq_sum: float) -> float:
    """Kish effective sample size from the first two weight moments."""
    if weight_sq_sum <= 0.0:
        return 0.0
    return weight_sum**2 / weight_sq_sum
