"""Stochastic recurrence models Y_n = A_n Y_{n-1} + B_n and their simulation.

Paths, stationary draws, and the multiplicative chains
Pi_k = A_1 ... A_k and eta_k = Pi_1 + ... + Pi_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidModel, PathOverflow
from .streams import rng_from

# tilted runs can explode; fail loudly well before float overflow
OVERFLOW_LIMIT = np.finfo(float).max / 1e6

DEFAULT_EPS_TRUNC = 1e-12


@dataclass(frozen=True)
class SREModel:
    """Joint law of (A, B): independent within a pair, pairs i.i.d. in time."""

    a_law: object
    b_law: object

    def label(self) -> str:
        return f"A={self.a_law.label()}, B={self.b_law.label()}"


@dataclass(frozen=True)
class PathSample:
    y0: float
    values: np.ndarray        # Y_1 .. Y_n
    partial_sum: float        # left-to-right sum of values


@dataclass(frozen=True)
class ChainSample:
    pi: float                 # A_1 ... A_k
    eta: float                # Pi_1 + ... + Pi_k
    k: int


def sample_pair(model: SREModel, stream) -> tuple[float, float]:
    """One (a, b) draw; advancing the stream is the only side effect."""
    rng = rng_from(stream)
    a = float(model.a_law.sample(rng))
    b = float(model.b_law.sample(rng))
    return a, b


def simulate_path(model: SREModel, y0: float, n: int, stream) -> PathSample:
    """Iterate the recursion n times from y0 (left-to-right summation)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = rng_from(stream)
    values = np.empty(n)
    y = float(y0)
    total = 0.0
    for i in range(n):
        a = float(model.a_law.sample(rng))
        b = float(model.b_law.sample(rng))
        y = a * y + b
        if abs(y) > OVERFLOW_LIMIT:
            raise PathOverflow(f"|Y| exceeded {OVERFLOW_LIMIT:.3g} at step {i + 1}")
        values[i] = y
        total += y
    return PathSample(y0=float(y0), values=values, partial_sum=total)


def burnin_beta(model: SREModel, profile=None) -> float:
    """Truncation exponent beta < alpha with psi(beta) < 1.

    With a profile: beta = alpha/2 for alpha <= 1, else min(1, alpha/2 + 0.25)
    (convexity of psi with psi(0) = psi(alpha) = 1 guarantees psi(beta) < 1).
    Without a profile, falls back to the first beta in 1, 1/2, 1/4, ... that
    contracts.
    """
    if profile is not None:
        alpha = profile.alpha
        beta = 0.5 * alpha if alpha <= 1.0 else min(1.0, 0.5 * alpha + 0.25)
        if model.a_law.psi(beta) < 1.0:
            return beta
        raise InvalidModel(f"psi({beta:g}) >= 1; no contracting exponent")
    beta = 1.0
    for _ in range(12):
        if model.a_law.psi(beta) < 1.0:
            return beta
        beta *= 0.5
    raise InvalidModel("no beta with psi(beta) < 1 found")


def burnin_steps(model: SREModel, profile=None,
                 eps_trunc: float = DEFAULT_EPS_TRUNC) -> int:
    """Smallest K with psi(beta)**K <= eps_trunc."""
    if not 0.0 < eps_trunc < 1.0:
        raise ValueError("eps_trunc must lie in (0, 1)")
    psi_beta = model.a_law.psi(burnin_beta(model, profile))
    return max(1, math.ceil(math.log(eps_trunc) / math.log(psi_beta)))


def sample_stationary(model: SREModel, profile=None,
                      eps_trunc: float = DEFAULT_EPS_TRUNC,
                      stream=None, size=None):
    """Draw from the stationary law by K-step burn-in iteration from 0.

    Truncation bias is documented, not corrected: the result is the law of
    the K-term backward series, with K chosen so psi(beta)**K <= eps_trunc.
    Returns a scalar when size is None, else an array of independent draws.
    """
    rng = rng_from(stream)
    k = burnin_steps(model, profile, eps_trunc)
    m = 1 if size is None else int(size)
    y = np.zeros(m)
    for _ in range(k):
        a = model.a_law.sample(rng, m)
        b = model.b_law.sample(rng, m)
        y = a * y + b
    if not np.isfinite(y).all() or np.abs(y).max(initial=0.0) > OVERFLOW_LIMIT:
        raise PathOverflow("stationary burn-in overflowed")
    return float(y[0]) if size is None else y


def sample_chain(model: SREModel, k: int, stream) -> ChainSample:
    """One realization of (Pi_k, eta_k) from A_1 .. A_k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rng = rng_from(stream)
    a = np.asarray(model.a_law.sample(rng, k))
    pis = np.cumprod(a)
    return ChainSample(pi=float(pis[-1]), eta=float(pis.sum()), k=k)


def chain_eta_array(model: SREModel, k: int, rng: np.random.Generator,
                    size: int) -> np.ndarray:
    """Independent eta_k draws, vectorized over paths."""
    pi = np.ones(size)
    eta = np.zeros(size)
    for _ in range(k):
        pi = pi * model.a_law.sample(rng, size)
        eta += pi
    return eta


def stationary_mean(model: SREModel) -> float:
    """E Y = E B / (1 - E A) when E A < 1 (closed forms from the catalog)."""
    ea = model.a_law.psi(1.0)
    if ea >= 1.0:
        raise InvalidModel(f"E A = {ea:g} >= 1; stationary mean undefined")
    eb = model.b_law.mean()
    if not math.isfinite(eb):
        raise InvalidModel("E|B| is infinite; stationary mean undefined")
    return eb / (1.0 - ea)
