"""Moment function psi(h) = E A**h, the tail-index equation E A**alpha = 1,
the tilted drift rho = E(A**alpha log A) = psi'(alpha), and the hypothesis
checks behind the power-law tail of the stationary solution."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidModel, NoRoot, NonPositiveRho
from .laws import ConstA, ConstB
from .sre import SREModel
from .stats import Estimate, ls_slope
from .streams import rng_from

EPS_LADDER = (0.5, 0.25, 0.1)
PSI_MC_SAMPLES = 10**6
ALPHA_XTOL = 1e-12
ALPHA_TOL = 1e-10
H_MAX = 64.0


@dataclass(frozen=True)
class ConditionChecks:
    """Pass/fail flags for the power-law tail hypotheses."""

    neg_log_mean: bool            # E log A < 0
    nonarithmetic: bool           # law of log A is nonarithmetic
    nondegenerate_fixed_point: bool   # P(Ax + B = x) < 1 for every x
    b_moment: bool                # E|B|**(alpha + eps) finite

    def all_pass(self) -> bool:
        return (self.neg_log_mean and self.nonarithmetic
                and self.nondegenerate_fixed_point and self.b_moment)

    def failures(self) -> list[str]:
        return [name for name in ("neg_log_mean", "nonarithmetic",
                                  "nondegenerate_fixed_point", "b_moment")
                if not getattr(self, name)]


@dataclass(frozen=True)
class KestenProfile:
    """Solved tail index and drift with the hypothesis checks that back them."""

    alpha: float
    rho: float
    eps_moment: float
    psi_kind: str                 # "closed-form" | "monte-carlo"
    checks: ConditionChecks


def psi(model: SREModel, h: float, method: str = "closed",
        nsamples: int = PSI_MC_SAMPLES, stream=None) -> Estimate:
    """E A**h: exact from the catalog, or a Monte Carlo mean with stderr."""
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    if method == "closed":
        return Estimate(model.a_law.psi(h), 0.0)
    if method == "mc":
        rng = rng_from(stream)
        a = np.asarray(model.a_law.sample(rng, nsamples), dtype=float)
        vals = a**h
        return Estimate(float(vals.mean()),
                        float(vals.std(ddof=1) / math.sqrt(nsamples)))
    raise ValueError(f"unknown psi method '{method}'")


def solve_alpha(model: SREModel, tol: float = ALPHA_TOL,
                xtol: float = ALPHA_XTOL) -> float:
    """Root of psi(h) = 1 on (0, h_hi] by bracketing bisection.

    The bracket top is found by doubling from h = 1 up to 64; uniqueness of
    the positive root follows from convexity of log psi with log psi(0) = 0.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if model.a_law.e_log() >= 0:
        raise InvalidModel(f"E log A = {model.a_law.e_log():g} >= 0")
    hi = 1.0
    while model.a_law.psi(hi) <= 1.0:
        hi *= 2.0
        if hi > H_MAX:
            raise NoRoot(f"psi(h) <= 1 for all h up to {H_MAX:g}")
    lo = 0.0  # psi < 1 just right of 0 since (log psi)'(0) = E log A < 0
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = model.a_law.psi(mid)
        if hi - lo <= xtol and abs(val - 1.0) <= tol:
            return mid
        if val < 1.0:
            lo = mid
        else:
            hi = mid
    raise NoRoot("bisection failed to reach tolerance")


def rho(model: SREModel, alpha: float, method: str = "closed",
        nsamples: int = PSI_MC_SAMPLES, stream=None) -> Estimate:
    """Drift rho = E(A**alpha log A) = psi'(alpha); positive at the solved root."""
    if method == "closed":
        est = Estimate(model.a_law.psi_prime(alpha), 0.0)
    elif method == "mc":
        rng = rng_from(stream)
        a = np.asarray(model.a_law.sample(rng, nsamples), dtype=float)
        vals = a**alpha * np.log(a)
        est = Estimate(float(vals.mean()),
                       float(vals.std(ddof=1) / math.sqrt(nsamples)))
    else:
        raise ValueError(f"unknown rho method '{method}'")
    if est.value <= 0:
        raise NonPositiveRho(f"rho = {est.value:g} <= 0: alpha solve is suspect")
    return est


def pick_eps_moment(model: SREModel, alpha: float) -> tuple[float, bool]:
    """Largest eps in the ladder with psi(alpha+eps) and E|B|**(alpha+eps) finite.

    Returns (eps, ok); ok is False when even the smallest rung fails, in which
    case the smallest rung is reported so the failure is visible in checks.
    """
    for eps in EPS_LADDER:
        if math.isfinite(model.a_law.psi(alpha + eps)) and \
                math.isfinite(model.b_law.abs_moment(alpha + eps)):
            return eps, True
    return EPS_LADDER[-1], False


def basic_checks(model: SREModel) -> dict:
    """The alpha-free hypothesis checks, for reporting when no root exists."""
    const_pair = isinstance(model.a_law, ConstA) and isinstance(model.b_law, ConstB)
    if const_pair:
        a, b = model.a_law.value, model.b_law.value
        degenerate = (a != 1.0) or (b == 0.0)
    else:
        degenerate = False
    return {
        "neg_log_mean": model.a_law.e_log() < 0,
        "nonarithmetic": model.a_law.nonarithmetic,
        "nondegenerate_fixed_point": not degenerate,
    }


def check_conditions(model: SREModel, alpha: float,
                     eps_moment: float) -> ConditionChecks:
    """Evaluate the tail-theorem hypotheses for a catalog model."""
    const_pair = isinstance(model.a_law, ConstA) and isinstance(model.b_law, ConstB)
    if const_pair:
        a = model.a_law.value
        b = model.b_law.value
        # a != 1 pins the fixed point b/(1-a); a == 1, b == 0 fixes every x
        degenerate = (a != 1.0) or (b == 0.0)
    else:
        degenerate = False
    return ConditionChecks(
        neg_log_mean=model.a_law.e_log() < 0,
        nonarithmetic=model.a_law.nonarithmetic,
        nondegenerate_fixed_point=not degenerate,
        b_moment=math.isfinite(model.b_law.abs_moment(alpha + eps_moment)),
    )


def solve_profile(model: SREModel, tol: float = ALPHA_TOL) -> KestenProfile:
    """Solve alpha and rho, pick the moment margin, and run all checks."""
    alpha = solve_alpha(model, tol=tol)
    r = rho(model, alpha)
    eps, _ = pick_eps_moment(model, alpha)
    checks = check_conditions(model, alpha, eps)
    return KestenProfile(alpha=alpha, rho=r.value, eps_moment=eps,
                         psi_kind="closed-form", checks=checks)


@dataclass(frozen=True)
class ExpansionReport:
    """Local behaviour of psi around alpha on a gamma grid."""

    c_bound: float          # max over grid of psi(alpha+g) * exp(-rho g)
    residual_slope: float   # log-log slope of |psi(alpha+g) - 1 - rho g|
    slope_ok: bool          # slope >= 1.9, i.e. the residual is O(g^2)


def psi_expansion_check(model: SREModel, profile: KestenProfile,
                        gamma_grid=None) -> ExpansionReport:
    """Check psi(alpha+g) <= C exp(rho g) and the first-order Taylor residual.

    The reported C is the grid maximum of psi(alpha+g) exp(-rho g), so the
    bound holds by construction; the content is that C stays near 1 and the
    residual decays quadratically (log-log slope >= 1.9).
    """
    if gamma_grid is None:
        top = profile.eps_moment / 2.0
        mags = np.geomspace(top / 64.0, top, 6)
        gamma_grid = np.concatenate([-mags[::-1], mags])
    gamma_grid = np.asarray(gamma_grid, dtype=float)
    if np.abs(gamma_grid).max() > profile.eps_moment / 2.0 + 1e-12:
        raise ValueError("gamma grid exceeds eps_moment / 2")
    vals = np.array([model.a_law.psi(profile.alpha + g) for g in gamma_grid])
    c_bound = float(np.max(vals * np.exp(-profile.rho * gamma_grid)))
    mask = gamma_grid != 0.0
    resid = np.abs(vals[mask] - 1.0 - profile.rho * gamma_grid[mask])
    good = resid > 0
    if int(good.sum()) < 2:
        return ExpansionReport(c_bound=c_bound, residual_slope=math.nan,
                               slope_ok=False)
    slope, _ = ls_slope(np.log(np.abs(gamma_grid[mask][good])), np.log(resid[good]))
    return ExpansionReport(c_bound=c_bound, residual_slope=slope,
                           slope_ok=slope >= 1.9)
