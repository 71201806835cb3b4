"""Simulation laboratory for heavy-tailed stochastic recurrence equations.

Models Y_n = A_n Y_{n-1} + B_n whose stationary solutions have power-law
tails, tools to solve for the tail index and tail constants, Monte Carlo
experiments for the large-deviation ratio of partial sums and for ruin
probabilities, and a toolbox of classical tail inequalities.
"""

from .bounds import (MomentSummary, default_suite, fuk_nagaev, levy_ottaviani,
                     nagaev_sv, petrov_max, petrov_reading_cases, prokhorov,
                     verify_dominance)
from .exceptions import (ConfigError, DegenerateTails, DegenerateWeights,
                         EmptyRegion, HypothesisViolated, InsufficientTail,
                         InvalidModel, KestenLabError, NoRoot, NonPositiveRho,
                         PathOverflow, SchemeInvalid)
from .kesten import (ConditionChecks, KestenProfile, check_conditions,
                     pick_eps_moment, psi, psi_expansion_check, rho,
                     solve_alpha, solve_profile)
from .laws import (ConstA, ConstB, ExponentialB, GammaScaledA, LognormalA,
                   NormalB, ParetoB, ParetoIID, SymmetricParetoIID, UniformA)
from .ldlab import (BlockScheme, LDRatioCurve, LDRegion, RatioEstimate,
                    block_diagnostics, block_scheme, build_region, centering,
                    decompose_summand, estimate_denominator,
                    estimate_ld_probability, ld_ratio_curve, nagaev_baseline,
                    x_grid)
from .ruin import (RuinExperiment, dependence_ratio, estimate_ruin,
                   iid_ruin_curve, ruin_asymptote, ruin_curve)
from .sre import (ChainSample, PathSample, SREModel, sample_chain,
                  sample_pair, sample_stationary, simulate_path,
                  stationary_mean)
from .stats import Estimate
from .streams import master_stream, rng_from, substream, task_stream
from .tails import (TailConstants, estimate_constants, goldie_c_inf,
                    hill_cross_check, ld_limit, rank_fit_tail)

__version__ = "0.1.0"

__all__ = [
    "BlockScheme", "ChainSample", "ConditionChecks", "ConfigError", "ConstA",
    "ConstB", "DegenerateTails", "DegenerateWeights", "EmptyRegion",
    "Estimate", "ExponentialB", "GammaScaledA", "HypothesisViolated",
    "InsufficientTail", "InvalidModel", "KestenLabError", "KestenProfile",
    "LDRatioCurve", "LDRegion", "LognormalA", "MomentSummary", "NoRoot",
    "NonPositiveRho", "NormalB", "ParetoB", "ParetoIID", "PathOverflow",
    "PathSample", "RatioEstimate", "RuinExperiment", "SREModel",
    "SchemeInvalid", "SymmetricParetoIID", "TailConstants", "UniformA",
    "block_diagnostics", "block_scheme", "build_region", "centering",
    "check_conditions", "decompose_summand", "default_suite",
    "dependence_ratio", "estimate_constants", "estimate_denominator",
    "estimate_ld_probability", "estimate_ruin", "fuk_nagaev", "goldie_c_inf",
    "hill_cross_check", "iid_ruin_curve", "ld_limit", "ld_ratio_curve",
    "levy_ottaviani", "master_stream", "nagaev_baseline", "nagaev_sv",
    "petrov_max", "petrov_reading_cases", "pick_eps_moment", "prokhorov",
    "psi", "psi_expansion_check", "rank_fit_tail", "rho", "rng_from",
    "ruin_asymptote", "ruin_curve", "sample_chain", "sample_pair",
    "sample_stationary", "simulate_path", "solve_alpha", "solve_profile",
    "stationary_mean", "substream", "task_stream", "verify_dominance",
    "x_grid",
]
