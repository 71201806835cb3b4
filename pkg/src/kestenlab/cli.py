"""kesten-lab: experiment runner binding the laboratory modules.

``kesten-lab <task> --config FILE [--seed N] [--workers K] [--out DIR]``

Every task first solves the tail profile and runs the hypothesis checks,
then executes its pipeline and writes a JSON report (plus task CSVs).
Exit codes: 0 pass, 2 verdict failure, 1 error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bounds as bounds_mod
from . import report as report_mod
from .config import TASKS, ExperimentConfig, config_echo, load_config
from .exceptions import KestenLabError
from .exceptions import InvalidModel, NoRoot, NonPositiveRho
from .kesten import basic_checks, psi_expansion_check, solve_profile
from .ldlab import (DEFAULT_GRID_POINTS, block_diagnostics, block_scheme,
                    build_region, iid_lower_bound, ld_ratio_curve,
                    nagaev_baseline, x_grid)
from .ruin import RuinExperiment, ruin_curve
from .streams import substream, task_stream
from .tails import estimate_constants

PASS, VERDICT_FAIL, ERROR = 0, 2, 1


def _profile_or_report(cfg, report):
    profile = solve_profile(cfg.model, tol=cfg.params.get("solve.tol", 1e-10))
    report["profile"] = report_mod.profile_block(profile)
    return profile


def _constants(cfg, profile, stream, report):
    nsamples = cfg.params.get("constants.nsamples", 10**6)
    window = (cfg.params.get("constants.window_lo", 0.001),
              cfg.params.get("constants.window_hi", 0.01))
    tc = estimate_constants(cfg.model, profile, nsamples, stream,
                            rank_window=window, workers=cfg.workers)
    report["constants"] = report_mod.constants_block(tc)
    return tc


def run(cfg: ExperimentConfig, out_dir: str) -> int:
    """Execute the configured task; returns the process exit code."""
    report: dict = {
        "schema_version": report_mod.SCHEMA_VERSION,
        "config": config_echo(cfg),
    }
    stream = task_stream(cfg.seed, cfg.task)
    verdict = True
    try:
        if cfg.task == "nagaev-iid":
            law = cfg.iid_law
            n = cfg.params.get("nagaev.n", 100)
            budget = cfg.params.get("nagaev.budget", 10**6)
            delta = cfg.params.get("nagaev.delta", 0.1)
            p_floor = cfg.params.get("nagaev.p_floor", 1e-7)
            b_n = iid_lower_bound(law, n, delta=delta)
            x_hi = (n / p_floor) ** (1.0 / law.alpha)
            grid = np.geomspace(b_n, max(x_hi, b_n * 1.001),
                                cfg.params.get("nagaev.grid_points",
                                               DEFAULT_GRID_POINTS))
            curve = nagaev_baseline(law, n, grid, budget, substream(stream, 0),
                                    workers=cfg.workers)
            report["ld_ratio"] = report_mod.ld_block(curve)
            verdict = curve.verdict
            if cfg.output_format == "csv":
                report_mod.write_ld_csv(curve, out_dir, "nagaev_iid")
        elif cfg.task == "bounds":
            trials = cfg.params.get("bounds.trials", 10**5)
            suite = bounds_mod.default_suite()
            dom = bounds_mod.verify_dominance(suite, trials,
                                              substream(stream, 0),
                                              workers=cfg.workers)
            report["bounds"] = report_mod.bounds_block(
                dom, bounds_mod.PETROV_DEFAULT_READING)
            verdict = dom.all_pass()
            if cfg.output_format == "csv":
                report_mod.write_bounds_csv(dom, out_dir)
        else:
            try:
                profile = _profile_or_report(cfg, report)
            except (NoRoot, InvalidModel, NonPositiveRho):
                # report the alpha-free checks so the failure is named even
                # when no tail index exists
                checks = basic_checks(cfg.model)
                report["profile"] = {"checks": checks}
                report["failed_checks"] = [k for k, ok in checks.items()
                                           if not ok]
                raise
            if cfg.task == "validate":
                expansion = psi_expansion_check(cfg.model, profile)
                report["expansion_check"] = {
                    "c_bound": expansion.c_bound,
                    "residual_slope": expansion.residual_slope,
                    "slope_ok": expansion.slope_ok,
                }
                verdict = profile.checks.all_pass() and expansion.slope_ok
                if not verdict:
                    report["failed_checks"] = profile.checks.failures()
            elif cfg.task == "solve":
                verdict = profile.checks.all_pass()
            elif cfg.task == "constants":
                _constants(cfg, profile, substream(stream, 1), report)
            elif cfg.task == "ld-ratio":
                tc = _constants(cfg, profile, substream(stream, 1), report)
                n = cfg.params.get("ld.n", 200)
                region = build_region(
                    profile, n,
                    m_exponent=cfg.params.get("ld.m_exponent", 2.2),
                    c_n=cfg.params.get("ld.c_n"),
                    s_n=cfg.params.get("ld.s_n"))
                estimator = cfg.params.get("ld.estimator", "tilted")
                grid = x_grid(region, profile, estimator=estimator,
                              points=cfg.params.get("ld.grid_points",
                                                    DEFAULT_GRID_POINTS),
                              tail_scale=tc.c_plus.value + tc.c_minus.value)
                curve = ld_ratio_curve(
                    cfg.model, profile, tc, n, grid, estimator,
                    cfg.params.get("ld.budget", 10**5), substream(stream, 2),
                    denom_samples=cfg.params.get("ld.denom_samples", 10**6),
                    workers=cfg.workers)
                report["region"] = {"x_lo": region.x_lo, "x_hi": region.x_hi,
                                    "alpha_class": region.alpha_class,
                                    "s_n": region.s_n}
                report["ld_ratio"] = report_mod.ld_block(curve)
                verdict = curve.verdict
                if cfg.output_format == "csv":
                    report_mod.write_ld_csv(curve, out_dir)
            elif cfg.task == "blocks":
                tc = _constants(cfg, profile, substream(stream, 1), report)
                n = cfg.params.get("blocks.n", 200)
                x = cfg.params.get("blocks.x")
                if x is None:
                    x = build_region(profile, n).x_lo
                scheme = block_scheme(profile, cfg.model, x, n,
                                      sigma=cfg.params.get("blocks.sigma",
                                                           0.1))
                diag = block_diagnostics(
                    cfg.model, profile, tc, scheme,
                    cfg.params.get("blocks.budget", 2 * 10**5),
                    substream(stream, 2), workers=cfg.workers)
                report["blocks"] = report_mod.blocks_block(diag)
            elif cfg.task == "ruin":
                tc = _constants(cfg, profile, substream(stream, 1), report)
                exp = RuinExperiment(
                    mu=cfg.params.get("ruin.mu", 1.0),
                    u_grid=tuple(cfg.params.get("ruin.u_grid", [25.0, 50.0,
                                                                100.0])),
                    horizon_mult=cfg.params.get("ruin.horizon_mult", 32.0),
                    budget=cfg.params.get("ruin.budget", 10**5))
                curve = ruin_curve(cfg.model, profile, tc, exp,
                                   substream(stream, 2), workers=cfg.workers)
                report["ruin"] = report_mod.ruin_block(curve)
                verdict = curve.verdict
                if cfg.output_format == "csv":
                    report_mod.write_ruin_csv(curve, out_dir)
    except (KestenLabError, ValueError) as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        report_mod.write_report(report, out_dir, f"{cfg.task}_report")
        print(f"error: {exc}", file=sys.stderr)
        return ERROR

    report["verdict"] = verdict
    report_mod.write_report(report, out_dir, f"{cfg.task}_report")
    return PASS if verdict else VERDICT_FAIL


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kesten-lab",
        description="Monte Carlo laboratory for heavy-tailed stochastic "
                    "recurrence equations.")
    parser.add_argument("task", choices=TASKS + ("report-schema",),
                        help="experiment to run (or print the report schema)")
    parser.add_argument("--config", help="flat dotted-key config file")
    parser.add_argument("--seed", type=int, default=None,
                        help="master seed (overrides config)")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (overrides config; env "
                             "KESTEN_LAB_WORKERS sets the default)")
    parser.add_argument("--out", default=".", help="output directory")
    args = parser.parse_args(argv)

    if args.task == "report-schema":
        print(report_mod.render_json(report_mod.REPORT_SCHEMA), end="")
        return PASS

    if args.config is None:
        parser.error("--config is required for experiment tasks")
    try:
        cfg = load_config(args.config, args.task, seed=args.seed,
                          workers=args.workers)
    except KestenLabError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return ERROR
    return run(cfg, args.out)


if __name__ == "__main__":
    sys.exit(main())
