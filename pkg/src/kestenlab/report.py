"""Report assembly: JSON blocks with a versioned schema, and task CSVs.

All floats are rendered with ``repr`` (shortest round-trip form), so a run
with the same seed produces byte-identical files for any worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

SCHEMA_VERSION = "1.0.0"

REPORT_SCHEMA = {
    "version": SCHEMA_VERSION,
    "blocks": {
        "config": {
            "task": "string", "seed": "integer", "workers": "integer",
            "output_format": "string", "params": "object",
            "model": "string?", "iid_law": "string?",
        },
        "profile": {
            "alpha": "number", "rho": "number", "eps_moment": "number",
            "psi_kind": "string",
            "checks": {
                "neg_log_mean": "boolean", "nonarithmetic": "boolean",
                "nondegenerate_fixed_point": "boolean", "b_moment": "boolean",
            },
        },
        "constants": {
            "c_inf": "estimate", "c_plus": "estimate", "c_minus": "estimate",
            "ld_limit": "estimate", "method_c_inf": "string",
            "method_tails": "string", "rank_window": "array[number]",
        },
        "ld_ratio": {
            "n": "integer", "d_n": "number", "estimator": "string",
            "target": "estimate", "band": "array[number]",
            "pass_fraction": "number", "verdict": "boolean",
            "points": "array[ld_point]",
        },
        "blocks": {
            "scheme": "object", "budget": "integer",
            "window_block_ratio": "estimate", "eta_ratios": "array",
            "head_score": "estimate", "tail_score": "estimate",
            "start_term_ratio": "estimate", "adjacent_joint": "estimate",
            "tail_method": "string",
        },
        "ruin": {
            "band": "array[number]", "slope": "number", "slope_se": "number",
            "verdict": "boolean", "rows": "array[ruin_row]",
        },
        "bounds": {
            "trials": "integer", "all_pass": "boolean",
            "petrov_reading": "string", "rows": "array[bound_row]",
        },
        "estimate": {"value": "number", "se": "number"},
        "ld_point": {
            "x": "number", "p_hat": "estimate", "denom": "estimate",
            "ratio": "estimate", "n_eff": "number", "estimator": "string",
            "denom_method": "string",
        },
        "ruin_row": {
            "u": "number", "mu": "number", "horizon": "integer",
            "budget": "integer", "crossings": "integer", "psi": "estimate",
            "predicted": "number", "normalized": "estimate",
        },
        "bound_row": {
            "case": "string", "inequality": "string", "params": "string",
            "x": "number", "raw_bound": "number", "capped_bound": "number",
            "empirical": "estimate", "passed": "boolean",
        },
    },
}

LD_CSV_COLUMNS = ("n", "x", "estimator", "p_hat", "p_se", "denom", "denom_se",
                  "ratio", "ratio_se", "n_eff", "target", "verdict")
RUIN_CSV_COLUMNS = ("u", "mu", "horizon", "budget", "crossings", "psi_hat",
                    "psi_se", "predicted", "normalized", "verdict")
BOUNDS_CSV_COLUMNS = ("inequality", "params", "x", "raw_bound",
                      "capped_bound", "empirical", "empirical_se", "pass")


def fmt(value) -> str:
    """Deterministic cell rendering; floats via shortest round-trip repr."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def est_dict(e) -> dict:
    return {"value": e.value, "se": e.se}


def profile_block(profile) -> dict:
    return {
        "alpha": profile.alpha,
        "rho": profile.rho,
        "eps_moment": profile.eps_moment,
        "psi_kind": profile.psi_kind,
        "checks": {
            "neg_log_mean": profile.checks.neg_log_mean,
            "nonarithmetic": profile.checks.nonarithmetic,
            "nondegenerate_fixed_point":
                profile.checks.nondegenerate_fixed_point,
            "b_moment": profile.checks.b_moment,
        },
    }


def constants_block(tc) -> dict:
    return {
        "c_inf": est_dict(tc.c_inf),
        "c_plus": est_dict(tc.c_plus),
        "c_minus": est_dict(tc.c_minus),
        "ld_limit": est_dict(tc.ld_limit),
        "method_c_inf": tc.method_c_inf,
        "method_tails": tc.method_tails,
        "rank_window": list(tc.rank_window),
    }


def ld_block(curve) -> dict:
    return {
        "n": curve.n,
        "d_n": curve.d_n,
        "estimator": curve.estimator,
        "target": est_dict(curve.target),
        "band": list(curve.band),
        "pass_fraction": curve.pass_fraction,
        "verdict": curve.verdict,
        "points": [
            {"x": p.x, "p_hat": est_dict(p.p_hat), "denom": est_dict(p.denom),
             "ratio": est_dict(p.ratio), "n_eff": p.n_eff,
             "estimator": p.estimator, "denom_method": p.denom_method}
            for p in curve.points
        ],
    }


def blocks_block(diag) -> dict:
    s = diag.scheme
    return {
        "scheme": {"x": s.x, "n": s.n, "sigma": s.sigma, "n0": s.n0, "m": s.m,
                   "n1": s.n1, "n2": s.n2, "n3": s.n3, "D": s.big_d,
                   "p": s.p, "p1": s.p1, "p3": s.p3},
        "budget": diag.budget,
        "window_block_ratio": est_dict(diag.window_block_ratio),
        "eta_ratios": [{"k": k, "ratio": est_dict(r)}
                       for k, r in diag.eta_ratios],
        "head_score": est_dict(diag.head_score),
        "tail_score": est_dict(diag.tail_score),
        "start_term_ratio": est_dict(diag.start_term_ratio),
        "adjacent_joint": est_dict(diag.adjacent_joint),
        "tail_method": diag.tail_method,
    }


def ruin_block(curve) -> dict:
    return {
        "band": list(curve.band),
        "slope": curve.slope,
        "slope_se": curve.slope_se,
        "verdict": curve.verdict,
        "rows": [
            {"u": r.u, "mu": r.mu, "horizon": r.horizon, "budget": r.budget,
             "crossings": r.crossings, "psi": est_dict(r.psi),
             "predicted": r.predicted, "normalized": est_dict(r.normalized)}
            for r in curve.rows
        ],
    }


def bounds_block(report, petrov_reading: str) -> dict:
    return {
        "trials": report.trials,
        "all_pass": report.all_pass(),
        "petrov_reading": petrov_reading,
        "rows": [
            {"case": r.case, "inequality": r.inequality, "params": r.params,
             "x": r.x, "raw_bound": r.raw_bound,
             "capped_bound": r.capped_bound, "empirical": est_dict(r.empirical),
             "passed": r.passed}
            for r in report.rows
        ],
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_report(report: dict, out_dir: str | Path, name: str) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{name}.json"
    path.write_text(render_json(report), encoding="utf-8")
    return path


def _write_csv(path: Path, columns, rows) -> Path:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def write_ld_csv(curve, out_dir: str | Path, name: str = "ld_ratio") -> Path:
    rows = [
        (curve.n, p.x, p.estimator, p.p_hat.value, p.p_hat.se, p.denom.value,
         p.denom.se, p.ratio.value, p.ratio.se, p.n_eff, curve.target.value,
         curve.verdict)
        for p in curve.points
    ]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return _write_csv(out / f"{name}.csv", LD_CSV_COLUMNS, rows)


def write_ruin_csv(curve, out_dir: str | Path, name: str = "ruin") -> Path:
    rows = [
        (r.u, r.mu, r.horizon, r.budget, r.crossings, r.psi.value, r.psi.se,
         r.predicted, r.normalized.value, curve.verdict)
        for r in curve.rows
    ]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return _write_csv(out / f"{name}.csv", RUIN_CSV_COLUMNS, rows)


def write_bounds_csv(report, out_dir: str | Path, name: str = "bounds") -> Path:
    rows = [
        (r.inequality, r.params, r.x, r.raw_bound, r.capped_bound,
         r.empirical.value, r.empirical.se, r.passed)
        for r in report.rows
    ]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return _write_csv(out / f"{name}.csv", BOUNDS_CSV_COLUMNS, rows)
