"""Experiment pipelines and deterministic CSV/JSON emission.

Each pipeline returns ``(summary, rows, warnings)``: a flat dict, a list of
row dicts (all with the same keys) and a list of warning strings.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .control import (attacker_utility_formula, control_gradients, control_range_and_dominance,
                      equalizer_strategy)
from .errors import DegenerateTarget
from .game import (DETERMINISTIC, PROBABILISTIC, STATES, SignalPolicy, backward_induction_equilibrium,
                   probabilistic_payoffs)
from .optimizer import brute_force_diff_oracle, gamma_bounds, recover_strategy, solve_diff_max
from .roc import roc_curve
from .simulator import ATTACKER, CLASSIC, DEFENDER, StrategySpec, play_iterated, resolve

# ---------------------------------------------------------------- formatting


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x) + 0.0
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    if x is None:
        return ""
    if isinstance(x, (list, tuple)):
        return ";".join(fmt(v) for v in x)
    return str(x)


def to_csv(rows) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row[k]) for k in header])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x) + 0.0
        return x if math.isfinite(x) else str(x)
    return x


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def write_outputs(out_dir, files: dict, manifest: dict) -> dict:
    """Write ``{name: text}`` plus ``manifest.json`` carrying their checksums."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    checksums = {}
    for name in sorted(files):
        text = files[name]
        with open(out / name, "w", newline="") as fh:
            fh.write(text)
        checksums[name] = sha256(text)
    manifest = dict(manifest, outputs=checksums, version=__version__)
    with open(out / "manifest.json", "w", newline="") as fh:
        fh.write(to_json(manifest))
    return manifest


def derived_seed(master: int, *key: int) -> int:
    return int(np.random.SeedSequence([master, *key]).generate_state(1)[0])


def linspace(spec) -> np.ndarray:
    lo, hi, steps = spec
    return np.linspace(lo, hi, int(steps))

# ---------------------------------------------------------------- pipelines


def run_payoffs(cfg):
    pay = cfg.payoffs()
    rows = [{"state": s.label, "u_d": pay.u_d[s], "u_a": pay.u_a[s]} for s in STATES]
    return {"model": pay.model}, rows, []


def run_equilibrium(cfg):
    state, responses = backward_induction_equilibrium(cfg.payoffs())
    summary = {"equilibrium": state.label, "model": cfg.model,
               "response_d0": responses[0], "response_d1": responses[1]}
    return summary, [], []


def run_equalize(cfg):
    pay = cfg.payoffs()
    eq = equalizer_strategy(cfg.p1, cfg.p4, pay)
    row = {"p1": cfg.p1, "p4": cfg.p4, "alpha": eq.alpha, "gamma": eq.gamma,
           "predicted_u_a": eq.predicted_u_a}
    row.update({f"p_{i + 1}": eq.p[i] for i in range(4)})
    row.update({"feasible": eq.feasible, "violations": list(eq.violations)})
    warnings = [] if eq.feasible else [f"equalizer not playable: {', '.join(eq.violations)} outside [0, 1]"]
    return {"feasible": eq.feasible, "predicted_u_a": eq.predicted_u_a}, [row], warnings


def run_range(cfg):
    pay = cfg.payoffs()
    params = cfg.params() if cfg.model == PROBABILISTIC else None
    ranges, dominant = control_range_and_dominance(cfg.p1, cfg.p4, pay, params)
    rows = [{"variable": r.variable, "lo": r.lo, "hi": r.hi, "width": r.width} for r in ranges.values()]
    summary = {"dominant": dominant, "p1": cfg.p1, "p4": cfg.p4, "model": cfg.model}
    try:
        summary["u_a"] = attacker_utility_formula(cfg.p1, cfg.p4, pay)
        g = control_gradients(cfg.p1, cfg.p4, pay, params)
        summary.update(du_dp1=g[0], du_dp4=g[1], du_dtau=g[2])
    except DegenerateTarget:
        pass
    return summary, rows, []


def run_optimize(cfg):
    pay = cfg.payoffs()
    grid = cfg.phi_grid or (cfg.phi,)
    rows = []
    for phi in grid:
        b = gamma_bounds(pay, phi)
        p = recover_strategy(pay, phi, b.gamma_min)
        row = {"phi": phi, "gamma_min": b.gamma_min, "gamma_max": b.gamma_max,
               "feasible": b.feasible, "value": -b.gamma_min}
        row.update({f"p_{i + 1}": p[i] for i in range(4)})
        row.update({"binding_lower_state": STATES[b.binding_lower].label,
                    "binding_upper_state": STATES[b.binding_upper].label})
        rows.append(row)
    sol = solve_diff_max(pay, grid)
    summary = {"feasible": sol.feasible, "phi": sol.phi, "gamma_min": sol.gamma,
               "gamma_max": sol.gamma_max, "value": sol.value, "p": sol.p}
    warnings = [] if sol.feasible else ["no phi in the grid gives a playable strategy; "
                                        "closed-form gamma_min reported anyway"]
    return summary, rows, warnings


def run_oracle(cfg):
    pay = cfg.payoffs()
    report = brute_force_diff_oracle(pay, cfg.oracle_p_step, cfg.oracle_q_step)
    cells, values, spreads = report.enforcing_cells()
    rows = [{"p_1": c[0], "p_2": c[1], "p_3": c[2], "p_4": c[3], "value": v, "spread": s}
            for c, v, s in zip(cells, values, spreads)]
    closed = solve_diff_max(pay, cfg.phi_grid or (cfg.phi,))
    best = report.best()
    summary = {
        "n_cells": len(report.cells), "n_enforcing": len(rows),
        "n_never_ergodic": len(report.nonergodic_cells),
        "best_value": None if best is None else best[1],
        "closed_form_value": closed.value, "closed_form_feasible": closed.feasible,
        "closed_form_found": bool(np.any(np.abs(values - closed.value) <= 1e-6)),
    }
    warnings = [] if rows else ["no grid cell enforces a fixed u_d - u_a"]
    return summary, rows, warnings


def _tournament(cfg, defender, attacker, payoffs, seed):
    return play_iterated(defender, attacker, payoffs, cfg.rounds, cfg.repetitions, seed,
                         initial_state=int(cfg.initial_state, 2),
                         wsls_threshold=cfg.wsls_threshold)


def _clamp_warning(result):
    if result.config["defender_clamped"]:
        raw = result.config["defender_info"]["raw_p"]
        return [f"defender {result.config['defender']} clamped to [0, 1] from {fmt(raw)}"]
    return []


def run_simulate(cfg):
    pay = cfg.payoffs()
    d, a = cfg.strategies()
    res = _tournament(cfg, d, a, pay, cfg.seed)
    rows = [{"round": t + 1, "mean_u_d": ud, "mean_u_a": ua, "mean_diff": ud - ua}
            for t, (ud, ua) in enumerate(zip(res.mean_u_d_per_round, res.mean_u_a_per_round))]
    summary = {"defender": res.config["defender"], "attacker": res.config["attacker"],
               "mean_u_d": res.mean_u_d, "mean_u_a": res.mean_u_a,
               "fingerprint": res.fingerprint(), "seed": cfg.seed}
    return summary, rows, _clamp_warning(res)


def run_roc(cfg):
    pay = cfg.payoffs()
    d, a = cfg.strategies()
    res = _tournament(cfg, d, a, pay, cfg.seed)
    curve = roc_curve(res, standard_labels=cfg.standard_labels)
    rows = [{"threshold": t, "fpr": f, "tpr": r}
            for t, f, r in zip(curve.thresholds, curve.fpr, curve.tpr)]
    summary = {"auc": curve.auc, "skipped_thresholds": list(curve.skipped),
               "defender": res.config["defender"], "attacker": res.config["attacker"]}
    return summary, rows, _clamp_warning(res)

# ---------------------------------------------------------------- figures


def _utility_sweeps(pay, sweep_var, axis, fixed_values):
    rows = []
    for fixed in fixed_values:
        for x in axis:
            p1, p4 = (x, fixed) if sweep_var == "p1" else (fixed, x)
            try:
                u = attacker_utility_formula(p1, p4, pay)
                eq = equalizer_strategy(p1, p4, pay)
                feasible = eq.feasible
            except DegenerateTarget:
                u, feasible = float("nan"), False
            rows.append({sweep_var: x, "p4" if sweep_var == "p1" else "p1": fixed,
                         "u_a": u, "feasible": feasible})
    return rows


def _tau_sweep(cfg, axis, vary, fixed_values):
    params = cfg.params()
    rows = []
    for fixed in fixed_values:
        p1, p4 = (fixed, cfg.p4) if vary == "p1" else (cfg.p1, fixed)
        for tau in axis:
            u = attacker_utility_formula(p1, p4, params.r_a - tau * params.s_a)
            rows.append({"tau": tau, "p1": p1, "p4": p4, "u_a": u})
    return rows


def _figure_defenders(zd_spec):
    return [("ZD", zd_spec)] + [(k, StrategySpec(DEFENDER, k)) for k in CLASSIC]


def _figure_attackers():
    return [(k, StrategySpec(ATTACKER, k)) for k in CLASSIC]


def _panel_grid(cfg, pay, defenders, fig_id):
    """Play every defender against every attacker baseline.

    Returns ``{defender: {attacker: TournamentResult}}`` and warnings.
    """
    results, warnings = {}, []
    for i, (dname, dspec) in enumerate(defenders):
        resolved = resolve(dspec, pay, cfg.wsls_threshold)
        results[dname] = {}
        for j, (aname, aspec) in enumerate(_figure_attackers()):
            res = _tournament(cfg, resolved, aspec, pay, derived_seed(cfg.seed, fig_id, i, j))
            results[dname][aname] = res
        if resolved.clamped:
            warnings.append(f"fig{fig_id}: {dname} defender clamped to [0, 1] from "
                            f"{fmt(resolved.info['raw_p'])}")
    return results, warnings


def _per_round_table(results, metric):
    rows = []
    attackers = list(next(iter(results.values())).keys())
    for dname, by_att in results.items():
        table = []
        series = {a: metric(by_att[a]) for a in attackers}
        for t in range(len(next(iter(series.values())))):
            row = {"round": t + 1}
            row.update({a: series[a][t] for a in attackers})
            table.append(row)
        rows.append((dname, table))
    return rows


def emit_figure_data(cfg):
    """Figure-ready tables keyed by file name, plus warnings."""
    files, warnings = {}, []
    det = cfg.payoffs(DETERMINISTIC)
    prob = cfg.payoffs(PROBABILISTIC)
    fixed = cfg.fixed_values

    # attacker utility vs p1 / p4, deterministic and probabilistic; tau sweeps
    files["fig3_p1.csv"] = to_csv(_utility_sweeps(det, "p1", linspace(cfg.sweep_p1), fixed))
    files["fig3_p4.csv"] = to_csv(_utility_sweeps(det, "p4", linspace(cfg.sweep_p4), fixed))
    files["fig4_p1.csv"] = to_csv(_utility_sweeps(prob, "p1", linspace(cfg.sweep_p1), fixed))
    files["fig4_p4.csv"] = to_csv(_utility_sweeps(prob, "p4", linspace(cfg.sweep_p4), fixed))
    files["fig4_tau_by_p1.csv"] = to_csv(_tau_sweep(cfg, linspace(cfg.sweep_tau), "p1", fixed))
    files["fig4_tau_by_p4.csv"] = to_csv(_tau_sweep(cfg, linspace(cfg.sweep_tau), "p4", fixed))

    # tournaments in the deterministic model
    zd_eq = StrategySpec(DEFENDER, "zd_equalizer", cfg.zd_equalizer)
    det_results, w = _panel_grid(cfg, det, _figure_defenders(zd_eq), 5)
    warnings += w
    for dname, table in _per_round_table(det_results, lambda r: r.mean_u_a_per_round):
        files[f"fig5_{dname}.csv"] = to_csv(table)
    for aname in CLASSIC:
        rows = []
        for dname, by_att in det_results.items():
            curve = roc_curve(by_att[aname], standard_labels=cfg.standard_labels)
            for t, f, r in zip(curve.thresholds, curve.fpr, curve.tpr):
                rows.append({"defender": dname, "threshold": t, "fpr": f, "tpr": r, "auc": curve.auc})
            if curve.fpr.size == 0:
                rows.append({"defender": dname, "threshold": float("nan"), "fpr": float("nan"),
                             "tpr": float("nan"), "auc": curve.auc})
        files[f"fig6_{aname}.csv"] = to_csv(rows)

    # closed-form optimum over (tau, delta)
    params = cfg.params()

    def neg_gamma(tau, delta):
        b = gamma_bounds(probabilistic_payoffs(params, SignalPolicy(tau, delta)), cfg.phi)
        return -b.gamma_min + 0.0, b.gamma_max, b.feasible

    surface = []
    for tau in linspace(cfg.sweep_tau):
        for delta in linspace(cfg.sweep_delta):
            if not delta < tau:
                continue
            v, gmax, ok = neg_gamma(tau, delta)
            surface.append({"tau": tau, "delta": delta, "neg_gamma_min": v, "gamma_max": gmax,
                            "feasible": ok})
    files["fig7_surface.csv"] = to_csv(surface)
    gap_rows = []
    for tau in linspace((cfg.slice_gap, 1.0, cfg.sweep_tau[2])):
        delta = tau - cfg.slice_gap
        v, gmax, ok = neg_gamma(tau, delta)
        gap_rows.append({"tau": tau, "delta": delta, "neg_gamma_min": v, "feasible": ok})
    files["fig7_slice_gap.csv"] = to_csv(gap_rows)
    ratio_rows = []
    for tau in linspace(cfg.sweep_tau)[1:]:
        delta = cfg.slice_ratio * tau
        v, gmax, ok = neg_gamma(tau, delta)
        ratio_rows.append({"tau": tau, "delta": delta, "neg_gamma_min": v, "feasible": ok})
    files["fig7_slice_ratio.csv"] = to_csv(ratio_rows)
    if not any(r["feasible"] for r in surface):
        warnings.append(f"fig7: no (tau, delta) cell is feasible at phi={fmt(cfg.phi)}; "
                        "closed-form values emitted with feasible=false")

    # u_d - u_a tournaments in the probabilistic model
    zd_diff = StrategySpec(DEFENDER, "zd_diffmax", (cfg.phi,))
    prob_results, w = _panel_grid(cfg, prob, _figure_defenders(zd_diff), 8)
    warnings += w
    for dname, table in _per_round_table(prob_results,
                                         lambda r: r.mean_u_d_per_round - r.mean_u_a_per_round):
        files[f"fig8_{dname}.csv"] = to_csv(table)
    return files, warnings

