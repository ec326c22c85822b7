"""Brute-force oracle versus the closed-form difference maximiser."""

import argparse
import time

from zdaudit.game import SignalPolicy, build_params, deterministic_payoffs, probabilistic_payoffs
from zdaudit.optimizer import brute_force_diff_oracle, default_phi_grid, solve_diff_max

INSTANCES = {
    "defaults (tau=0.6, delta=0.2)": lambda: probabilistic_payoffs(build_params(8, 5, 2, 10, 5),
                                                                 SignalPolicy(0.6, 0.2)),
    "relaxed (1, 0.1, 2, 0.5, 0.4)": lambda: deterministic_payoffs(
        build_params(1, 0.1, 2, 0.5, 0.4, strict_mode=False)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--q-step", type=float, default=0.25)
    args = ap.parse_args()
    for name, make in INSTANCES.items():
        pay = make()
        sol = solve_diff_max(pay, default_phi_grid())
        start = time.perf_counter()
        rep = brute_force_diff_oracle(pay, args.step, args.q_step)
        cells, values, _ = rep.enforcing_cells()
        print(f"{name}")
        print(f"  closed form: value {sol.value:.6g} at phi {sol.phi:.4g}, feasible {sol.feasible}")
        print(f"  oracle: {len(rep.cells)} cells, {len(cells)} enforcing, "
              f"{len(rep.nonergodic_cells)} never ergodic, {time.perf_counter() - start:.1f} s")
        for c, v in sorted(zip(cells.tolist(), values.tolist()), key=lambda cv: -cv[1])[:10]:
            print(f"    p = {[round(x, 4) for x in c]}  u_d - u_a = {v:.6g}")


if __name__ == "__main__":
    main()
