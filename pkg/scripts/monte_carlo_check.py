"""Simulated mean utilities against stationary values, in standard errors.

The long-run variance of a per-round payoff ``f`` comes from the fundamental
matrix ``Z = (I - M + 1 v^T)^-1``: ``sigma^2 = fc^T diag(v) (2Z - I) fc`` with
``fc = f - v.f``.
"""

import argparse

import numpy as np

from zdaudit.chain import build_transition, stationary_utilities
from zdaudit.game import default_params, deterministic_payoffs
from zdaudit.simulator import ATTACKER, DEFENDER, StrategySpec, play_iterated


def long_run_sd(p, q, f, v):
    m = build_transition(p, q)
    z = np.linalg.inv(np.eye(4) - m + np.outer(np.ones(4), v))
    fc = f - v @ f
    return float(np.sqrt(fc @ np.diag(v) @ (2 * z - np.eye(4)) @ fc))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--rounds", type=int, default=50_000)
    ap.add_argument("--pair-seed", type=int, default=0)
    args = ap.parse_args()
    pay = deterministic_payoffs(default_params())
    rng = np.random.default_rng(args.pair_seed)
    print(f"{'pair':>4} {'sim u_a':>9} {'stat u_a':>9} {'z':>6} {'sim u_d':>9} {'stat u_d':>9} {'z':>6}")
    zs = []
    for i in range(args.pairs):
        p, q = rng.uniform(0.1, 0.9, 4), rng.uniform(0.1, 0.9, 2)
        res = play_iterated(StrategySpec(DEFENDER, "mixed", tuple(p)),
                            StrategySpec(ATTACKER, "mixed", tuple(q)),
                            pay, rounds=args.rounds, repetitions=1, seed=i)
        st = stationary_utilities(p, q, pay)
        line = [f"{i:>4}"]
        for sim, exact, f in ((res.mean_u_a, st.u_a, pay.u_a), (res.mean_u_d, st.u_d, pay.u_d)):
            z = (sim - exact) / (long_run_sd(p, q, f, st.v) / np.sqrt(args.rounds))
            zs.append(z)
            line += [f"{sim:9.4f}", f"{exact:9.4f}", f"{z:6.2f}"]
        print(" ".join(line))
    zs = np.array(zs)
    print(f"z mean {zs.mean():.3f}, z sd {zs.std(ddof=1):.3f}, max |z| {np.abs(zs).max():.2f}")


if __name__ == "__main__":
    main()
