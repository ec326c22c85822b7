"""Reference computations used only by the tests."""

import itertools

import numpy as np

from zdaudit.chain import build_transition
from zdaudit.game import GameState


def eig_stationary(m):
    w, vecs = np.linalg.eig(np.asarray(m).T)
    v = np.real(vecs[:, np.argmin(np.abs(w - 1))])
    return v / v.sum()


def enumerate_equilibrium(payoffs):
    """Brute force over all attacker response maps and both defender actions."""
    u_d, u_a = payoffs.u_d, payoffs.u_a
    stable = []
    for a0, a1 in itertools.product((0, 1), repeat=2):
        ok = True
        for d, a in ((0, a0), (1, a1)):
            best = max(u_a[2 * d], u_a[2 * d + 1])
            if u_a[2 * d + a] != best or (a == 0 and u_a[2 * d + 1] == best):
                ok = False
        if ok:
            stable.append((a0, a1))
    assert len(stable) == 1
    a0, a1 = stable[0]
    outcomes = {(0, a0): u_d[a0], (1, a1): u_d[2 + a1]}
    top = max(outcomes.values())
    d, a = max(k for k, v in outcomes.items() if v == top)
    return GameState.from_actions(d, a)


def asymptotic_sd(p, q, f):
    """Stationary mean and long-run standard deviation of a per-round payoff."""
    m = build_transition(p, q)
    v = eig_stationary(m)
    z = np.linalg.inv(np.eye(4) - m + np.outer(np.ones(4), v))
    fc = np.asarray(f) - v @ f
    var = fc @ np.diag(v) @ (2 * z - np.eye(4)) @ fc
    return float(v @ f), float(np.sqrt(max(var, 0.0)))
