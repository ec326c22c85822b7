"""Memory-one strategies, the round-to-round Markov chain and its stationary utilities.

``p[i]`` is the probability that the defender plays 0 (no signal) after state
``i``; ``q[j]`` is the probability that the attacker plays 0 (quit) when the
defender's current action is ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonErgodic
from .game import PayoffVectors

ERGODIC_TOL = 1e-10


@dataclass(frozen=True)
class DefenderStrategy:
    p: tuple

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        if len(p) != 4:
            raise ValueError(f"defender strategy needs 4 entries, got {len(p)}")
        if any(not 0.0 <= x <= 1.0 for x in p):
            raise ValueError(f"defender strategy entries must lie in [0, 1]: {p}")
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class AttackerStrategy:
    q: tuple

    def __post_init__(self):
        q = tuple(float(x) for x in self.q)
        if len(q) != 2:
            raise ValueError(f"attacker strategy needs 2 entries, got {len(q)}")
        if any(not 0.0 <= x <= 1.0 for x in q):
            raise ValueError(f"attacker strategy entries must lie in [0, 1]: {q}")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class StationaryOutcome:
    v: np.ndarray
    u_d: float
    u_a: float
    ergodic: bool
    method: str  # "determinant" or "eigen"
    crosscheck: float = 0.0  # max |determinant - eigen| over the two utilities


def _as_p(p) -> np.ndarray:
    if isinstance(p, DefenderStrategy):
        p = p.p
    return np.asarray(p, dtype=float)


def _as_q(q) -> np.ndarray:
    if isinstance(q, AttackerStrategy):
        q = q.q
    return np.asarray(q, dtype=float)


def build_transition(p, q) -> np.ndarray:
    """Row-stochastic 4x4 matrix; rows are the previous state, columns the next."""
    p, q = _as_p(p), _as_q(q)
    q1, q2 = q
    m = np.empty((4, 4))
    m[:, 0] = p * q1
    m[:, 1] = p * (1 - q1)
    m[:, 2] = (1 - p) * q2
    m[:, 3] = (1 - p) * (1 - q2)
    return m


def stationary_vector(m, tol=ERGODIC_TOL) -> np.ndarray:
    """Solve ``v M = v`` with ``sum(v) = 1``.

    Raises NonErgodic when ``M^T - I`` has rank below 3, i.e. when more than
    one closed class exists and the stationary vector is not unique.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    a = m.T - np.eye(n)
    rank = np.linalg.matrix_rank(a, tol=tol)
    if rank < n - 1:
        raise NonErgodic(f"stationary distribution not unique (rank {rank} < {n - 1})")
    lhs = np.vstack([a, np.ones(n)])
    rhs = np.zeros(n + 1)
    rhs[-1] = 1.0
    v, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    # clip roundoff-level negatives on transient states
    v = np.where(np.abs(v) < 1e-15, 0.0, v)
    return v / v.sum()


def _det3(a, b, c, d, e, f, g, h, i):
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def zd_matrix(p, q, f) -> np.ndarray:
    """The 4x4 matrix whose determinant is proportional to ``v . f``.

    Built from ``M - I`` by adding the first column into the second and third
    and replacing the fourth by ``f``; the second column is then
    ``(p1 - 1, p2 - 1, p3, p4)`` and depends on the defender alone.
    """
    p, q = _as_p(p), _as_q(q)
    q1, q2 = q
    col1 = p * q1 - np.array([1.0, 0.0, 0.0, 0.0])
    col2 = p - np.array([1.0, 1.0, 0.0, 0.0])
    col3 = (1 - p) * q2 + p * q1 - np.array([1.0, 0.0, 1.0, 0.0])
    return np.column_stack([col1, col2, col3, np.asarray(f, dtype=float)])


def zd_determinant(p, q, f) -> float:
    """Cofactor expansion of the ZD matrix along its last column."""
    m = zd_matrix(p, q, f).tolist()
    total = 0.0
    for i in range(4):
        rows = [m[r] for r in range(4) if r != i]
        minor = _det3(*(x for row in rows for x in row[:3]))
        sign = -1.0 if (i + 3) % 2 else 1.0
        total += sign * m[i][3] * minor
    return total


def stationary_utilities(p, q, payoffs: PayoffVectors, tol=ERGODIC_TOL) -> StationaryOutcome:
    """Per-round stationary utilities of both players.

    Uses the determinant ratio ``D(f) / D(1)`` when ``D(1)`` is clearly
    nonzero, otherwise falls back to the linear-solve stationary vector.
    """
    ones = np.ones(4)
    d_one = zd_determinant(p, q, ones)
    m = build_transition(p, q)
    try:
        v = stationary_vector(m, tol=tol)
    except NonErgodic:
        if abs(d_one) <= tol:
            raise NonErgodic(f"|D(p, q, 1)| = {abs(d_one):.3g}; no unique stationary state")
        raise
    if abs(d_one) > tol:
        u_a = zd_determinant(p, q, payoffs.u_a) / d_one
        u_d = zd_determinant(p, q, payoffs.u_d) / d_one
        method = "determinant"
    else:
        u_a = float(v @ payoffs.u_a)
        u_d = float(v @ payoffs.u_d)
        method = "eigen"
    gap = max(abs(u_a - v @ payoffs.u_a), abs(u_d - v @ payoffs.u_d))
    return StationaryOutcome(v=v, u_d=float(u_d), u_a=float(u_a), ergodic=True,
                             method=method, crosscheck=float(gap))
