"""Equalizer ZD strategies that pin the attacker's stationary utility.

With ``beta = 0`` the defender chooses ``p_hat = alpha * U_A + gamma * 1`` and
the attacker's utility is fixed at ``-gamma / alpha`` whatever he plays.  Given
the free pair ``(p1, p4)`` everything else follows; the resulting ``p2`` and
``p3`` frequently leave ``[0, 1]``, which is reported rather than hidden.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateTarget, ZeroAttackPayoff
from .game import AuditGameParams, PayoffVectors

STATE_NAMES = ("p1", "p2", "p3", "p4")


@dataclass(frozen=True)
class EqualizerStrategy:
    p: np.ndarray  # raw candidate, may leave [0, 1]
    alpha: float
    gamma: float
    predicted_u_a: float
    feasible: bool
    violations: tuple = ()
    clamped: bool = False

    def playable(self) -> np.ndarray:
        """Strategy projected onto [0, 1]^4, for simulation only."""
        return np.clip(self.p, 0.0, 1.0)

    def project(self) -> "EqualizerStrategy":
        if self.feasible:
            return self
        return EqualizerStrategy(
            p=self.playable(), alpha=self.alpha, gamma=self.gamma,
            predicted_u_a=self.predicted_u_a, feasible=False,
            violations=self.violations, clamped=True,
        )


@dataclass(frozen=True)
class ControlRange:
    variable: str
    lo: float
    hi: float
    at_zero: float = field(default=np.nan, repr=False)
    at_one: float = field(default=np.nan, repr=False)

    @property
    def width(self) -> float:
        return self.hi - self.lo


def _attack_scale(payoffs) -> float:
    u_a = payoffs.u_a if isinstance(payoffs, PayoffVectors) else np.asarray(payoffs)
    return float(u_a[3] - u_a[0])


def equalizer_strategy(p1, p4, payoffs: PayoffVectors, atol=1e-12) -> EqualizerStrategy:
    """Solve ``p_hat = alpha * U_A + gamma`` for the given ``(p1, p4)``."""
    u_a = payoffs.u_a
    scale = u_a[3] - u_a[0]
    if scale == 0:
        raise ZeroAttackPayoff("U_A[11] equals U_A[00]; alpha cannot be solved")
    slope = (1 - p1) + p4
    if slope == 0:
        raise DegenerateTarget(f"p4 + 1 - p1 = 0 at (p1, p4) = ({p1}, {p4})")
    alpha = slope / scale
    gamma = p1 - 1 - alpha * u_a[0]
    p_hat = alpha * u_a + gamma
    p = p_hat + np.array([1.0, 1.0, 0.0, 0.0])
    p[0], p[3] = p1, p4  # exact, avoid roundoff on the free coordinates
    bad = tuple(name for name, x in zip(STATE_NAMES, p) if x < -atol or x > 1 + atol)
    return EqualizerStrategy(
        p=p, alpha=float(alpha), gamma=float(gamma),
        predicted_u_a=float(-gamma / alpha) + 0.0, feasible=not bad, violations=bad,
    )


def attacker_utility_formula(p1, p4, payoffs) -> float:
    """Pinned attacker utility ``(1 - p1) / (p4 + 1 - p1) * U_A[11]``.

    ``payoffs`` may be a PayoffVectors or the scalar ``U_A[11]`` directly.
    """
    scale = payoffs if np.isscalar(payoffs) else _attack_scale(payoffs)
    denom = (1 - p1) + p4
    if denom == 0:
        raise DegenerateTarget(f"p4 + 1 - p1 = 0 at (p1, p4) = ({p1}, {p4})")
    return (1 - p1) / denom * scale


def control_gradients(p1, p4, payoffs, params: AuditGameParams | None = None):
    """Partial derivatives of the pinned attacker utility.

    Returns ``(d/dp1, d/dp4, d/dtau)``; the tau derivative needs ``params``
    (it is ``None`` otherwise).
    """
    scale = _attack_scale(payoffs)
    denom = (1 - p1) + p4
    if denom <= 0:
        raise DegenerateTarget(f"p4 + 1 - p1 must be > 0, got {denom}")
    d_p1 = -p4 / denom**2 * scale
    d_p4 = (p1 - 1) / denom**2 * scale
    d_tau = None if params is None else params.s_a * (p1 - 1) / denom
    return d_p1, d_p4, d_tau


def _sweep_endpoints(variable, p1, p4, scale):
    # The only zero of p4 + 1 - p1 on the unit square is (1, 0).  Approaching
    # it along p1 (p4 = 0) the formula is constantly U_A[11]; along p4
    # (p1 = 1) it is constantly 0.
    f = attacker_utility_formula
    if variable == "p1":
        if p4 == 0:
            return scale, scale  # constant for p1 < 1, one-sided limit at 1
        return f(0.0, p4, scale), f(1.0, p4, scale)
    if p1 == 1:
        return 0.0, 0.0  # constant 0 for p4 > 0, one-sided limit at 0
    return f(p1, 0.0, scale), f(p1, 1.0, scale)


def control_range(variable, p1, p4, payoffs, params: AuditGameParams | None = None) -> ControlRange:
    """Range of the pinned utility as one variable sweeps [0, 1], the others fixed.

    The formula is monotone in each variable, so endpoint evaluation gives the
    attained bounds.
    """
    if variable == "tau":
        if params is None:
            raise ValueError("the tau range needs the game parameters")
        denom = (1 - p1) + p4
        share = (1 - p1) / denom if denom != 0 else 0.0
        a0 = share * params.r_a
        a1 = share * (params.r_a - params.s_a)
    elif variable in ("p1", "p4"):
        a0, a1 = _sweep_endpoints(variable, p1, p4, _attack_scale(payoffs))
    else:
        raise ValueError(f"unknown control variable {variable!r}")
    return ControlRange(variable, lo=min(a0, a1), hi=max(a0, a1), at_zero=a0, at_one=a1)


def dominant_variable(p1, p4) -> str:
    """Variable whose gradient has the larger magnitude.

    ``|du/dp4| > |du/dp1|`` exactly when ``1 - p1 > p4``.
    """
    lhs, rhs = 1 - p1, p4
    if np.isclose(lhs, rhs, rtol=0.0, atol=1e-12):
        return "tie"
    return "p4" if lhs > rhs else "p1"


def control_range_and_dominance(p1, p4, payoffs, params: AuditGameParams | None = None):
    ranges = {v: control_range(v, p1, p4, payoffs) for v in ("p1", "p4")}
    if params is not None:
        ranges["tau"] = control_range("tau", p1, p4, payoffs, params)
    return ranges, dominant_variable(p1, p4)
