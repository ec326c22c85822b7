"""One-shot audit game: parameters, payoff vectors and the sequential equilibrium.

States are ordered ``da = 00, 01, 10, 11`` where ``d = 1`` means the defender
signals (and audits, in the deterministic model) and ``a = 1`` means the
attacker goes on to attack.  ``a = 0`` is quitting.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveParameter, OrderingViolated, PolicyViolated

DETERMINISTIC = "deterministic"
PROBABILISTIC = "probabilistic"


class GameState(enum.IntEnum):
    S00 = 0
    S01 = 1
    S10 = 2
    S11 = 3

    @classmethod
    def from_actions(cls, d: int, a: int) -> "GameState":
        if d not in (0, 1) or a not in (0, 1):
            raise ValueError(f"actions must be 0/1, got d={d}, a={a}")
        return cls(2 * d + a)

    @property
    def d(self) -> int:
        return self.value >> 1

    @property
    def a(self) -> int:
        return self.value & 1

    @property
    def label(self) -> str:
        return f"{self.d}{self.a}"


STATES = tuple(GameState)


@dataclass(frozen=True)
class AuditGameParams:
    """Loss and gain scalars of the audit game.

    t_d: defender loss from an attack that is not audited
    t_m: defender loss from an attack that is audited in time
    c:   audit cost
    r_a: attacker gain from a successful attack
    s_a: attacker loss when audited
    """

    t_d: float
    t_m: float
    c: float
    r_a: float
    s_a: float
    strict_mode: bool = True

    def __post_init__(self):
        for name in ("t_d", "t_m", "c", "r_a", "s_a"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise NonPositiveParameter(f"{name} must be > 0, got {value!r}")
        if self.strict_mode and not self.t_d > self.t_m + self.c:
            raise OrderingViolated(
                f"strict mode requires t_d > t_m + c, got t_d={self.t_d}, "
                f"t_m + c={self.t_m + self.c}"
            )


@dataclass(frozen=True)
class SignalPolicy:
    """Audit probabilities with (tau) and without (delta) a signal."""

    tau: float
    delta: float

    def __post_init__(self):
        if not (0.0 <= self.delta < self.tau <= 1.0):
            raise PolicyViolated(
                f"need 0 <= delta < tau <= 1, got tau={self.tau}, delta={self.delta}"
            )


DETERMINISTIC_POLICY = SignalPolicy(tau=1.0, delta=0.0)


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PayoffVectors:
    u_d: np.ndarray
    u_a: np.ndarray
    model: str = DETERMINISTIC
    policy: SignalPolicy | None = field(default=None, compare=False)

    def __post_init__(self):
        u_d = _frozen(self.u_d)
        u_a = _frozen(self.u_a)
        if u_d.shape != (4,) or u_a.shape != (4,):
            raise ValueError("payoff vectors must have exactly four entries")
        object.__setattr__(self, "u_d", u_d)
        object.__setattr__(self, "u_a", u_a)

    def __eq__(self, other):
        if not isinstance(other, PayoffVectors):
            return NotImplemented
        return np.array_equal(self.u_d, other.u_d) and np.array_equal(self.u_a, other.u_a)

    def __hash__(self):
        return hash((tuple(self.u_d), tuple(self.u_a)))

    @property
    def difference(self) -> np.ndarray:
        """Per-state ``u_d - u_a``."""
        return self.u_d - self.u_a


def build_params(t_d, t_m, c, r_a, s_a, strict_mode=True) -> AuditGameParams:
    return AuditGameParams(float(t_d), float(t_m), float(c), float(r_a), float(s_a),
                           strict_mode=bool(strict_mode))


def default_params() -> AuditGameParams:
    return build_params(8, 5, 2, 10, 5)


def deterministic_payoffs(params: AuditGameParams) -> PayoffVectors:
    p = params
    return PayoffVectors(
        u_d=(0.0, -p.t_d, -p.c, -p.c - p.t_m),
        u_a=(0.0, p.r_a, 0.0, p.r_a - p.s_a),
        model=DETERMINISTIC,
        policy=DETERMINISTIC_POLICY,
    )


def probabilistic_payoffs(params: AuditGameParams, policy: SignalPolicy) -> PayoffVectors:
    """Payoffs when auditing happens with probability tau after a signal and delta otherwise."""
    if not isinstance(policy, SignalPolicy):
        policy = SignalPolicy(*policy)
    p, tau, delta = params, policy.tau, policy.delta
    u_d = (
        -delta * p.c,
        -delta * p.c - (delta * p.t_m + (1 - delta) * p.t_d),
        -tau * p.c,
        -tau * p.c - (tau * p.t_m + (1 - tau) * p.t_d),
    )
    u_a = (0.0, p.r_a - delta * p.s_a, 0.0, p.r_a - tau * p.s_a)
    return PayoffVectors(u_d=u_d, u_a=u_a, model=PROBABILISTIC, policy=policy)


def backward_induction_equilibrium(payoffs: PayoffVectors):
    """Subgame-perfect outcome of one sequential round.

    The attacker moves second and best-responds to each defender action; an
    indifferent attacker attacks.  The defender then picks the action that is
    best against those responses, signalling when indifferent.

    Returns ``(state, responses)`` with ``responses[d]`` the attacker's action.
    """
    u_d, u_a = payoffs.u_d, payoffs.u_a
    responses = {}
    for d in (0, 1):
        quit_pay, attack_pay = u_a[2 * d], u_a[2 * d + 1]
        responses[d] = 1 if attack_pay >= quit_pay else 0
    value = {d: u_d[2 * d + responses[d]] for d in (0, 1)}
    d_star = 1 if value[1] >= value[0] else 0
    return GameState.from_actions(d_star, responses[d_star]), responses
