"""Round-by-round iterated play between a defender and an attacker.

Every strategy here is reduced to a memory-one table before play:

* defender: ``P0[s]``, probability of ``d = 0`` after previous state ``s``;
* attacker: ``Q0[s, d]``, probability of ``a = 0`` after previous state ``s``
  once the current defender action ``d`` has been observed.

Mixed strategies, ZD strategies and the five classic baselines all fit this
shape, so a single stepping loop handles every pairing.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .chain import AttackerStrategy, DefenderStrategy
from .control import equalizer_strategy
from .errors import AuditGameError, InvalidStrategy
from .game import STATES, PayoffVectors
from .optimizer import recover_strategy, solve_diff_max

DEFENDER = "defender"
ATTACKER = "attacker"
CLASSIC = ("ALL0", "ALL1", "Rand", "TFT", "WSLS")
KINDS = ("mixed", "zd_equalizer", "zd_diffmax") + CLASSIC


@dataclass(frozen=True)
class StrategySpec:
    role: str
    kind: str
    args: tuple = ()
    clamp: bool = True  # ZD kinds only: allow projecting infeasible vectors onto [0, 1]

    def __post_init__(self):
        if self.role not in (DEFENDER, ATTACKER):
            raise InvalidStrategy(f"unknown role {self.role!r}")
        if self.kind not in KINDS:
            raise InvalidStrategy(f"unknown strategy kind {self.kind!r}")
        object.__setattr__(self, "args", tuple(float(x) for x in self.args))
        if self.kind == "mixed":
            try:
                if self.role == DEFENDER:
                    DefenderStrategy(self.args)
                else:
                    AttackerStrategy(self.args)
            except ValueError as exc:
                raise InvalidStrategy(str(exc)) from exc
        if self.kind.startswith("zd") and self.role != DEFENDER:
            raise InvalidStrategy("ZD strategies are only defined for the defender")

    @property
    def name(self) -> str:
        if self.kind in CLASSIC:
            return self.kind
        if self.kind == "zd_equalizer" or self.kind == "zd_diffmax":
            return "ZD"
        return "mixed(" + ",".join(f"{x:g}" for x in self.args) + ")"

    @classmethod
    def parse(cls, text: str, role: str) -> "StrategySpec":
        """Parse ``ALL1``, ``mixed:0.5,0.5,0.5,0.5``, ``zd_equalizer:0.9,0.5`` or ``zd_diffmax:-1``."""
        kind, _, rest = text.strip().partition(":")
        kind = kind.strip()
        lookup = {k.lower(): k for k in KINDS}
        lookup["zd"] = "zd_equalizer"
        if kind.lower() not in lookup:
            raise InvalidStrategy(f"unknown strategy {text!r}")
        args = tuple(float(x) for x in rest.split(",")) if rest.strip() else ()
        return cls(role=role, kind=lookup[kind.lower()], args=args)


@dataclass(frozen=True)
class ResolvedStrategy:
    role: str
    name: str
    table: np.ndarray
    clamped: bool = False
    info: dict = field(default_factory=dict, compare=False)


def _wsls_next(own_action, own_payoff, threshold):
    return own_action if own_payoff > threshold else 1 - own_action


def classic_strategies(kind: str, role: str, payoffs: PayoffVectors, threshold=None) -> np.ndarray:
    """Memory-one table for a classic baseline.

    ALL0 never signals / never attacks, ALL1 always does, Rand flips a fair
    coin.  A TFT defender copies the attacker's previous action; a TFT attacker
    copies the defender's current one, which he sees before moving.  WSLS keeps
    its previous action when the previous payoff beat ``threshold`` (default:
    mean of the player's four state payoffs) and switches otherwise.
    """
    if role == DEFENDER:
        table = np.empty(4)
        mean = float(np.mean(payoffs.u_d)) if threshold is None else threshold
        for s in STATES:
            if kind == "ALL0":
                d = 0
            elif kind == "ALL1":
                d = 1
            elif kind == "Rand":
                table[s] = 0.5
                continue
            elif kind == "TFT":
                d = s.a
            elif kind == "WSLS":
                d = _wsls_next(s.d, payoffs.u_d[s], mean)
            else:
                raise InvalidStrategy(f"{kind!r} is not a classic strategy")
            table[s] = 1.0 - d
        return table
    if role == ATTACKER:
        table = np.empty((4, 2))
        mean = float(np.mean(payoffs.u_a)) if threshold is None else threshold
        for s in STATES:
            for d in (0, 1):
                if kind == "ALL0":
                    a = 0
                elif kind == "ALL1":
                    a = 1
                elif kind == "Rand":
                    table[s, d] = 0.5
                    continue
                elif kind == "TFT":
                    a = d
                elif kind == "WSLS":
                    a = _wsls_next(s.a, payoffs.u_a[s], mean)
                else:
                    raise InvalidStrategy(f"{kind!r} is not a classic strategy")
                table[s, d] = 1.0 - a
        return table
    raise InvalidStrategy(f"unknown role {role!r}")


def resolve(spec: StrategySpec, payoffs: PayoffVectors, wsls_threshold=None) -> ResolvedStrategy:
    """Turn a spec into a concrete probability table for the given payoffs."""
    if spec.kind in CLASSIC:
        table = classic_strategies(spec.kind, spec.role, payoffs, wsls_threshold)
        return ResolvedStrategy(spec.role, spec.name, table)
    if spec.kind == "mixed":
        if spec.role == DEFENDER:
            return ResolvedStrategy(spec.role, spec.name, np.array(spec.args))
        return ResolvedStrategy(spec.role, spec.name, np.tile(np.array(spec.args), (4, 1)))
    try:
        if spec.kind == "zd_equalizer":
            if len(spec.args) != 2:
                raise InvalidStrategy("zd_equalizer needs (p1, p4)")
            eq = equalizer_strategy(spec.args[0], spec.args[1], payoffs)
            p, feasible = eq.p, eq.feasible
            info = {"predicted_u_a": eq.predicted_u_a, "violations": list(eq.violations)}
        else:
            if len(spec.args) != 1:
                raise InvalidStrategy("zd_diffmax needs (phi,)")
            sol = solve_diff_max(payoffs, [spec.args[0]])
            p = recover_strategy(payoffs, sol.phi, sol.gamma)
            feasible = sol.feasible
            info = {"predicted_diff": sol.value, "gamma_min": sol.gamma,
                    "gamma_max": sol.gamma_max}
    except InvalidStrategy:
        raise
    except AuditGameError as exc:
        raise InvalidStrategy(f"cannot resolve {spec.kind}: {exc}") from exc
    info["raw_p"] = [float(x) for x in p]
    info["feasible"] = bool(feasible)
    clamped = False
    if not feasible or np.any((p < 0) | (p > 1)):
        if not spec.clamp:
            raise InvalidStrategy(f"{spec.kind} strategy {p} is not playable and clamping is off")
        clamped = bool(np.any((p < 0) | (p > 1)))
    return ResolvedStrategy(spec.role, spec.name, np.clip(p, 0.0, 1.0), clamped=clamped, info=info)


@dataclass(frozen=True)
class RoundRecord:
    round: int
    prev_state: int
    d: int
    pi: float
    a: int
    pay_d: float
    pay_a: float


@dataclass
class TournamentResult:
    prev_state: np.ndarray  # (repetitions, rounds)
    d: np.ndarray
    a: np.ndarray
    pi: np.ndarray  # probability of signalling used in that round
    pay_d: np.ndarray
    pay_a: np.ndarray
    seed: int
    config: dict = field(default_factory=dict)

    @property
    def state(self) -> np.ndarray:
        return 2 * self.d + self.a

    @property
    def mean_u_d_per_round(self) -> np.ndarray:
        return self.pay_d.mean(axis=0)

    @property
    def mean_u_a_per_round(self) -> np.ndarray:
        return self.pay_a.mean(axis=0)

    @property
    def mean_u_d(self) -> float:
        return float(self.pay_d.mean())

    @property
    def mean_u_a(self) -> float:
        return float(self.pay_a.mean())

    def record(self, rep: int, t: int) -> RoundRecord:
        return RoundRecord(
            round=t, prev_state=int(self.prev_state[rep, t]), d=int(self.d[rep, t]),
            pi=float(self.pi[rep, t]), a=int(self.a[rep, t]),
            pay_d=float(self.pay_d[rep, t]), pay_a=float(self.pay_a[rep, t]),
        )

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        for arr in (self.prev_state, self.d, self.a, self.pi, self.pay_d, self.pay_a):
            h.update(np.ascontiguousarray(arr).tobytes())
        return h.hexdigest()


def repetition_rngs(seed: int, repetitions: int):
    """Independent per-repetition generators derived from one master seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(repetitions)]


def _play_one(def_table, att_table, u_d, u_a, uniforms, initial_state):
    rounds = len(uniforms)
    prev = np.empty(rounds, dtype=np.int8)
    d_out = np.empty(rounds, dtype=np.int8)
    a_out = np.empty(rounds, dtype=np.int8)
    p0 = def_table.tolist()
    q0 = att_table.tolist()
    s = initial_state
    for t, (u1, u2) in enumerate(uniforms.tolist()):
        prev[t] = s
        d = 0 if u1 < p0[s] else 1
        a = 0 if u2 < q0[s][d] else 1
        d_out[t] = d
        a_out[t] = a
        s = 2 * d + a
    state = 2 * d_out.astype(int) + a_out
    pi = 1.0 - np.asarray(def_table)[prev]
    return prev, d_out, a_out, pi, u_d[state], u_a[state]


def play_iterated(defender, attacker, payoffs: PayoffVectors, rounds=50, repetitions=50,
                  seed=0, initial_state=0, wsls_threshold=None) -> TournamentResult:
    """Simulate ``repetitions`` independent matches of ``rounds`` rounds each.

    ``defender`` and ``attacker`` are StrategySpec or ResolvedStrategy
    instances.  The state before the first round is ``initial_state`` (00 by
    default).
    """
    if rounds < 1 or repetitions < 1:
        raise ValueError("rounds and repetitions must be >= 1")
    dres = defender if isinstance(defender, ResolvedStrategy) else resolve(defender, payoffs, wsls_threshold)
    ares = attacker if isinstance(attacker, ResolvedStrategy) else resolve(attacker, payoffs, wsls_threshold)
    if dres.role != DEFENDER or ares.role != ATTACKER:
        raise InvalidStrategy("expected a defender strategy and an attacker strategy")
    outs = []
    for rng in repetition_rngs(seed, repetitions):
        outs.append(_play_one(dres.table, ares.table, payoffs.u_d, payoffs.u_a,
                              rng.random((rounds, 2)), int(initial_state)))
    stacked = [np.stack(x) for x in zip(*outs)]
    config = {
        "defender": dres.name, "attacker": ares.name, "rounds": rounds,
        "repetitions": repetitions, "initial_state": STATES[initial_state].label,
        "defender_clamped": dres.clamped, "defender_info": dres.info,
    }
    return TournamentResult(*stacked, seed=seed, config=config)
