"""Plain-text experiment configuration.

One ``key = value`` per line; ``#`` starts a comment.  Lists are comma
separated.  Every key has a default so an empty file is a valid config.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .errors import AuditGameError, ConfigError, NonPositiveParameter, OrderingViolated, PolicyViolated
from .game import (DETERMINISTIC, PROBABILISTIC, SignalPolicy, build_params,
                   deterministic_payoffs, probabilistic_payoffs)
from .simulator import ATTACKER, DEFENDER, StrategySpec


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _floats(text: str) -> tuple:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _sweep(text: str) -> tuple:
    lo, hi, steps = (x.strip() for x in text.split(","))
    lo, hi, steps = float(lo), float(hi), int(steps)
    if steps < 2 or not lo < hi:
        raise ValueError("sweep needs lo < hi and at least 2 steps")
    return lo, hi, steps


@dataclass
class ExperimentConfig:
    model: str = DETERMINISTIC
    t_d: float = 8.0
    t_m: float = 5.0
    c: float = 2.0
    r_a: float = 10.0
    s_a: float = 5.0
    strict_mode: bool = True
    tau: float = 0.6
    delta: float = 0.2
    defender: str = "zd_equalizer:0.9,0.5"
    attacker: str = "Rand"
    p1: float = 0.5
    p4: float = 0.5
    zd_equalizer: tuple = (0.9, 0.5)
    phi: float = -1.0
    phi_grid: tuple = ()
    sweep_p1: tuple = (0.0, 1.0, 101)
    sweep_p4: tuple = (0.0, 1.0, 101)
    sweep_tau: tuple = (0.0, 1.0, 101)
    sweep_delta: tuple = (0.0, 1.0, 101)
    fixed_values: tuple = (0.25, 0.5, 0.75)
    slice_gap: float = 0.4
    slice_ratio: float = 1.0 / 3.0
    oracle_p_step: float = 0.1
    oracle_q_step: float = 0.25
    rounds: int = 50
    repetitions: int = 50
    seed: int = 0
    initial_state: str = "00"
    wsls_threshold: float | None = None
    standard_labels: bool = False
    out: str = ""

    # -- derived objects ---------------------------------------------------
    def params(self):
        return build_params(self.t_d, self.t_m, self.c, self.r_a, self.s_a, self.strict_mode)

    def policy(self):
        return SignalPolicy(self.tau, self.delta)

    def payoffs(self, model=None):
        model = model or self.model
        if model == DETERMINISTIC:
            return deterministic_payoffs(self.params())
        return probabilistic_payoffs(self.params(), self.policy())

    def strategies(self):
        return (StrategySpec.parse(self.defender, DEFENDER),
                StrategySpec.parse(self.attacker, ATTACKER))

    def validate(self):
        """Run every constructor once so bad values fail before any work."""
        if self.model not in (DETERMINISTIC, PROBABILISTIC):
            raise ConfigError(f"model must be {DETERMINISTIC} or {PROBABILISTIC}", key="model")
        try:
            self.params()
        except NonPositiveParameter as exc:
            key = str(exc).split()[0]
            raise ConfigError(str(exc), key=key) from exc
        except OrderingViolated as exc:
            raise ConfigError(str(exc), key="t_d") from exc
        try:
            self.policy()
        except PolicyViolated as exc:
            raise ConfigError(str(exc), key="tau") from exc
        for key in ("defender", "attacker"):
            try:
                StrategySpec.parse(getattr(self, key), DEFENDER if key == "defender" else ATTACKER)
            except (AuditGameError, ValueError) as exc:
                raise ConfigError(str(exc), key=key) from exc
        if self.rounds < 1 or self.repetitions < 1:
            raise ConfigError("rounds and repetitions must be >= 1", key="rounds")
        if self.initial_state not in ("00", "01", "10", "11"):
            raise ConfigError("initial_state must be one of 00, 01, 10, 11", key="initial_state")
        if self.phi == 0 or 0.0 in self.phi_grid:
            raise ConfigError("phi must be nonzero", key="phi")
        return self

    def echo(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v)
                for k, v in dataclasses.asdict(self).items() if k != "out"}


_PARSERS = {
    "model": str.strip,
    "strict_mode": _bool,
    "standard_labels": _bool,
    "defender": str.strip,
    "attacker": str.strip,
    "initial_state": str.strip,
    "out": str.strip,
    "zd_equalizer": _floats,
    "phi_grid": _floats,
    "fixed_values": _floats,
    "sweep_p1": _sweep,
    "sweep_p4": _sweep,
    "sweep_tau": _sweep,
    "sweep_delta": _sweep,
    "rounds": int,
    "repetitions": int,
    "seed": int,
    "wsls_threshold": lambda s: None if s.strip().lower() in ("", "none") else float(s),
}


def _parse_value(key, text):
    return _PARSERS.get(key, float)(text)


def apply_setting(cfg: ExperimentConfig, key: str, text: str, line=None):
    key = key.strip()
    names = {f.name for f in dataclasses.fields(ExperimentConfig)}
    if key not in names:
        raise ConfigError("unknown key", key=key, line=line)
    try:
        setattr(cfg, key, _parse_value(key, text))
    except ValueError as exc:
        raise ConfigError(f"bad value {text.strip()!r}: {exc}", key=key, line=line) from exc


def parse_config(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    cfg = base or ExperimentConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, value = line.split("=", 1)
        apply_setting(cfg, key, value, line=lineno)
    return cfg


def load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())
