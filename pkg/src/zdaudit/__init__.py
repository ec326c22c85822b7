"""Zero-determinant signalling strategies for iterated audit games."""

__version__ = "0.1.0"

from .chain import (AttackerStrategy, DefenderStrategy, StationaryOutcome, build_transition,
                    stationary_utilities, stationary_vector, zd_determinant)
from .control import (ControlRange, EqualizerStrategy, attacker_utility_formula, control_gradients,
                      control_range_and_dominance, equalizer_strategy)
from .game import (AuditGameParams, GameState, PayoffVectors, SignalPolicy,
                   backward_induction_equilibrium, build_params, default_params,
                   deterministic_payoffs, probabilistic_payoffs)
from .optimizer import (DiffBounds, DiffMaxSolution, brute_force_diff_oracle, gamma_bounds,
                        solve_diff_max)
from .roc import RocCurve, roc_curve
from .simulator import StrategySpec, TournamentResult, classic_strategies, play_iterated
