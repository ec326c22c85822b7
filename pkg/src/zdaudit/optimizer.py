"""Maximise ``u_d - u_a`` with the ZD relation ``alpha = -1, beta = 1``.

The defender plays ``p_hat = phi * (U_D - U_A + gamma * 1)``, which enforces
``u_d - u_a = -gamma`` against any attacker.  Playability ``0 <= p_i <= 1``
turns into an interval ``[gamma_min, gamma_max]`` for each scale ``phi``; the
best enforceable difference is ``-gamma_min`` when the interval is non-empty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyGrid, ZeroPhi
from .game import STATES, PayoffVectors

# p_hat = p - OFFSET
OFFSET = np.array([1.0, 1.0, 0.0, 0.0])


@dataclass(frozen=True)
class DiffBounds:
    phi: float
    lam: np.ndarray  # eight terms: four "minus 1/phi" style, four "plus 1/phi" style
    lower: np.ndarray  # per-state lower bounds on gamma
    upper: np.ndarray  # per-state upper bounds on gamma
    gamma_min: float
    gamma_max: float

    @property
    def feasible(self) -> bool:
        return self.gamma_min <= self.gamma_max

    @property
    def binding_lower(self) -> int:
        return int(np.argmax(self.lower))

    @property
    def binding_upper(self) -> int:
        return int(np.argmin(self.upper))


@dataclass(frozen=True)
class DiffMaxSolution:
    phi: float
    gamma: float
    gamma_max: float
    p: np.ndarray
    value: float
    feasible: bool
    diagnostics: dict = field(default_factory=dict, compare=False)


def gamma_bounds(payoffs: PayoffVectors, phi: float) -> DiffBounds:
    """Bounds on gamma that keep every recovered ``p_i`` inside ``[0, 1]``.

    For ``phi > 0`` the states 00/01 give lower bounds ``A - D - 1/phi`` and
    upper bounds ``A - D``; states 10/11 give ``A - D`` and ``A - D + 1/phi``.
    For ``phi < 0`` the two families swap roles.
    """
    if phi == 0:
        raise ZeroPhi("phi must be nonzero")
    gap = payoffs.u_a - payoffs.u_d
    inv = 1.0 / phi
    lam_k = gap - inv * OFFSET  # from p_i >= 0 when phi > 0
    lam_l = gap + inv * (1.0 - OFFSET)  # from p_i <= 1 when phi > 0
    lower, upper = (lam_k, lam_l) if phi > 0 else (lam_l, lam_k)
    return DiffBounds(
        phi=float(phi), lam=np.concatenate([lam_k, lam_l]), lower=lower, upper=upper,
        gamma_min=float(lower.max()), gamma_max=float(upper.min()),
    )


def recover_strategy(payoffs: PayoffVectors, phi: float, gamma: float) -> np.ndarray:
    """``p = phi * (U_D - U_A + gamma) + (1, 1, 0, 0)``; the scale phi is kept."""
    return phi * (payoffs.u_d - payoffs.u_a + gamma) + OFFSET


def default_phi_grid(n=60, lo=0.01, hi=10.0) -> np.ndarray:
    mags = np.geomspace(lo, hi, n)
    return np.concatenate([-mags[::-1], mags])


def _describe(bounds: DiffBounds) -> dict:
    return {
        "phi": bounds.phi,
        "gamma_min": bounds.gamma_min,
        "gamma_max": bounds.gamma_max,
        "feasible": bounds.feasible,
        "binding_lower_state": STATES[bounds.binding_lower].label,
        "binding_upper_state": STATES[bounds.binding_upper].label,
    }


def solve_diff_max(payoffs: PayoffVectors, phi_grid=None) -> DiffMaxSolution:
    """Best enforceable ``u_d - u_a`` over a grid of scales.

    When no scale is feasible the result still carries the closed-form
    ``gamma_min`` (and the strategy it would imply) of the least infeasible
    scale, with ``feasible=False`` and per-scale diagnostics.
    """
    grid = default_phi_grid() if phi_grid is None else np.atleast_1d(np.asarray(phi_grid, float))
    if grid.size == 0:
        raise EmptyGrid("phi grid is empty")
    all_bounds = [gamma_bounds(payoffs, phi) for phi in grid]
    per_phi = [_describe(b) for b in all_bounds]
    feasible = [b for b in all_bounds if b.feasible]
    if feasible:
        best = min(feasible, key=lambda b: b.gamma_min)  # first wins on ties
    else:
        best = min(all_bounds, key=lambda b: b.gamma_min - b.gamma_max)
    p = recover_strategy(payoffs, best.phi, best.gamma_min)
    if best.feasible:
        # roundoff at binding constraints
        p = np.clip(p, 0.0, 1.0)
    diagnostics = {
        "binding_lower_state": STATES[best.binding_lower].label,
        "binding_upper_state": STATES[best.binding_upper].label,
        "n_feasible_phi": len(feasible),
        "per_phi": per_phi,
    }
    return DiffMaxSolution(
        phi=best.phi, gamma=best.gamma_min, gamma_max=best.gamma_max, p=p,
        value=-best.gamma_min + 0.0, feasible=best.feasible, diagnostics=diagnostics,
    )


@dataclass
class OracleReport:
    cells: np.ndarray  # (n, 4) grid strategies
    spread: np.ndarray  # max - min of u_d - u_a over the attacker grid, nan if never ergodic
    value: np.ndarray  # midpoint of that range
    n_ergodic: np.ndarray  # attacker grid points with a unique stationary state
    tol: float

    @property
    def enforcing(self) -> np.ndarray:
        return (self.n_ergodic >= 2) & (self.spread <= self.tol)

    @property
    def nonergodic_cells(self) -> np.ndarray:
        return self.cells[self.n_ergodic == 0]

    def enforcing_cells(self):
        mask = self.enforcing
        return self.cells[mask], self.value[mask], self.spread[mask]

    def best(self):
        """Enforcing cell with the largest enforced difference, or None."""
        cells, values, _ = self.enforcing_cells()
        if values.size == 0:
            return None
        i = int(np.argmax(values))
        return cells[i], float(values[i])

    def closest(self, target):
        cells, values, _ = self.enforcing_cells()
        if values.size == 0:
            return None
        i = int(np.argmin(np.abs(values - target)))
        return cells[i], float(values[i])


def _axis(step: float) -> np.ndarray:
    if not 0 < step <= 0.5:
        raise ValueError(f"grid step must lie in (0, 0.5], got {step}")
    n = int(round(1.0 / step))
    if abs(n * step - 1.0) < 1e-9:
        return np.linspace(0.0, 1.0, n + 1)
    return np.arange(0.0, 1.0 + 1e-12, step)


def _batched_stationary(p_cells: np.ndarray, q1: float, q2: float, det_tol: float):
    """Stationary vectors for many defender strategies against one attacker.

    Solves ``(M^T - I) v = 0`` with one equation swapped for ``sum(v) = 1``;
    that system is singular exactly when the stationary vector is not unique.
    """
    n = p_cells.shape[0]
    m = np.empty((n, 4, 4))
    m[:, :, 0] = p_cells * q1
    m[:, :, 1] = p_cells * (1 - q1)
    m[:, :, 2] = (1 - p_cells) * q2
    m[:, :, 3] = (1 - p_cells) * (1 - q2)
    a = np.transpose(m, (0, 2, 1)) - np.eye(4)
    a[:, 3, :] = 1.0
    ok = np.abs(np.linalg.det(a)) > det_tol
    a[~ok] = np.eye(4)
    b = np.zeros((n, 4, 1))
    b[:, 3, 0] = 1.0
    v = np.linalg.solve(a, b)[:, :, 0]
    return v, ok


def brute_force_diff_oracle(payoffs: PayoffVectors, p_grid_step=0.05, q_grid_step=0.25,
                            tol=1e-6, det_tol=1e-10) -> OracleReport:
    """Search a defender grid for strategies whose ``u_d - u_a`` ignores the attacker.

    Independent of the closed form: every cell is played against every point of
    an attacker grid, stationary states come from a direct linear solve, and a
    cell counts as enforcing when the spread of ``u_d - u_a`` stays within tol.
    """
    axis = _axis(p_grid_step)
    cells = np.array(list(itertools.product(axis, repeat=4)))
    q_axis = _axis(q_grid_step)
    w = payoffs.u_d - payoffs.u_a
    lo = np.full(len(cells), np.inf)
    hi = np.full(len(cells), -np.inf)
    count = np.zeros(len(cells), dtype=int)
    for q1, q2 in itertools.product(q_axis, repeat=2):
        v, ok = _batched_stationary(cells, q1, q2, det_tol)
        diff = v @ w
        lo = np.where(ok, np.minimum(lo, diff), lo)
        hi = np.where(ok, np.maximum(hi, diff), hi)
        count += ok
    seen = count > 0
    spread = np.full(len(cells), np.nan)
    value = np.full(len(cells), np.nan)
    spread[seen] = hi[seen] - lo[seen]
    value[seen] = 0.5 * (hi[seen] + lo[seen])
    return OracleReport(cells=cells, spread=spread, value=value, n_ergodic=count, tol=tol)
