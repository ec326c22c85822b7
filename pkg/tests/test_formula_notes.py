"""Counter-tests for three formulas whose commonly quoted forms are wrong.

Each test shows the implemented behaviour and why the alternative fails.
README.md lists these tests under "Formula notes".
"""

import numpy as np
import pytest

from zdaudit.chain import stationary_utilities
from zdaudit.control import attacker_utility_formula, control_gradients, control_range, dominant_variable
from zdaudit.optimizer import OFFSET, recover_strategy, solve_diff_max


def test_p1_zero_endpoint_is_scale_over_one_plus_p4(det_payoffs):
    scale = det_payoffs.u_a[3] - det_payoffs.u_a[0]
    for p4 in (0.25, 0.5, 0.75):
        at_zero = attacker_utility_formula(0.0, p4, det_payoffs)
        assert at_zero == pytest.approx(scale / (1 + p4))
        assert at_zero != pytest.approx(scale / p4)
        assert control_range("p1", 0.5, p4, det_payoffs).hi == pytest.approx(scale / (1 + p4))
    # scale / p4 would leave the global range [0, scale]
    assert scale / 0.5 > scale


def test_dominance_follows_gradient_magnitude(det_payoffs, rng):
    for p1, p4 in rng.uniform(0.01, 0.99, (200, 2)):
        d1, d4, _ = control_gradients(p1, p4, det_payoffs)
        expected = "tie" if np.isclose(abs(d1), abs(d4), rtol=0, atol=1e-12) else (
            "p4" if abs(d4) > abs(d1) else "p1")
        assert dominant_variable(p1, p4) == expected
    # small p1 + p4: the p4 gradient is larger
    d1, d4, _ = control_gradients(0.1, 0.2, det_payoffs)
    assert abs(d4) > abs(d1) and dominant_variable(0.1, 0.2) == "p4"


def test_recovery_keeps_phi(relaxed_payoffs, rng):
    sol = solve_diff_max(relaxed_payoffs, [-0.5])
    with_phi = recover_strategy(relaxed_payoffs, -0.5, sol.gamma)
    np.testing.assert_allclose(with_phi, [0.25, 1, 0.25, 0.35], atol=1e-12)
    for q in rng.uniform(0.05, 0.95, (10, 2)):
        out = stationary_utilities(with_phi, q, relaxed_payoffs)
        assert out.u_d - out.u_a == pytest.approx(-sol.gamma, abs=1e-9)
    # dropping phi gives a vector that is not a probability table
    without_phi = relaxed_payoffs.u_d - relaxed_payoffs.u_a + sol.gamma + OFFSET
    np.testing.assert_allclose(without_phi, [2.5, 1, -0.5, -0.7], atol=1e-12)
    assert np.any(without_phi < 0) or np.any(without_phi > 1)
