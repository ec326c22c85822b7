import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import enumerate_equilibrium
from zdaudit.errors import NonPositiveParameter, OrderingViolated, PolicyViolated
from zdaudit.game import (GameState, SignalPolicy, backward_induction_equilibrium, build_params,
                          deterministic_payoffs, probabilistic_payoffs)

positive = st.floats(min_value=0.01, max_value=100, allow_nan=False)


def test_state_coding():
    for s in GameState:
        assert s == 2 * s.d + s.a
        assert GameState.from_actions(s.d, s.a) is s
    assert GameState.S01.label == "01"


def test_build_params_defaults_ok():
    p = build_params(8, 5, 2, 10, 5, strict_mode=True)
    assert (p.t_d, p.t_m, p.c, p.r_a, p.s_a) == (8, 5, 2, 10, 5)


def test_build_params_ordering_violated():
    with pytest.raises(OrderingViolated):
        build_params(1, 5, 2, 10, 5, strict_mode=True)


def test_build_params_relaxed_instance_ok():
    build_params(1, 0.1, 2, 0.5, 0.4, strict_mode=False)


@pytest.mark.parametrize("bad", [0, -1.0, float("nan")])
def test_non_positive_rejected(bad):
    with pytest.raises(NonPositiveParameter):
        build_params(8, 5, bad, 10, 5)


def test_deterministic_defaults(det_payoffs):
    np.testing.assert_array_equal(det_payoffs.u_d, [0, -8, -2, -7])
    np.testing.assert_array_equal(det_payoffs.u_a, [0, 10, 0, 5])


def test_probabilistic_defaults(prob_payoffs):
    np.testing.assert_allclose(prob_payoffs.u_d, [-0.4, -7.8, -1.2, -7.4], atol=1e-12)
    np.testing.assert_allclose(prob_payoffs.u_a, [0, 9, 0, 7], atol=1e-12)


def test_payoffs_immutable(det_payoffs):
    with pytest.raises(ValueError):
        det_payoffs.u_d[0] = 1.0


def test_tight_ordering_keeps_signal_loss_smaller():
    p = build_params(7 + 1e-9, 5, 2, 10, 5)
    u = deterministic_payoffs(p).u_d
    assert u[1] < u[3]


def test_equal_gain_and_penalty_cancels():
    assert deterministic_payoffs(build_params(8, 5, 2, 4, 4)).u_a[3] == 0


@pytest.mark.parametrize("tau,delta", [(0.5, 0.5), (0.2, 0.6), (1.2, 0.0), (0.5, -0.1)])
def test_policy_violated(tau, delta):
    with pytest.raises(PolicyViolated):
        SignalPolicy(tau, delta)


@given(positive, positive, positive, positive, positive)
def test_probabilistic_reduces_to_deterministic(t_d, t_m, c, r_a, s_a):
    params = build_params(t_d, t_m, c, r_a, s_a, strict_mode=False)
    assert probabilistic_payoffs(params, SignalPolicy(1.0, 0.0)) == deterministic_payoffs(params)


def test_equilibrium_defaults(det_payoffs, prob_payoffs):
    assert backward_induction_equilibrium(det_payoffs)[0] == GameState.S11
    assert backward_induction_equilibrium(prob_payoffs)[0] == GameState.S11


def test_equilibrium_attacker_quits_after_signal():
    params = build_params(8, 5, 2, 3, 5, strict_mode=False)
    state, responses = backward_induction_equilibrium(probabilistic_payoffs(params, SignalPolicy(1, 0)))
    assert state == GameState.S10
    assert responses == {0: 1, 1: 0}


def test_equilibrium_matches_enumeration(rng):
    for _ in range(1000):
        t_d, t_m, c, r_a, s_a = rng.uniform(0.1, 10, 5)
        params = build_params(t_d, t_m, c, r_a, s_a, strict_mode=False)
        delta, tau = np.sort(rng.uniform(0, 1, 2))
        if tau == delta:
            continue
        for pay in (deterministic_payoffs(params), probabilistic_payoffs(params, SignalPolicy(tau, delta))):
            assert backward_induction_equilibrium(pay)[0] == enumerate_equilibrium(pay)


@settings(max_examples=200)
@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10))
def test_strict_with_profitable_attack_is_signal_attack(t_m, c, extra, s_a):
    t_d = t_m + c + extra
    r_a = s_a + extra
    pay = deterministic_payoffs(build_params(t_d, t_m, c, r_a, s_a))
    assert backward_induction_equilibrium(pay)[0] == GameState.S11
