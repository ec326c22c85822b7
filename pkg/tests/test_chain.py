import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import eig_stationary
from zdaudit.chain import (AttackerStrategy, DefenderStrategy, build_transition, stationary_utilities,
                           stationary_vector, zd_determinant)
from zdaudit.errors import NonErgodic

interior = st.floats(min_value=0.02, max_value=0.98)
defender = st.tuples(interior, interior, interior, interior)
attacker = st.tuples(interior, interior)
vec4 = st.tuples(*[st.floats(-10, 10)] * 4)


def test_transition_rows_match_definition():
    m = build_transition((0.2, 0.4, 0.6, 0.8), (0.3, 0.7))
    np.testing.assert_allclose(m[1], [0.4 * 0.3, 0.4 * 0.7, 0.6 * 0.7, 0.6 * 0.3])
    np.testing.assert_allclose(m.sum(axis=1), 1.0)


def test_strategy_validation():
    with pytest.raises(ValueError):
        DefenderStrategy((0.1, 0.2, 1.1, 0.0))
    with pytest.raises(ValueError):
        AttackerStrategy((0.5,))


def test_uniform_play_example(det_payoffs):
    out = stationary_utilities((0.5,) * 4, (0.5, 0.5), det_payoffs)
    np.testing.assert_allclose(out.v, 0.25, atol=1e-12)
    assert out.u_a == pytest.approx(3.75, abs=1e-12)
    assert out.u_d == pytest.approx(-4.25, abs=1e-12)


def test_absorbing_pair_is_rejected(det_payoffs):
    with pytest.raises(NonErgodic):
        stationary_utilities((1, 1, 0, 0), (1, 0), det_payoffs)


def test_two_closed_classes_rejected():
    m = build_transition((1.0, 1.0, 0.0, 0.0), (1.0, 0.0))
    with pytest.raises(NonErgodic):
        stationary_vector(m)


@settings(max_examples=300)
@given(defender, attacker)
def test_stationary_matches_eigen_oracle(p, q):
    m = build_transition(p, q)
    v = stationary_vector(m)
    np.testing.assert_allclose(v, eig_stationary(m), atol=1e-9)
    assert np.max(np.abs(v @ m - v)) < 1e-10
    assert v.sum() == pytest.approx(1.0)


@settings(max_examples=300)
@given(defender, attacker)
def test_determinant_ratio_matches_oracle(p, q):
    from zdaudit.game import build_params, deterministic_payoffs
    pay = deterministic_payoffs(build_params(8, 5, 2, 10, 5))
    v = eig_stationary(build_transition(p, q))
    out = stationary_utilities(p, q, pay)
    assert out.method == "determinant"
    assert out.u_a == pytest.approx(float(v @ pay.u_a), abs=1e-8)
    assert out.u_d == pytest.approx(float(v @ pay.u_d), abs=1e-8)


@given(defender, attacker, vec4, vec4, st.floats(-5, 5), st.floats(-5, 5))
def test_determinant_is_linear_in_payoff_column(p, q, f, g, a, b):
    f, g = np.array(f), np.array(g)
    lhs = zd_determinant(p, q, a * f + b * g)
    rhs = a * zd_determinant(p, q, f) + b * zd_determinant(p, q, g)
    assert lhs == pytest.approx(rhs, abs=1e-9)


@given(defender, attacker, vec4)
def test_determinant_proportional_to_stationary_dot(p, q, f):
    d_one = zd_determinant(p, q, np.ones(4))
    assume(abs(d_one) > 1e-6)
    v = eig_stationary(build_transition(p, q))
    assert zd_determinant(p, q, f) / d_one == pytest.approx(float(v @ np.array(f)), abs=1e-7)


@given(defender, attacker, st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_defender_column_combination_vanishes(p, q, alpha, beta, gamma):
    """A payoff column equal to p - (1,1,0,0) gives zero stationary payoff."""
    from zdaudit.game import build_params, deterministic_payoffs
    pay = deterministic_payoffs(build_params(8, 5, 2, 10, 5))
    p_hat = np.array(p) - np.array([1.0, 1.0, 0.0, 0.0])
    assert zd_determinant(p, q, p_hat) == pytest.approx(0.0, abs=1e-12)
    combo = alpha * pay.u_a + beta * pay.u_d + gamma
    v = eig_stationary(build_transition(p, q))
    d = zd_determinant(p, q, combo) / zd_determinant(p, q, np.ones(4))
    assert d == pytest.approx(alpha * v @ pay.u_a + beta * v @ pay.u_d + gamma, abs=1e-7)
