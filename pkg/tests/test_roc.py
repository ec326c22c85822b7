import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zdaudit.roc import auc_trapezoid, confusion, roc_curve, roc_from_scores
from zdaudit.simulator import ATTACKER, DEFENDER, StrategySpec, play_iterated


def test_confusion_labels():
    signal = np.array([1, 1, 0, 0, 1])
    attack = np.array([1, 0, 1, 0, 1])
    assert confusion(signal, attack) == (2, 1, 1, 1)
    signal = np.array([1, 0, 0])
    attack = np.array([0, 1, 0])
    tp, fp, tn, fn = confusion(signal, attack)
    assert (tn, fn) == (1, 1)
    assert confusion([0, 0], [1, 1]) == (0, 0, 2, 0)
    assert confusion([0, 0], [1, 1], standard_labels=True) == (0, 0, 0, 2)


def test_auc_trapezoid_simple():
    assert auc_trapezoid([], []) == 0.5
    assert auc_trapezoid([0.0], [1.0]) == 1.0
    assert auc_trapezoid([0.5], [0.5]) == 0.5


def test_tft_defender_vs_all1(det_payoffs):
    res = play_iterated(StrategySpec.parse("TFT", DEFENDER), StrategySpec.parse("ALL1", ATTACKER),
                        det_payoffs)
    curve = roc_curve(res)
    assert set(curve.points) == {(0.0, 1.0)}
    assert curve.auc == 1.0


def test_rand_vs_rand_is_chance(det_payoffs):
    res = play_iterated(StrategySpec.parse("Rand", DEFENDER), StrategySpec.parse("Rand", ATTACKER),
                        det_payoffs, seed=0)
    assert roc_curve(res).auc == pytest.approx(0.5, abs=0.05)


def test_perfect_separation_standard_labels():
    attack = np.array([1, 0, 1, 1, 0, 0, 1])
    curve = roc_from_scores(attack.astype(float), attack, standard_labels=True)
    assert curve.auc == 1.0


def test_perfect_separation_default_labels():
    # With the default labelling a perfect signal puts every negative in FN and
    # every positive-quiet round in TN, so TPR = FPR = 1 at the only usable threshold.
    attack = np.array([1, 0, 1, 1, 0, 0, 1])
    curve = roc_from_scores(attack.astype(float), attack)
    assert curve.auc == 0.5


def test_skipped_thresholds_are_reported():
    curve = roc_from_scores([0.2, 0.8], [1, 1], standard_labels=True)
    assert curve.fpr.size == 0
    assert len(curve.skipped) == 3


@given(st.lists(st.tuples(st.floats(0, 1), st.booleans()), min_size=1, max_size=60), st.booleans())
def test_auc_bounds_and_ordering(pairs, standard):
    pi, attack = map(np.array, zip(*pairs))
    curve = roc_from_scores(pi, attack, standard_labels=standard)
    assert 0.0 <= curve.auc <= 1.0
    assert np.all(np.diff(curve.thresholds) > 0)
    assert np.all((curve.fpr >= 0) & (curve.fpr <= 1) & (curve.tpr >= 0) & (curve.tpr <= 1))
