"""ROC curves of the defender's signalling against the attacker's actual moves.

A threshold ``theta`` on the per-round signalling probability turns every
round into a predicted signal (``pi >= theta``).  By default outcomes are
labelled as follows:

    TP  signal, attack         FP  signal, no attack
    TN  no signal, attack      FN  no signal, no attack

with ``TPR = TP / (TP + FN)`` and ``FPR = FP / (FP + TN)``.  Passing
``standard_labels=True`` swaps TN and FN into the usual detection convention
(attack is the positive class).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class RocCurve:
    thresholds: np.ndarray
    fpr: np.ndarray
    tpr: np.ndarray
    auc: float
    skipped: tuple = field(default=())  # thresholds with an empty denominator

    @property
    def points(self):
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))


def confusion(signal: np.ndarray, attack: np.ndarray, standard_labels=False):
    signal = np.asarray(signal, dtype=bool)
    attack = np.asarray(attack, dtype=bool)
    tp = int(np.sum(signal & attack))
    fp = int(np.sum(signal & ~attack))
    quiet_attack = int(np.sum(~signal & attack))
    quiet_quit = int(np.sum(~signal & ~attack))
    if standard_labels:
        return tp, fp, quiet_quit, quiet_attack  # tp, fp, tn, fn
    return tp, fp, quiet_attack, quiet_quit


def auc_trapezoid(fpr, tpr) -> float:
    """Trapezoidal area under the points, anchored at (0, 0) and (1, 1)."""
    pts = sorted(set(zip(np.asarray(fpr, float).tolist(), np.asarray(tpr, float).tolist()))
                 | {(0.0, 0.0), (1.0, 1.0)})
    area = 0.0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        area += 0.5 * (x1 - x0) * (y0 + y1)
    return area


def roc_from_scores(pi, attack, thresholds=None, standard_labels=False) -> RocCurve:
    pi = np.asarray(pi, dtype=float).ravel()
    attack = np.asarray(attack).ravel().astype(bool)
    if thresholds is None:
        thresholds = np.append(np.unique(pi), np.inf)
    thresholds = np.sort(np.asarray(thresholds, dtype=float))
    kept, fprs, tprs, skipped = [], [], [], []
    for theta in thresholds:
        tp, fp, tn, fn = confusion(pi >= theta, attack, standard_labels)
        if tp + fn == 0 or fp + tn == 0:
            skipped.append(float(theta))
            continue
        kept.append(theta)
        tprs.append(tp / (tp + fn))
        fprs.append(fp / (fp + tn))
    return RocCurve(
        thresholds=np.array(kept), fpr=np.array(fprs), tpr=np.array(tprs),
        auc=auc_trapezoid(fprs, tprs), skipped=tuple(skipped),
    )


def roc_curve(result, thresholds=None, standard_labels=False) -> RocCurve:
    """ROC of a TournamentResult, pooling every round of every repetition."""
    return roc_from_scores(result.pi, result.a == 1, thresholds, standard_labels)
