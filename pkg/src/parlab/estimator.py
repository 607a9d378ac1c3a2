"""Scikit-learn estimator facade over the exact fitting solver.

Wraps fe_solve in the familiar fit/predict shape: fit takes rows of input
bits with 0/1 labels (a sampling set in disguise), solves for the minimum
gate count, and predict evaluates the canonical minimizer on new rows.
Useful for slotting the exact solver into sklearn pipelines and model
selection tooling; the rest of the library speaks sampling sets directly.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError

from .bits import SamplingSet
from .errors import DimensionError
from .fepss import DEFAULT_GATE_CAP, fe_solve


def _rows_to_points(X, arity=None):
    X = np.asarray(X)
    if X.ndim != 2:
        raise DimensionError("expected a 2-d array of 0/1 input rows")
    if arity is not None and X.shape[1] != arity:
        raise DimensionError(f"expected rows of width {arity}, got {X.shape[1]}")
    if not np.isin(X, (0, 1)).all():
        raise DimensionError("input rows must be 0/1 valued")
    width = X.shape[1]
    weights = 1 << np.arange(width - 1, -1, -1)
    return X.astype(np.int64) @ weights, width


class FittingExtremumClassifier(BaseEstimator, ClassifierMixin):
    """Exact minimum-gate-count boolean rule induction.

    Fitting finds the smallest AND/OR gate count d such that some circuit
    agrees with all training rows, and keeps the canonical minimal
    circuit's truth table as the decision rule.  Attributes after fit:

    - ``min_d_``: the exact minimum gate count;
    - ``minimizers_``: all truth tables of minimal fitting circuits;
    - ``witness_circuit_``: one canonical minimal circuit;
    - ``is_unique_``: whether the minimal truth table is unique (the
      training rows form a proper sampling set of the learned rule).
    """

    def __init__(self, gate_cap: int = DEFAULT_GATE_CAP):
        self.gate_cap = gate_cap

    def fit(self, X, y):
        points, width = _rows_to_points(X)
        y = np.asarray(y)
        if y.shape != (len(points),):
            raise DimensionError("labels must be one bit per row")
        sv = SamplingSet.from_pairs(width, [(int(p), int(b)) for p, b in zip(points, y)])
        sol = fe_solve(sv, gate_cap=self.gate_cap)
        if sol.status != "exact":
            raise NotFittedError(
                f"no fitting circuit within gate cap {self.gate_cap}"
            )
        self.arity_ = width
        self.min_d_ = sol.min_d
        self.minimizers_ = sol.minimizers
        self.witness_circuit_ = sol.witness_circuit
        self.table_ = sol.minimizers[0]
        self.is_unique_ = sol.minimizers_exhaustive and len(sol.minimizers) == 1
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X):
        if not hasattr(self, "table_"):
            raise NotFittedError("call fit before predict")
        points, _ = _rows_to_points(X, self.arity_)
        return np.array([self.table_[int(p)] for p in points])
