"""Rank transform and empirical copula machinery.

Raw anomaly scores are mapped columnwise to pseudo-observations
rank/(n+1), which removes all marginal structure and leaves only the
dependence between columns. Quadrant membership is evaluated with the
closed convention ``u >= q`` everywhere (points, counts, and the
empirical survival function agree exactly); for continuous scores a tie
with q has probability zero, so the convention only matters at exact
grid values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

__all__ = [
    "ScoreMatrix",
    "PseudoMatrix",
    "rank_transform",
    "empirical_copula",
    "empirical_survival",
    "quadrant_points",
]


def _frozen_array(values, dtype=float):
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ScoreMatrix:
    """n x k matrix of raw anomaly scores, one column per detector.

    Rows are observations; higher scores mean more anomalous. Requires
    n >= 2 observations, k >= 2 columns, and finite entries.
    """

    values: np.ndarray
    column_names: tuple = ()

    def __post_init__(self):
        values = _frozen_array(self.values)
        if values.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got shape {values.shape}")
        n, k = values.shape
        if n < 2 or k < 2:
            raise ValueError(f"need at least 2 rows and 2 columns, got {n}x{k}")
        if not np.all(np.isfinite(values)):
            raise ValueError("scores must be finite")
        names = tuple(self.column_names) or tuple(f"det{j}" for j in range(k))
        if len(names) != k:
            raise ValueError(f"{len(names)} column names for {k} columns")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "column_names", names)

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def k(self):
        return self.values.shape[1]


@dataclass(frozen=True)
class PseudoMatrix:
    """n x k matrix of pseudo-observations in (0, 1).

    Entries produced by :func:`rank_transform` sit on the grid
    {1/(n+1), ..., n/(n+1)}, so every column maximum is n/(n+1) < 1.
    Externally supplied values are clamped into [0, 1] with a warning.
    """

    values: np.ndarray
    column_names: tuple = ()

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("pseudo-observations must be finite")
        if np.any(values < 0.0) or np.any(values > 1.0):
            warnings.warn(
                "pseudo-observations outside [0, 1] clamped; empirical "
                "copula/survival identities may be off by more than 1/n",
                stacklevel=2,
            )
            values = np.clip(values, 0.0, 1.0)
        values.setflags(write=False)
        n, k = values.shape
        names = tuple(self.column_names) or tuple(f"det{j}" for j in range(k))
        if len(names) != k:
            raise ValueError(f"{len(names)} column names for {k} columns")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "column_names", names)

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def k(self):
        return self.values.shape[1]


def _as_values(matrix):
    return matrix.values if hasattr(matrix, "values") else np.asarray(matrix, float)


def rank_transform(scores) -> PseudoMatrix:
    """Columnwise rank transform to pseudo-observations in (0, 1).

    u_ij = (number of entries in column j that are <= y_ij) / (n+1).
    Order-preserving within each column and invariant under any strictly
    increasing columnwise transformation. Tied scores count every <=
    comparison, so ties map to equal pseudo-values.
    """
    values = _as_values(scores)
    if values.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {values.shape}")
    names = getattr(scores, "column_names", ())
    ranks = rankdata(values, method="max", axis=0)
    return PseudoMatrix(ranks / (values.shape[0] + 1.0), names)


def _pair(u, i, j):
    values = _as_values(u)
    k = values.shape[1]
    if not (0 <= i < k and 0 <= j < k):
        raise IndexError(f"column indices ({i}, {j}) out of range for k={k}")
    if i == j:
        raise ValueError("pairwise measures need two distinct columns")
    return values[:, i], values[:, j]


def empirical_copula(u, i, j, q1, q2) -> float:
    """Empirical copula: fraction of rows with u_i <= q1 and u_j <= q2."""
    ui, uj = _pair(u, i, j)
    return float(np.mean((ui <= q1) & (uj <= q2)))


def empirical_survival(u, i, j, q1, q2) -> float:
    """Empirical survival: fraction of rows with u_i >= q1 and u_j >= q2.

    Closed quadrant convention; with rank pseudo-observations this agrees
    with empirical_copula through S = C + 1 - q1 - q2 up to an error of
    at most 1/n.
    """
    ui, uj = _pair(u, i, j)
    return float(np.mean((ui >= q1) & (uj >= q2)))


def quadrant_points(u, i, j, q) -> np.ndarray:
    """Rows whose (u_i, u_j) pair lies in the closed quadrant [q, 1]^2.

    Returns an (n_q, 2) array; n_q equals n * empirical_survival(q, q)
    exactly. May be empty.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0, 1), got {q!r}")
    ui, uj = _pair(u, i, j)
    keep = (ui >= q) & (uj >= q)
    return np.column_stack([ui[keep], uj[keep]])
