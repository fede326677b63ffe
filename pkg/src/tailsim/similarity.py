"""Pairwise similarity matrices over the columns of a score matrix.

One rank transform, then the chosen measure on every unordered column
pair. Pair-level failures never abort the build: the entry falls back to
the measure's floor and the failure is recorded in the diagnostics, so a
run over dozens of detectors survives a single degenerate pair.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .copula import THETA_MAX, THETA_MIN
from .empirical import PseudoMatrix, rank_transform
from .estimators import (
    INTERIOR,
    UndefinedMeasureError,
    chi_bar_hat,
    chi_hat,
    fit_pair,
    ucorr,
)

__all__ = ["MEASURES", "SimilarityMatrix", "build_similarity"]

MEASURES = ("theta_a", "theta_s", "theta_f", "chi", "chi_bar", "ucorr")

_THETA_MEASURES = ("theta_a", "theta_s", "theta_f")

# value placed on the diagonal (self-similarity maximum) and the floor
# used when a pair's measure is undefined
_CEILING = {"chi": 1.0, "chi_bar": 1.0, "ucorr": 1.0}
_FLOOR = {"chi": 0.0, "chi_bar": -1.0, "ucorr": -1.0}


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric k x k matrix of one similarity measure at one q level.

    The diagonal holds the measure's maximum (the theta ceiling for the
    model measures, 1 for the baselines). ``diagnostics`` maps pairs
    (i, j), i < j, to a note: a boundary flag for clamped theta fits or
    the failure reason for degraded entries.
    """

    measure: str
    q: float
    values: np.ndarray
    column_names: tuple = ()
    diagnostics: dict = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("similarity entries must be finite")
        if not np.array_equal(values, values.T):
            raise ValueError("similarity matrix must be symmetric")
        values.setflags(write=False)
        k = values.shape[0]
        names = tuple(self.column_names) or tuple(f"det{j}" for j in range(k))
        if len(names) != k:
            raise ValueError(f"{len(names)} column names for {k} columns")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "column_names", names)
        object.__setattr__(self, "diagnostics", dict(self.diagnostics or {}))

    @property
    def k(self):
        return self.values.shape[0]


def build_similarity(scores, measure, q, theta_max=THETA_MAX) -> SimilarityMatrix:
    """Build the pairwise similarity matrix for one measure at level q.

    ``scores`` may be a ScoreMatrix, a PseudoMatrix (already rank
    transformed), or a plain array of raw scores. The rank transform is
    applied once; re-ranking pseudo-observations is a no-op, so both
    input kinds land on the same matrix.
    """
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}; choose from {MEASURES}")
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0, 1), got {q!r}")
    u = scores if isinstance(scores, PseudoMatrix) else rank_transform(scores)
    k = u.k
    bounds = (THETA_MIN, float(theta_max))
    ceiling = bounds[1] if measure in _THETA_MEASURES else _CEILING[measure]
    floor = bounds[0] if measure in _THETA_MEASURES else _FLOOR[measure]

    values = np.full((k, k), ceiling)
    diagnostics = {}
    for i in range(k):
        for j in range(i + 1, k):
            try:
                if measure in _THETA_MEASURES:
                    fit = fit_pair(u, i, j, q, bounds)
                    entry = getattr(fit, measure)
                    if fit.boundary_flag != INTERIOR:
                        diagnostics[(i, j)] = fit.boundary_flag
                elif measure == "chi":
                    entry = chi_hat(u, i, j, q)
                elif measure == "chi_bar":
                    with warnings.catch_warnings(record=True) as caught:
                        warnings.simplefilter("always")
                        entry = chi_bar_hat(u, i, j, q)
                    if caught:
                        diagnostics[(i, j)] = f"degraded: {caught[0].message}"
                else:
                    entry = ucorr(u, i, j, q)
            except UndefinedMeasureError as exc:
                entry = floor
                diagnostics[(i, j)] = f"degraded: {exc}"
            values[i, j] = values[j, i] = entry
    return SimilarityMatrix(measure, q, values, u.column_names, diagnostics)
