"""Cluster-aware combination of anomaly scores and AUC-ROC evaluation.

Detector columns are combined on the common rank scale: an aggregation
within each detector cluster (sharpening the shared signal), then an
aggregation across the cluster aggregates (so different clusters can
contribute different anomalies). Detectors labeled noise are dropped
from cluster-aware combinations, which is the point of clustering first:
detectors similar to nothing else are assumed uninformative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .empirical import _as_values

__all__ = ["EnsembleSpec", "RocResult", "combine_scores", "auc_roc"]

_WITHIN_OPS = ("all", "mean", "max")
_ACROSS_OPS = ("mean", "max")


@dataclass(frozen=True)
class EnsembleSpec:
    """How to collapse detector columns into one score per observation.

    ``within="all"`` skips the cluster stage and applies the across
    operator directly over every column, ignoring ``cluster_labels``.
    Otherwise columns with a negative cluster label (noise) are excluded.
    """

    within: str
    across: str
    cluster_labels: np.ndarray = None

    def __post_init__(self):
        if self.within not in _WITHIN_OPS:
            raise ValueError(f"within must be one of {_WITHIN_OPS}")
        if self.across not in _ACROSS_OPS:
            raise ValueError(f"across must be one of {_ACROSS_OPS}")
        if self.cluster_labels is not None:
            object.__setattr__(
                self, "cluster_labels", np.asarray(self.cluster_labels, dtype=int)
            )


@dataclass(frozen=True)
class RocResult:
    """AUC with the ROC curve as (false positive rate, true positive rate) rows."""

    auc: float
    curve: np.ndarray


def combine_scores(u, spec: EnsembleSpec) -> np.ndarray:
    """Combine pseudo-score columns into a single score vector.

    ``u`` holds rank pseudo-observations (all columns on the same scale).
    Raising any pseudo-value never lowers the combined score.
    """
    values = _as_values(u)
    ops = {"mean": np.mean, "max": np.max}
    across = ops[spec.across]
    if spec.within == "all":
        return across(values, axis=1)
    if spec.cluster_labels is None:
        raise ValueError("cluster labels are required unless within='all'")
    labels = spec.cluster_labels
    if labels.shape[0] != values.shape[1]:
        raise ValueError(f"{labels.shape[0]} cluster labels for {values.shape[1]} columns")
    clusters = np.unique(labels[labels >= 0])
    if clusters.size == 0:
        raise ValueError("no non-noise clusters to combine within")
    within = ops[spec.within]
    aggregates = np.column_stack(
        [within(values[:, labels == c], axis=1) for c in clusters]
    )
    return across(aggregates, axis=1)


def auc_roc(scores, labels) -> RocResult:
    """AUC-ROC by the rank (Mann-Whitney) statistic, ties counted half.

    Equals the probability that a uniformly random outlier outscores a
    uniformly random inlier, with ties worth 1/2 -- exactly the
    trapezoidal area under the returned curve. Needs both classes
    present.
    """
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be equal-length vectors")
    positive = labels.astype(bool)
    n_pos = int(np.count_nonzero(positive))
    n_neg = scores.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("need at least one outlier and one inlier label")
    ranks = rankdata(scores)
    u_stat = float(np.sum(ranks[positive])) - n_pos * (n_pos + 1) / 2.0
    auc = u_stat / (n_pos * n_neg)

    # curve: sweep thresholds downward through the distinct scores
    order = np.argsort(-scores, kind="stable")
    sorted_pos = positive[order].astype(float)
    tp = np.cumsum(sorted_pos)
    fp = np.arange(1, scores.size + 1) - tp
    distinct = np.nonzero(np.diff(scores[order], append=np.nan))[0]
    curve = np.column_stack(
        [
            np.concatenate([[0.0], fp[distinct] / n_neg]),
            np.concatenate([[0.0], tp[distinct] / n_pos]),
        ]
    )
    return RocResult(float(auc), curve)
