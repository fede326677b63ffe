"""Spectral embedding, Davies-Bouldin evaluation, and DBSCAN clustering.

The similarity matrix W is treated as a weighted graph over detectors.
Its unnormalized Laplacian L = D - W has a zero eigenvalue whose
eigenvector is proportional to the all-ones vector; the informative
embedding coordinates are the eigenvectors of the next-smallest
eigenvalues. With a reference clustering of the detectors, the
Davies-Bouldin index of the embedded points scores how well the measure
separated the clusters (lower is better). Without a reference, DBSCAN on
the dissimilarity exp(-W) discovers clusters and flags loner detectors
as noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.cluster import DBSCAN

__all__ = [
    "SpectralEmbedding",
    "ClusterEvaluation",
    "spectral_embed",
    "davies_bouldin",
    "dbscan_cluster",
    "dbscan_eps_by_gap",
]


def _square_values(w):
    values = np.array(w.values if hasattr(w, "values") else w, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {values.shape}")
    if not np.allclose(values, values.T, rtol=1e-12, atol=1e-12):
        raise ValueError("similarity matrix must be symmetric")
    return 0.5 * (values + values.T)


@dataclass(frozen=True)
class SpectralEmbedding:
    """Laplacian eigenvector coordinates for the graph nodes.

    ``coordinates`` is (k, m): column i holds the unit-norm eigenvector
    of the (i+1)-th smallest Laplacian eigenvalue, sign-fixed so its
    first nonzero entry is positive. ``eigenvalues`` holds the m+1
    smallest eigenvalues (the first is ~0).
    """

    coordinates: np.ndarray
    eigenvalues: np.ndarray


@dataclass(frozen=True)
class ClusterEvaluation:
    """Davies-Bouldin index with its per-cluster ingredients."""

    db_index: float
    per_cluster_spread: np.ndarray
    centroid_distances: np.ndarray
    labels: np.ndarray


def spectral_embed(w, m=1) -> SpectralEmbedding:
    """Embed the detectors by the low eigenvectors of L = D - W.

    Measures that can go negative (chi_bar, ucorr) are shifted by their
    most negative off-diagonal entry first, since graph affinities must
    be nonnegative; the diagonal never enters L (self-loops cancel in
    D - W). Output is deterministic under the sign convention.
    """
    values = _square_values(w)
    k = values.shape[0]
    m = int(m)
    if m < 1 or k < m + 1:
        raise ValueError(f"need 1 <= m <= k-1, got m={m} for k={k}")
    off = ~np.eye(k, dtype=bool)
    shift = min(float(values[off].min()), 0.0)
    affinity = values - shift
    np.fill_diagonal(affinity, 0.0)
    laplacian = np.diag(affinity.sum(axis=1)) - affinity
    eigenvalues, eigenvectors = np.linalg.eigh(laplacian)
    coords = eigenvectors[:, 1 : m + 1].copy()
    for col in coords.T:
        nonzero = np.nonzero(np.abs(col) > 1e-12)[0]
        if nonzero.size and col[nonzero[0]] < 0:
            col *= -1.0
    return SpectralEmbedding(coords, eigenvalues[: m + 1].copy())


def davies_bouldin(embedding, labels, spread="scaled-norm") -> ClusterEvaluation:
    """Davies-Bouldin index of embedded points under reference labels.

    Per cluster i with points G(i) and centroid a_i the spread is
    s_i = (1/n_i) * sqrt(sum_{j in G(i)} ||v_j - a_i||^2); pass
    spread="rms" for the textbook root-mean-square variant
    sqrt(mean ||v_j - a_i||^2) instead. Cluster pairs are scored by
    r_ij = (s_i + s_j) / ||a_i - a_j|| and DB is the mean over clusters
    of the worst r_ij. Lower means more compact, better separated
    clusters. Coincident centroids make the index undefined.
    """
    coords = embedding.coordinates if hasattr(embedding, "coordinates") else embedding
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    if coords.shape[0] == 1:
        coords = coords.T
    labels = np.asarray(labels)
    if labels.shape[0] != coords.shape[0]:
        raise ValueError(
            f"{labels.shape[0]} labels for {coords.shape[0]} embedded points"
        )
    if spread not in ("scaled-norm", "rms"):
        raise ValueError(f"unknown spread variant {spread!r}")
    unique = np.unique(labels)
    n_c = unique.size
    if n_c < 2:
        raise ValueError("need at least 2 clusters")

    centroids = np.empty((n_c, coords.shape[1]))
    spreads = np.empty(n_c)
    for idx, lab in enumerate(unique):
        members = coords[labels == lab]
        centroids[idx] = members.mean(axis=0)
        sq = float(np.sum((members - centroids[idx]) ** 2))
        if spread == "scaled-norm":
            spreads[idx] = np.sqrt(sq) / members.shape[0]
        else:
            spreads[idx] = np.sqrt(sq / members.shape[0])

    diffs = centroids[:, None, :] - centroids[None, :, :]
    distances = np.sqrt(np.sum(diffs**2, axis=-1))
    off = ~np.eye(n_c, dtype=bool)
    if np.any(distances[off] == 0.0):
        raise ValueError("degenerate clustering: coincident cluster centroids")
    # diagonal ratio forced to 0 so the row max only sees other clusters
    ratios = (spreads[:, None] + spreads[None, :]) / np.where(off, distances, np.inf)
    db = float(np.mean(ratios.max(axis=1)))
    return ClusterEvaluation(db, spreads, distances, np.array(labels))


def dbscan_eps_by_gap(dissimilarity, min_pts=3) -> float:
    """Pick a DBSCAN radius from the largest gap in k-th neighbor distances.

    For each point take the distance to its min_pts-th nearest neighbor
    (self included, matching DBSCAN's core-point count); the chosen eps
    is the midpoint of the widest gap in those sorted distances, which
    separates would-be core points from loners.
    """
    d = np.asarray(dissimilarity, dtype=float)
    kth = np.sort(d, axis=1)[:, min(min_pts, d.shape[1]) - 1]
    kth.sort()
    if kth.size < 2:
        return float(kth[0])
    gaps = np.diff(kth)
    g = int(np.argmax(gaps))
    return float(0.5 * (kth[g] + kth[g + 1]))


def dbscan_cluster(w, eps=None, min_pts=3) -> np.ndarray:
    """DBSCAN on the dissimilarity exp(-W); returns labels with -1 noise.

    The diagonal dissimilarity exp(-w_ii) is effectively 0 for the theta
    ceiling, so points always neighbor themselves. When ``eps`` is None
    it is chosen by :func:`dbscan_eps_by_gap`.
    """
    values = _square_values(w)
    dissimilarity = np.exp(-values)
    if eps is None:
        eps = dbscan_eps_by_gap(dissimilarity, min_pts)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    if min_pts < 1:
        raise ValueError(f"min_pts must be at least 1, got {min_pts!r}")
    model = DBSCAN(eps=eps, min_samples=min_pts, metric="precomputed")
    return model.fit_predict(dissimilarity)
