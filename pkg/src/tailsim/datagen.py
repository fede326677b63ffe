"""Seeded generators for the benchmark datasets.

Each generator returns a :class:`DatasetBundle`: a score matrix, a
reference clustering of the detector columns (-1 marks columns expected
to cluster with nothing), and, where meaningful, binary outlier labels
for the rows. All generators are deterministic functions of their seed.

The four scenarios probe different failure modes of similarity measures:

* ``gen_block`` -- two-component mixture on the unit square whose upper
  block is either tightly dependent (same-cluster column pairs) or
  independent (cross-cluster pairs) while the quadrant point *count* is
  identical for both; count-based measures are blind here.
* ``gen_mixture`` -- correlated inliers plus a small anomaly component
  that is scaled up on half the columns only, giving three distinct
  levels of upper-tail association across column pair types.
* ``gen_two_anom`` -- high-dimensional data with two anomaly modes living
  in complementary subspaces, scored by two families of PCA-projection
  detectors that should form two clusters.
* ``gen_t_ensemble`` -- heavy-tailed t columns in four frailty-sharing
  clusters buried among Gaussian noise columns; the testbed for
  cluster-aware score combination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .empirical import ScoreMatrix, rank_transform

__all__ = [
    "DatasetBundle",
    "gen_block",
    "gen_mixture",
    "gen_two_anom",
    "gen_t_ensemble",
    "GENERATORS",
]


@dataclass(frozen=True)
class DatasetBundle:
    """A score matrix with its reference column clustering and row labels."""

    scores: ScoreMatrix
    detector_cluster_labels: np.ndarray
    outlier_labels: np.ndarray = None

    def __post_init__(self):
        labels = np.asarray(self.detector_cluster_labels, dtype=int)
        if labels.shape[0] != self.scores.k:
            raise ValueError(
                f"{labels.shape[0]} cluster labels for {self.scores.k} columns"
            )
        object.__setattr__(self, "detector_cluster_labels", labels)
        if self.outlier_labels is not None:
            out = np.asarray(self.outlier_labels, dtype=int)
            if out.shape[0] != self.scores.n:
                raise ValueError(f"{out.shape[0]} outlier labels for {self.scores.n} rows")
            object.__setattr__(self, "outlier_labels", out)


def _equicorrelated_uniforms(rng, n, d, rho):
    """n draws of d uniforms whose pairwise copula is Gaussian with corr rho."""
    shared = rng.standard_normal((n, 1))
    own = rng.standard_normal((n, d))
    return ndtr(np.sqrt(rho) * shared + np.sqrt(1.0 - rho) * own)


def _equicorrelated_normals(rng, n, d, rho):
    shared = rng.standard_normal((n, 1))
    own = rng.standard_normal((n, d))
    return np.sqrt(rho) * shared + np.sqrt(1.0 - rho) * own


def gen_block(
    n=5000, b=0.85, k_per_cluster=4, rho=0.9, seed=0, upper_weight=0.15
) -> DatasetBundle:
    """Two-block mixture data with cluster structure only in the upper block.

    Each row lies with probability ``upper_weight`` in the upper block
    [b, 1]^k and otherwise in the lower block [0, b]^k. Lower-block
    coordinates are independent uniforms, identical for every column
    pair. Upper-block coordinates are Gaussian-copula dependent with
    correlation ``rho`` within each of the two column clusters and
    independent across clusters. Any pair therefore puts the same mass
    in a quadrant below b -- only the arrangement inside the upper block
    distinguishes the pair types.
    """
    if not 0.0 < b < 1.0:
        raise ValueError(f"b must lie in (0, 1), got {b!r}")
    rng = np.random.default_rng(seed)
    k = 2 * k_per_cluster
    upper = rng.random(n) < upper_weight
    n_upper = int(upper.sum())
    values = np.empty((n, k))
    values[~upper] = rng.uniform(0.0, b, size=(n - n_upper, k))
    for c in range(2):
        block = _equicorrelated_uniforms(rng, n_upper, k_per_cluster, rho)
        values[np.ix_(upper, range(c * k_per_cluster, (c + 1) * k_per_cluster))] = (
            b + (1.0 - b) * block
        )
    names = tuple(f"blk{c}_{i}" for c in range(2) for i in range(k_per_cluster))
    labels = np.repeat(np.arange(2), k_per_cluster)
    return DatasetBundle(ScoreMatrix(values, names), labels)


def gen_mixture(n_in=5000, n_anom=200, seed=0) -> DatasetBundle:
    """Spiked-anomaly mixture on 8 columns, already on the copula scale.

    Inliers are equicorrelated normals (pairwise 0.6); anomalies are
    equicorrelated normals (pairwise 0.8) with the first 4 columns scaled
    by 10, so only those columns see the anomalies as extremes. Absolute
    values put all anomalous behavior in the upper tail, and the rank
    transform is applied so entries land in (0, 1).
    """
    rng = np.random.default_rng(seed)
    d, d_spiked, scale = 8, 4, 10.0
    inliers = np.abs(_equicorrelated_normals(rng, n_in, d, 0.6))
    anomalies = _equicorrelated_normals(rng, n_anom, d, 0.8)
    anomalies[:, :d_spiked] *= scale
    data = np.vstack([inliers, np.abs(anomalies)])
    names = tuple(f"spk{i}" for i in range(d_spiked)) + tuple(
        f"reg{i}" for i in range(d - d_spiked)
    )
    pseudo = rank_transform(data)
    labels = np.repeat([0, 1], [d_spiked, d - d_spiked])
    outliers = np.repeat([0, 1], [n_in, n_anom])
    return DatasetBundle(ScoreMatrix(pseudo.values, names), labels, outliers)


def gen_two_anom(seed=0, n_in=5000, n_anom_each=100) -> DatasetBundle:
    """Two anomaly modes in complementary subspaces, scored by 8 PCA detectors.

    Latent dimension 100. Inliers vary with unit scale on a 30-dim
    subspace and 100x smaller scale on the 70-dim complement. Type-1
    anomalies (rows n_in..n_in+99) carry 30x larger complement noise;
    type-2 anomalies (the last rows) are spiked 3x on a 5-dim slice of
    the 30. A fixed random rotation hides the axes. Detectors score each
    row by the norm of its projection onto the top {3,5,8,10} principal
    components (cluster 0, catches type 2) or the bottom {3,5,8,10}
    (cluster 1, catches type 1).
    """
    rng = np.random.default_rng(seed)
    d, d_main, d_spike = 100, 30, 5
    main_sd, rest_sd = 1.0, 1e-2
    noise_factor, spike_factor = 30.0, 3.0

    def draw(count, rest_scale):
        x = rng.standard_normal((count, d))
        x[:, :d_main] *= main_sd
        x[:, d_main:] *= rest_sd * rest_scale
        return x

    inliers = draw(n_in, 1.0)
    type1 = draw(n_anom_each, noise_factor)
    type2 = draw(n_anom_each, 1.0)
    type2[:, :d_spike] *= spike_factor
    data = np.vstack([inliers, type1, type2])
    rotation, _ = np.linalg.qr(rng.standard_normal((d, d)))
    data = data @ rotation.T

    centered = data - data.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    coords = centered @ vt.T
    sizes = (3, 5, 8, 10)
    columns = [np.linalg.norm(coords[:, :p], axis=1) for p in sizes]
    columns += [np.linalg.norm(coords[:, -p:], axis=1) for p in sizes]
    names = tuple(f"top{p}" for p in sizes) + tuple(f"bot{p}" for p in sizes)
    labels = np.repeat([0, 1], len(sizes))
    outliers = np.repeat([0, 1], [n_in, 2 * n_anom_each])
    return DatasetBundle(ScoreMatrix(np.column_stack(columns), names), labels, outliers)


def gen_t_ensemble(seed=0, n=5000, nu=2.1, n_noise=50, outlier_frac=0.03) -> DatasetBundle:
    """Heavy-tailed clustered detectors among Gaussian noise detectors.

    Twelve t-distributed columns (nu degrees of freedom) in 4 clusters of
    3: X_ij = Z_ij * sqrt(nu / V_ic(j)) with the chi-square V shared
    within a row's cluster, which forces co-extremes inside each cluster.
    ``n_noise`` standard normal columns follow. Rows whose first-12-dim
    distance to the origin is among the top ``outlier_frac`` are labeled
    outliers, and every column j acts as the detector |X_ij|.
    """
    rng = np.random.default_rng(seed)
    n_clusters, cluster_size = 4, 3
    k_t = n_clusters * cluster_size
    z = rng.standard_normal((n, k_t + n_noise))
    v = rng.chisquare(nu, size=(n, n_clusters))
    x = z.copy()
    for c in range(n_clusters):
        cols = slice(c * cluster_size, (c + 1) * cluster_size)
        x[:, cols] = z[:, cols] * np.sqrt(nu / v[:, [c]])
    norms = np.linalg.norm(x[:, :k_t], axis=1)
    n_out = int(np.ceil(outlier_frac * n))
    outliers = np.zeros(n, dtype=int)
    outliers[np.argsort(norms)[-n_out:]] = 1
    names = tuple(f"t{c}_{i}" for c in range(n_clusters) for i in range(cluster_size))
    names += tuple(f"noise{i}" for i in range(n_noise))
    labels = np.concatenate(
        [np.repeat(np.arange(n_clusters), cluster_size), np.full(n_noise, -1)]
    )
    return DatasetBundle(ScoreMatrix(np.abs(x), names), labels, outliers)


GENERATORS = {
    "block": gen_block,
    "mixture": gen_mixture,
    "two_anom": gen_two_anom,
    "t_ensemble": gen_t_ensemble,
}
