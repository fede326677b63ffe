"""Upper-quadrant copula similarity for anomaly-score matrices.

Measures how strongly pairs of anomaly detectors agree on their most
extreme scores by fitting a survival Clayton copula to the joint upper
quadrant of rank-transformed scores, evaluates competing similarity
measures through spectral embeddings and the Davies-Bouldin index, and
combines detector scores into a cluster-aware ensemble.
"""

from .copula import (
    THETA_MAX,
    THETA_MIN,
    clayton_cdf,
    clayton_density,
    gaussian_copula_cdf,
    sample_gaussian_copula,
    sample_survival_clayton,
    survival_clayton_cdf,
    survival_clayton_density,
    survival_clayton_survival,
    upper_tail_limit,
)
from .empirical import (
    PseudoMatrix,
    ScoreMatrix,
    empirical_copula,
    empirical_survival,
    quadrant_points,
    rank_transform,
)
from .estimators import (
    QuadrantFit,
    ThetaEstimate,
    UndefinedMeasureError,
    chi_bar_hat,
    chi_hat,
    fit_pair,
    fit_theta_f,
    fit_theta_s,
    quadrant_loglik,
    ucorr,
)
from .similarity import MEASURES, SimilarityMatrix, build_similarity
from .clustering import (
    ClusterEvaluation,
    SpectralEmbedding,
    davies_bouldin,
    dbscan_cluster,
    dbscan_eps_by_gap,
    spectral_embed,
)
from .ensemble import EnsembleSpec, RocResult, auc_roc, combine_scores
from .datagen import (
    DatasetBundle,
    gen_block,
    gen_mixture,
    gen_t_ensemble,
    gen_two_anom,
)

__version__ = "0.1.0"

__all__ = [
    "THETA_MAX",
    "THETA_MIN",
    "clayton_cdf",
    "clayton_density",
    "gaussian_copula_cdf",
    "sample_gaussian_copula",
    "sample_survival_clayton",
    "survival_clayton_cdf",
    "survival_clayton_density",
    "survival_clayton_survival",
    "upper_tail_limit",
    "PseudoMatrix",
    "ScoreMatrix",
    "empirical_copula",
    "empirical_survival",
    "quadrant_points",
    "rank_transform",
    "QuadrantFit",
    "ThetaEstimate",
    "UndefinedMeasureError",
    "chi_bar_hat",
    "chi_hat",
    "fit_pair",
    "fit_theta_f",
    "fit_theta_s",
    "quadrant_loglik",
    "ucorr",
    "MEASURES",
    "SimilarityMatrix",
    "build_similarity",
    "ClusterEvaluation",
    "SpectralEmbedding",
    "davies_bouldin",
    "dbscan_cluster",
    "dbscan_eps_by_gap",
    "spectral_embed",
    "EnsembleSpec",
    "RocResult",
    "auc_roc",
    "combine_scores",
    "DatasetBundle",
    "gen_block",
    "gen_mixture",
    "gen_t_ensemble",
    "gen_two_anom",
    "__version__",
]
