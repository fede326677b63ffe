"""Bivariate copulas with controllable upper-tail dependence.

Closed-form CDFs, densities, survival functions, tail limits, and seeded
samplers for the Clayton copula, its survival (point-reflected) version,
and the Gaussian copula. All functions accept scalars or broadcastable
numpy arrays and evaluate in log space wherever plain powers could
overflow (large association near the corners).

The Clayton association parameter ``theta`` lives on (0, inf), with
independence approached as theta -> 0 and comonotonicity as theta -> inf.
Estimation elsewhere in the package restricts theta to
``[THETA_MIN, THETA_MAX]``; the ceiling of 50 is effectively comonotone
(upper tail limit 2**(-1/50) ~ 0.986).
"""

from __future__ import annotations

import numpy as np
from scipy import special

THETA_MIN = 1e-6
THETA_MAX = 50.0

__all__ = [
    "THETA_MIN",
    "THETA_MAX",
    "clayton_cdf",
    "clayton_density",
    "clayton_log_density",
    "survival_clayton_cdf",
    "survival_clayton_density",
    "survival_clayton_log_density",
    "survival_clayton_survival",
    "survival_clayton_log_survival",
    "gaussian_copula_cdf",
    "sample_survival_clayton",
    "sample_gaussian_copula",
    "upper_tail_limit",
]


def _unit_square(u1, u2):
    """Validate and broadcast a pair of coordinates in the closed unit square."""
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    if not (np.all(np.isfinite(u1)) and np.all(np.isfinite(u2))):
        raise ValueError("coordinates must be finite")
    if np.any(u1 < 0.0) or np.any(u1 > 1.0) or np.any(u2 < 0.0) or np.any(u2 > 1.0):
        raise ValueError("coordinates must lie in [0, 1]")
    return np.broadcast_arrays(u1, u2)


def _positive_theta(theta):
    theta = float(theta)
    if not np.isfinite(theta) or theta <= 0.0:
        raise ValueError(f"theta must be positive and finite, got {theta!r}")
    return theta


def _log_generator_sum(u1, u2, theta):
    """log(u1**-theta + u2**-theta - 1) for u1, u2 in (0, 1], overflow-safe.

    With a_i = -theta*log(u_i) >= 0 the sum is exp(a1) + exp(a2) - 1;
    factoring out exp(max(a1, a2)) keeps every exponential in (0, 1].
    """
    a1 = -theta * np.log(u1)
    a2 = -theta * np.log(u2)
    m = np.maximum(a1, a2)
    return m + np.log(np.exp(a1 - m) + np.exp(a2 - m) - np.exp(-m))


def clayton_cdf(u1, u2, theta):
    """Clayton copula CDF, (u1**-theta + u2**-theta - 1)**(-1/theta).

    Grounded on the axes: returns 0 when either coordinate is 0. The
    margins are exactly uniform, so clayton_cdf(u, 1, theta) == u.
    """
    theta = _positive_theta(theta)
    u1, u2 = _unit_square(u1, u2)
    on_axis = (u1 == 0.0) | (u2 == 0.0)
    s1 = np.where(on_axis, 0.5, u1)
    s2 = np.where(on_axis, 0.5, u2)
    value = np.exp(-_log_generator_sum(s1, s2, theta) / theta)
    return np.where(on_axis, 0.0, value)[()]


def clayton_log_density(u1, u2, theta):
    """Log density of the Clayton copula at interior points.

    log(1+theta) - (theta+1)*(log u1 + log u2)
    - (1/theta + 2)*log(u1**-theta + u2**-theta - 1).
    """
    theta = _positive_theta(theta)
    u1, u2 = _unit_square(u1, u2)
    if np.any((u1 == 0.0) | (u1 == 1.0) | (u2 == 0.0) | (u2 == 1.0)):
        raise ValueError(
            "density is evaluated strictly inside the unit square "
            "(it is unbounded on the boundary)"
        )
    log_u = np.log(u1) + np.log(u2)
    inner = _log_generator_sum(u1, u2, theta)
    return (np.log1p(theta) - (theta + 1.0) * log_u - (1.0 / theta + 2.0) * inner)[()]


def clayton_density(u1, u2, theta):
    """Clayton copula density (theta+1)*(u1*u2)**(-theta-1)*(...)**(-1/theta-2)."""
    return np.exp(clayton_log_density(u1, u2, theta))[()]


def survival_clayton_cdf(u1, u2, theta):
    """CDF of the survival Clayton copula.

    The survival relation reflects the Clayton copula through the centre
    of the unit square, moving its (0,0)-corner dependence to the (1,1)
    corner: C_sc(u1, u2) = C_clayton(1-u1, 1-u2) + u1 + u2 - 1.
    """
    u1, u2 = _unit_square(u1, u2)
    value = clayton_cdf(1.0 - u1, 1.0 - u2, theta) + u1 + u2 - 1.0
    # the reflection formula can go a few ulp negative near the axes
    return np.clip(value, 0.0, 1.0)[()]


def survival_clayton_log_density(u1, u2, theta):
    """Log density of the survival Clayton copula (reflected Clayton)."""
    u1, u2 = _unit_square(u1, u2)
    return clayton_log_density(1.0 - u1, 1.0 - u2, theta)


def survival_clayton_density(u1, u2, theta):
    """Density of the survival Clayton copula, c_clayton(1-u1, 1-u2)."""
    u1, u2 = _unit_square(u1, u2)
    return clayton_density(1.0 - u1, 1.0 - u2, theta)


def survival_clayton_survival(q1, q2, theta):
    """Upper-orthant probability P(U1 > q1, U2 > q2) under survival Clayton.

    Equals clayton_cdf(1-q1, 1-q2, theta), and therefore also
    survival_clayton_cdf(q1, q2, theta) + 1 - q1 - q2. Strictly increasing
    in theta at fixed q1 = q2 = q in (0, 1), from (1-q)**2 at independence
    to 1-q in the comonotone limit.
    """
    q1, q2 = _unit_square(q1, q2)
    return clayton_cdf(1.0 - q1, 1.0 - q2, theta)


def survival_clayton_log_survival(q1, q2, theta):
    """log P(U1 > q1, U2 > q2); requires q1, q2 in [0, 1)."""
    theta = _positive_theta(theta)
    q1, q2 = _unit_square(q1, q2)
    if np.any(q1 == 1.0) or np.any(q2 == 1.0):
        raise ValueError("log survival diverges at q == 1")
    return (-_log_generator_sum(1.0 - q1, 1.0 - q2, theta) / theta)[()]


def _owens_t(h, a):
    """Owen's T with exact limits for infinite slope arguments."""
    a = np.asarray(a, dtype=float)
    h = np.asarray(h, dtype=float)
    finite = np.isfinite(a)
    t = special.owens_t(h, np.where(finite, a, 0.0))
    if not np.all(finite):
        # T(h, +inf) = Phi(-|h|)/2, and T is odd in a
        limit = 0.5 * special.ndtr(-np.abs(h))
        t = np.where(np.isposinf(a), limit, t)
        t = np.where(np.isneginf(a), -limit, t)
    return t


def _bvn_cdf(h, k, rho):
    """P(Z1 <= h, Z2 <= k) for standard bivariate normal, correlation rho.

    Owen (1956) identity evaluated through scipy's Owen's T, accurate to
    near machine precision everywhere in rho in (-1, 1).
    """
    h, k = np.broadcast_arrays(np.asarray(h, float), np.asarray(k, float))
    s = np.sqrt(1.0 - rho * rho)
    with np.errstate(divide="ignore", invalid="ignore"):
        slope_h = (k - rho * h) / (h * s)
        slope_k = (h - rho * k) / (k * s)
    value = (
        0.5 * (special.ndtr(h) + special.ndtr(k))
        - _owens_t(h, slope_h)
        - _owens_t(k, slope_k)
        - np.where((h * k > 0) | ((h * k == 0) & (h + k >= 0)), 0.0, 0.5)
    )
    origin = (h == 0.0) & (k == 0.0)
    if np.any(origin):
        value = np.where(origin, 0.25 + np.arcsin(rho) / (2.0 * np.pi), value)
    return np.clip(value, 0.0, 1.0)


def gaussian_copula_cdf(u1, u2, rho):
    """Gaussian copula CDF, Phi_rho(Phi^-1(u1), Phi^-1(u2)).

    ``rho`` must lie strictly inside (-1, 1). Boundary coordinates take
    their trivial copula values: 0 on the axes, the other coordinate on
    the upper edges.
    """
    rho = float(rho)
    if not np.isfinite(rho) or not -1.0 < rho < 1.0:
        raise ValueError(f"rho must lie in (-1, 1), got {rho!r}")
    u1, u2 = _unit_square(u1, u2)
    on_axis = (u1 == 0.0) | (u2 == 0.0)
    top1 = u1 == 1.0
    top2 = u2 == 1.0
    interior = ~(on_axis | top1 | top2)
    s1 = np.where(interior, u1, 0.5)
    s2 = np.where(interior, u2, 0.5)
    value = _bvn_cdf(special.ndtri(s1), special.ndtri(s2), rho)
    value = np.where(top1, u2, np.where(top2, u1, value))
    return np.where(on_axis, 0.0, value)[()]


def sample_survival_clayton(n, theta, seed):
    """Draw n i.i.d. pairs from the survival Clayton copula.

    Gamma-frailty construction: with W ~ Gamma(1/theta) and independent
    unit exponentials E1, E2, the pair (1 + E_i/W)**(-1/theta) is Clayton
    distributed; reflecting u -> 1-u componentwise yields the survival
    version. Stable for any theta in (0, inf) and deterministic given
    ``seed``.

    Returns an (n, 2) array.
    """
    theta = _positive_theta(theta)
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    frailty = rng.gamma(1.0 / theta, size=n)
    shocks = rng.exponential(size=(n, 2))
    with np.errstate(divide="ignore"):
        log_u = -np.log1p(shocks / frailty[:, None]) / theta
    return 1.0 - np.exp(log_u)


def sample_gaussian_copula(n, rho, seed):
    """Draw n i.i.d. pairs from the Gaussian copula with correlation rho.

    Correlated normals via the square-root factorization of the 2x2
    correlation matrix, then the probability integral transform.
    Deterministic given ``seed``. Returns an (n, 2) array.
    """
    rho = float(rho)
    if not np.isfinite(rho) or not -1.0 < rho < 1.0:
        raise ValueError(f"rho must lie in (-1, 1), got {rho!r}")
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, 2))
    z2 = rho * z[:, 0] + np.sqrt(1.0 - rho * rho) * z[:, 1]
    return np.column_stack([special.ndtr(z[:, 0]), special.ndtr(z2)])


def upper_tail_limit(theta, family="survival_clayton"):
    """Limit of P(U1 > q | U2 > q) as q -> 1.

    2**(-1/theta) for the survival Clayton family (1 in the comonotone
    limit theta = inf). The Gaussian family is tail independent for any
    correlation below 1, so the limit is 0; there ``theta`` is read as
    the Gaussian correlation in (-1, 1).
    """
    if family == "survival_clayton":
        theta = float(theta)
        if np.isnan(theta) or theta <= 0.0:
            raise ValueError(f"theta must be positive, got {theta!r}")
        return float(2.0 ** (-1.0 / theta))
    if family == "gaussian":
        rho = float(theta)
        if not -1.0 < rho < 1.0:
            raise ValueError(f"gaussian correlation must lie in (-1, 1), got {rho!r}")
        return 0.0
    raise ValueError(f"unknown copula family {family!r}")
