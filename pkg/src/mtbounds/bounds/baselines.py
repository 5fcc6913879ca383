"""Earlier tail bounds, evaluated as displayed, for comparison.

Tail-form kinds return a probability bound at level t.  The two
bounded-difference kinds (Maurer) return a BoundResult at level x.
Bounds whose constants were never made explicit take them from the caller.
"""
import math

from ..errors import PreconditionError
from ..linalg import as_hermitian, intrinsic_dim, matrix_fn, op_norm, trace
from ..special import h
from .params import BaselineParams, BoundResult


def _need(bp, *names):
    vals = []
    for name in names:
        v = getattr(bp, name)
        if v is None:
            raise PreconditionError(f"baseline needs {name}")
        vals.append(v)
    return vals


def _nonneg_t(t):
    t = float(t)
    if not t >= 0:
        raise PreconditionError("t must be >= 0")
    return t


def bernstein_scalar(bp):
    """exp(-t^2 / (2 (sigma^2 + K t / 3)))."""
    t, sigma, K = _need(bp, "t", "sigma", "bigK")
    t = _nonneg_t(t)
    return math.exp(-t * t / (2.0 * (sigma ** 2 + K * t / 3.0)))


def bennett_scalar(bp):
    """exp(-(sigma^2/K^2) h(K t / sigma^2))."""
    t, sigma, K = _need(bp, "t", "sigma", "bigK")
    t = _nonneg_t(t)
    s2 = sigma ** 2
    return math.exp(-(s2 / K ** 2) * h(K * t / s2))


def matrix_freedman(bp):
    """d exp(-(sigma^2/K^2) h(K t / sigma^2)): matrix martingale, bounded increments."""
    (d,) = _need(bp, "dim")
    return d * bennett_scalar(bp)


def matrix_bernstein_moment(bp):
    """d exp(-t^2 / (2 (sigma^2 + K t))): independent matrices under a moment condition."""
    t, sigma, K, d = _need(bp, "t", "sigma", "bigK", "dim")
    t = _nonneg_t(t)
    return d * math.exp(-t * t / (2.0 * (sigma ** 2 + K * t)))


def matrix_orlicz_bernstein(bp):
    """2d exp(-(1/C) t^2 / (sigma^2 + t K (log(n K^2 / sigma^2))^(1/alpha))), alpha >= 1."""
    t, sigma, K, d, n, alpha, C = _need(bp, "t", "sigma", "bigK", "dim", "n", "alpha", "free_constant")
    t = _nonneg_t(t)
    if not C > 0:
        raise PreconditionError("free_constant C must be > 0")
    if alpha < 1:
        raise PreconditionError("this bound is stated for alpha >= 1")
    log_term = math.log(n * K ** 2 / sigma ** 2)
    if log_term < 0:
        raise PreconditionError("log(n K^2 / sigma^2) is negative; the displayed bound is undefined")
    denom = sigma ** 2 + t * K * log_term ** (1.0 / alpha)
    return 2.0 * d * math.exp(-(t * t / denom) / C)


def intrinsic_freedman_threshold(sigma, K):
    """(K + sqrt(K^2 + 36 sigma^2)) / 6, the smallest t for the intrinsic Freedman bound."""
    return (K + math.sqrt(K * K + 36.0 * sigma * sigma)) / 6.0


def intrinsic_freedman(bp):
    """50 tr(min{1, (t/K) E Sigma / sigma^2}) exp(-(t^2/2) / (sigma^2 + t K / 3))."""
    t, sigma, K, mean_cov = _need(bp, "t", "sigma", "bigK", "mean_cov")
    t = _nonneg_t(t)
    t_min = intrinsic_freedman_threshold(sigma, K)
    if t < t_min:
        raise PreconditionError(f"valid only for t >= {t_min!r}, got t={t!r}")
    scaled = as_hermitian(mean_cov) * (t / (K * sigma ** 2))
    capped = matrix_fn(lambda v: min(1.0, v), scaled)
    tr = trace(capped)
    return 50.0 * tr * math.exp(-(t * t / 2.0) / (sigma ** 2 + t * K / 3.0))


def intrinsic_orlicz(bp):
    """C r(Sigma) exp(-c min{t^2/sigma^2, t/M}) for t > c1 max{M, sigma}.

    free_constants = (c, C, c1); sigma^2 = ||Sigma||.
    """
    t, cov, M, consts = _need(bp, "t", "cov", "bigM", "free_constants")
    t = _nonneg_t(t)
    try:
        c, C, c1 = (float(v) for v in consts)
    except (TypeError, ValueError):
        raise PreconditionError("free_constants must be (c, C, c1)") from None
    if not (c > 0 and C > 0 and c1 > 0):
        raise PreconditionError("free constants must be > 0")
    cov = as_hermitian(cov)
    sigma2 = op_norm(cov)
    if not t > c1 * max(M, math.sqrt(sigma2)):
        raise PreconditionError("valid only for t > c1 max{M, sigma}")
    return C * intrinsic_dim(cov) * math.exp(-c * min(t * t / sigma2, t / M))


def _maurer_common(bp):
    U, K, x = _need(bp, "bigU", "bigK", "x")
    if bp.alpha is not None and float(bp.alpha) != 1.0:
        raise PreconditionError("these bounded-difference bounds are stated for alpha = 1")
    if not x > 0:
        raise PreconditionError("x must be > 0")
    return float(U), float(K), float(x)


def maurer_general(bp):
    """2 e U sqrt(x) + 2 e K x for f(Y) - E f(Y)."""
    U, K, x = _maurer_common(bp)
    return BoundResult(2 * math.e * U * math.sqrt(x) + 2 * math.e * K * x, math.exp(-x),
                       formula="maurer_bounded_difference")


def maurer_norm(bp):
    """4 e U sqrt(x) + 4 e K x for ||sum Y_i|| - E||sum Y_i||."""
    U, K, x = _maurer_common(bp)
    return BoundResult(4 * math.e * U * math.sqrt(x) + 4 * math.e * K * x, math.exp(-x),
                       formula="maurer_norm_of_sum")


BASELINES = {
    "bernstein_scalar": bernstein_scalar,
    "bennett_scalar": bennett_scalar,
    "matrix_freedman": matrix_freedman,
    "matrix_bernstein_moment": matrix_bernstein_moment,
    "matrix_orlicz_bernstein": matrix_orlicz_bernstein,
    "intrinsic_freedman": intrinsic_freedman,
    "intrinsic_orlicz": intrinsic_orlicz,
    "maurer_general": maurer_general,
    "maurer_norm": maurer_norm,
}


def baseline(kind, bp: BaselineParams):
    try:
        fn = BASELINES[kind]
    except KeyError:
        raise PreconditionError(f"unknown baseline {kind!r}; choose from {sorted(BASELINES)}") from None
    return fn(bp)
