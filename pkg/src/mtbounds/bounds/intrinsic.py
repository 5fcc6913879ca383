"""Dimension-free bounds: the ambient d is replaced by the effective rank
r(Sigma) = tr(Sigma)/||Sigma|| of a covariance proxy Sigma."""
import math
from collections import namedtuple

import numpy as np

from ..errors import PreconditionError
from ..linalg import HermitianMatrix, intrinsic_dim, lambda_max
from ..special import h, h_inv, underline_log, z_threshold
from .martingale import _log_block_warnings, bennett_increment, heavy_tail_extra
from .params import BoundResult, TailParams

WARN_EXTRA_WITH_X = "dimension_free_extra_includes_x"
WARN_EXTRA_WITHOUT_X = "dimension_free_extra_without_x"

VariantPair = namedtuple("VariantPair", ["bennett", "bernstein"])


def _resolve_rank(sigma2, cov_or_r):
    """Return (sigma2, r) from either a covariance matrix or a number."""
    if isinstance(cov_or_r, (HermitianMatrix, np.ndarray, list)):
        cov = cov_or_r if isinstance(cov_or_r, HermitianMatrix) else HermitianMatrix(cov_or_r)
        top = lambda_max(cov)
        if sigma2 is None:
            sigma2 = top
        elif abs(float(sigma2) - top) > 1e-9 * max(top, 1e-300):
            raise PreconditionError(f"sigma^2 = {sigma2!r} but lambda_max(cov) = {top!r}")
        return float(sigma2), intrinsic_dim(cov)
    r = float(cov_or_r)
    if not r >= 1:
        raise PreconditionError(f"an effective rank is at least 1, got {r!r}")
    if sigma2 is None:
        raise PreconditionError("sigma^2 is required when only r is given")
    return float(sigma2), r


def thm2_bounded(sigma2, bigK, cov_or_r, x) -> BoundResult:
    """Bounded increments (lambda_max(X_i) <= K): Bennett bound through h^{-1}.

    deviation = (sigma^2/K) h^{-1}(K^2 x / sigma^2), budget r e^{1-x}, x >= 1.
    details['relaxed'] is sigma sqrt(2x) + 2Kx/underline_log((K/sigma)^2 x).
    """
    x = float(x)
    if not x >= 1:
        raise PreconditionError(f"this bound is stated for x >= 1, got x={x!r}")
    bigK = float(bigK)
    if not bigK > 0:
        raise PreconditionError("K must be > 0")
    sigma2, r = _resolve_rank(sigma2, cov_or_r)
    if not sigma2 > 0:
        raise PreconditionError("sigma^2 must be > 0")
    sigma = math.sqrt(sigma2)
    exact = (sigma2 / bigK) * h_inv(bigK * bigK * x / sigma2)
    relaxed = sigma * math.sqrt(2.0 * x) + 2.0 * bigK * x / underline_log((bigK / sigma) ** 2 * x)
    if relaxed < exact * (1 - 1e-12):
        raise AssertionError(f"relaxed form {relaxed!r} below exact form {exact!r}")
    return BoundResult(exact, r * math.exp(1.0 - x), formula="intrinsic_bounded_bennett",
                       details={"relaxed": relaxed, "effective_rank": r})


def thm2_tail(sigma2, bigK, r, t):
    """Tail form: P(max_k lambda_max(S_k) >= t, E) <= e r exp(-(sigma^2/K^2) h(K t / sigma^2))."""
    return math.e * r * math.exp(-(sigma2 / bigK ** 2) * h(bigK * t / sigma2))


def thm3_unbounded(p: TailParams, literal=False) -> VariantPair:
    """Unbounded increments, dimension-free.  Returns (bennett, bernstein).

    With c = (ln(8/eps))^(1/alpha):
      bennett   (1+eps) sigma sqrt(2x) + 7 c K z x / min{2 alpha z^alpha, underline_log((Kz/sigma)^2 x)}
      bernstein (1+eps) sigma sqrt(2x) + 2 c K z x
    both plus the alpha < 1 correction, budget (e r + 1) e^{-x} (+ e^{-x} if alpha < 1).

    The alpha < 1 correction carries the factor max(x, 1) by default, the
    larger of the readings with and without x; literal=True drops x and
    uses the literal log block.
    """
    p.require_cov()
    r = p.effective_rank()
    alpha, x, eps, sigma, K, U = p.alpha, p.x, float(p.eps), p.sigma, p.bigK, p.bigU
    z = z_threshold(U, sigma, alpha)
    c = math.log(8.0 / eps) ** (1.0 / alpha)
    if alpha < 1:
        extra = heavy_tail_extra(alpha, x, U, K, literal, x_factor=1.0 if literal else max(x, 1.0))
        warns = _log_block_warnings(alpha, literal) + ((WARN_EXTRA_WITHOUT_X if literal else WARN_EXTRA_WITH_X),)
    else:
        extra, warns = 0.0, ()
    lead = (1.0 + eps) * sigma * math.sqrt(2.0 * x)
    ben = lead + bennett_increment(sigma, K, z, alpha, x, coef=7.0 * c) + extra
    ber = lead + 2.0 * c * K * z * x + extra
    budget = (math.e * r + 1.0) * math.exp(-x) + (math.exp(-x) if alpha < 1 else 0.0)
    info = {"z": z, "effective_rank": r, "eps": eps}
    return VariantPair(
        BoundResult(ben, budget, formula="intrinsic_unbounded_bennett", warnings=warns, details=info),
        BoundResult(ber, budget, formula="intrinsic_unbounded_bernstein", warnings=warns, details=info),
    )


def thm3_mixed(p: TailParams, literal=False) -> BoundResult:
    pair = thm3_unbounded(p, literal)
    best = min(pair, key=lambda b: b.deviation)
    return BoundResult(best.deviation, best.failure_budget, formula="intrinsic_unbounded_mixed",
                       warnings=best.warnings, details=dict(best.details, attained_by=best.formula))
