"""Deviation bounds for max_k lambda_max(S_k) of a matrix supermartingale
with psi_alpha-bounded increments, in Bennett and Bernstein form.

On the event {sum Sigma_i <= sigma^2, sum U_i^2 <= U^2, max U_i <= K} the
bounds hold with probability at least P(E) - failure_budget.
"""
import math
from dataclasses import dataclass

from ..errors import PreconditionError
from ..special import underline_log, z_threshold
from .params import BoundResult, Regime, TailParams

WARN_LOG_BLOCK_CONSERVATIVE = "alpha_lt_1_log_block_conservative"
WARN_LOG_BLOCK_LITERAL = "alpha_lt_1_log_block_literal"
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def log_block(alpha, bigU, bigK, literal=False):
    """Additive constant inside the heavy-tail correction.

    Default: 4 ln(2U/K) + (4/alpha) ln(4/(alpha e)), the larger of the two
    constants that appear for this term.  literal=True gives
    2 ln(4U/K) + (4/alpha) ln(4/(alpha e)).
    """
    head = 2.0 * math.log(4.0 * bigU / bigK) if literal else 4.0 * math.log(2.0 * bigU / bigK)
    return head + (4.0 / alpha) * math.log(4.0 / (alpha * math.e))


def heavy_tail_extra(alpha, x, bigU, bigK, literal=False, x_factor=None):
    """(3K/alpha) * x * (2x + A_ln)^((1-alpha)/alpha) for alpha < 1, else 0.

    x_factor overrides the leading x (used to evaluate variants of the term).
    """
    if alpha >= 1:
        return 0.0
    base = 2.0 * x + log_block(alpha, bigU, bigK, literal)
    lead = x if x_factor is None else x_factor
    return (3.0 * bigK / alpha) * lead * base ** ((1.0 - alpha) / alpha)


def martingale_budget(alpha, x, d):
    """d e^{-x}, plus e^{-x} when alpha < 1."""
    return d * math.exp(-x) + (math.exp(-x) if alpha < 1 else 0.0)


def _log_block_warnings(alpha, literal):
    if alpha >= 1:
        return ()
    return (WARN_LOG_BLOCK_LITERAL if literal else WARN_LOG_BLOCK_CONSERVATIVE,)


def bennett_increment(sigma, bigK, z, alpha, x, coef=4.0):
    """coef K z x / min{2 alpha z^alpha, underline_log((K z / sigma)^2 x)}."""
    ratio = (bigK * z / sigma) ** 2 * x
    denom = min(2.0 * alpha * z ** alpha, underline_log(ratio))
    return coef * bigK * z * x / denom


def bennett_core(sigma, bigK, z, alpha, x, coef=4.0):
    return sigma * math.sqrt(2.0 * x) + bennett_increment(sigma, bigK, z, alpha, x, coef)


def bernstein_core(sigma, bigK, z, x, coef=0.75):
    return sigma * math.sqrt(2.0 * x) + coef * bigK * z * x


def _regime_tag(p):
    if p.alpha < 1:
        return Regime.NOT_APPLICABLE
    return regime_classify(p).regime


def thm1_bennett(p: TailParams, literal=False) -> BoundResult:
    d = p.require_dim()
    z = z_threshold(p.bigU, p.sigma, p.alpha)
    dev = bennett_core(p.sigma, p.bigK, z, p.alpha, p.x)
    dev += heavy_tail_extra(p.alpha, p.x, p.bigU, p.bigK, literal)
    return BoundResult(dev, martingale_budget(p.alpha, p.x, d), _regime_tag(p),
                       "martingale_bennett", _log_block_warnings(p.alpha, literal), {"z": z})


def thm1_bernstein(p: TailParams, literal=False) -> BoundResult:
    d = p.require_dim()
    z = z_threshold(p.bigU, p.sigma, p.alpha)
    dev = bernstein_core(p.sigma, p.bigK, z, p.x)
    dev += heavy_tail_extra(p.alpha, p.x, p.bigU, p.bigK, literal)
    return BoundResult(dev, martingale_budget(p.alpha, p.x, d), _regime_tag(p),
                       "martingale_bernstein", _log_block_warnings(p.alpha, literal), {"z": z})


def thm1_mixed(p: TailParams, literal=False) -> BoundResult:
    """The smaller of the Bennett and Bernstein forms (they hold jointly)."""
    ben = thm1_bennett(p, literal)
    ber = thm1_bernstein(p, literal)
    best = ben if ben.deviation <= ber.deviation else ber
    return BoundResult(best.deviation, ben.failure_budget, _regime_tag(p), "martingale_mixed",
                       best.warnings, {"z": best.details["z"], "bennett": ben.deviation,
                                       "bernstein": ber.deviation, "attained_by": best.formula})


def _golden_section(f, lo, hi, tol):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def thm1_monotone(p: TailParams, grid=64, literal=False) -> BoundResult:
    """Bernstein form made monotone in sigma: inf over sigma' >= sigma.

    Replacing sigma by any larger sigma' keeps the event E true, so
    inf_{sigma' >= sigma} [sigma' sqrt(2x) + 3/4 K z(U, sigma'; alpha) x]
    is a valid bound.  z(U, sigma') stops changing once sigma' >= U, after
    which the objective only grows; the search interval is therefore
    [sigma, max(sigma + K z(U, K sqrt x) sqrt x, U)], scanned on a log grid
    and refined by golden-section search around the best grid point.
    """
    d = p.require_dim()
    if int(grid) != grid or grid < 2:
        raise PreconditionError("grid must be an integer >= 2")
    x, K, U, alpha = p.x, p.bigK, p.bigU, p.alpha
    extra = heavy_tail_extra(alpha, x, U, K, literal)

    def objective(s):
        return s * math.sqrt(2.0 * x) + 0.75 * K * z_threshold(U, s, alpha) * x

    z_ref = z_threshold(U, K * math.sqrt(x), alpha)
    lo = p.sigma
    hi = max(lo + K * z_ref * math.sqrt(x), U)
    ratio = hi / lo
    pts = [lo * ratio ** (i / (grid - 1)) for i in range(grid)]
    vals = [objective(s) for s in pts]
    i_best = min(range(grid), key=lambda i: vals[i])
    a = pts[max(i_best - 1, 0)]
    b = pts[min(i_best + 1, grid - 1)]
    s_opt, v_opt = _golden_section(objective, a, b, 1e-13)
    if vals[i_best] < v_opt:
        s_opt, v_opt = pts[i_best], vals[i_best]
    # clamp: never worse than the plain Bernstein value at sigma itself
    if vals[0] <= v_opt:
        s_opt, v_opt = lo, vals[0]
    dev = v_opt + extra
    envelope = p.sigma * math.sqrt(2.0 * x) + 2.5 * K * z_ref * x + extra
    if dev > envelope * (1 + 1e-12):
        raise AssertionError(f"monotone bound {dev!r} exceeds its closed-form envelope {envelope!r}")
    return BoundResult(dev, martingale_budget(alpha, x, d), _regime_tag(p), "martingale_monotone_bernstein",
                       _log_block_warnings(alpha, literal), {"sigma_opt": s_opt, "envelope": envelope})


@dataclass(frozen=True)
class RegimeInfo:
    regime: Regime
    envelope: float
    ratio: float
    poisson_cutoff: float


def regime_classify(p: TailParams) -> RegimeInfo:
    """Which of the three tail regimes (K z/sigma)^2 x falls into, with the
    matching closed-form envelope of the mixed bound."""
    if p.alpha < 1:
        return RegimeInfo(Regime.NOT_APPLICABLE, math.nan, math.nan, math.nan)
    z = z_threshold(p.bigU, p.sigma, p.alpha)
    K, sigma, x, alpha = p.bigK, p.sigma, p.x, p.alpha
    r = (K * z / sigma) ** 2 * x
    expo = 2.0 * alpha * z ** alpha
    cutoff = math.exp(expo) if expo < 709 else math.inf
    if r <= 1.0:
        return RegimeInfo(Regime.SUB_GAUSSIAN, 6.0 * sigma * math.sqrt(2.0 * x), r, cutoff)
    # compare in log space so a huge cutoff does not overflow
    if math.log(r) <= expo:
        return RegimeInfo(Regime.SUB_POISSON, 8.0 * K * z * x / math.log(r), r, cutoff)
    return RegimeInfo(Regime.SUB_EXPONENTIAL, 6.0 * K * z * x / (alpha * z ** alpha), r, cutoff)


def tail_threshold_tau(bigK, bigU, alpha, x):
    """tau = K (2x + 4 ln(2U/K) + (4/alpha) ln(4/(alpha e)))^(1/alpha)."""
    if not bigU >= bigK > 0:
        raise PreconditionError("need U >= K > 0")
    if not alpha > 0:
        raise PreconditionError("alpha must be > 0")
    base = 2.0 * x + 4.0 * math.log(2.0 * bigU / bigK) + (4.0 / alpha) * math.log(4.0 / (alpha * math.e))
    if base < 0:
        raise PreconditionError("threshold base is negative for this x")
    return bigK * base ** (1.0 / alpha)


def tail_prob_bound(bigK, bigU, alpha, tau):
    """2 (4/(alpha e))^(2/alpha) (U/tau)^2 exp(-(tau/K)^alpha / 2), for tau >= K."""
    if not bigU >= bigK > 0:
        raise PreconditionError("need U >= K > 0")
    if not tau >= bigK:
        raise PreconditionError("tail_prob_bound needs tau >= K")
    return 2.0 * (4.0 / (alpha * math.e)) ** (2.0 / alpha) * (bigU / tau) ** 2 * math.exp(-0.5 * (tau / bigK) ** alpha)
