"""Specializations: i.i.d. averages, scalar martingales, sample covariance,
empirical Bernstein intervals, and bounded-difference (McDiarmid) forms."""
import math
from collections import namedtuple

from ..errors import PreconditionError
from ..special import h_inv, underline_log, z_threshold
from .martingale import bennett_increment, thm1_bennett, thm1_bernstein, thm1_mixed
from .params import BoundResult, TailParams

WARN_COV_EXPONENT_LITERAL = "covariance_exponent_literal_alpha"
WARN_COV_EXPONENT_HALF = "covariance_exponent_half_alpha"

UpperLower = namedtuple("UpperLower", ["upper", "lower"])
BennettBernstein = namedtuple("BennettBernstein", ["bennett", "bernstein"])

_VARIANTS = ("bennett", "bernstein", "mixed")


def _require_alpha_at_least(p_alpha, bound, what):
    if p_alpha < bound:
        raise PreconditionError(f"{what} is stated for alpha >= {bound}, got alpha={p_alpha!r}")


def cor_iid(p: TailParams, variant="bennett") -> BoundResult:
    """Bound on lambda_max of the sample mean (1/n) sum X_i of i.i.d. matrices.

    Here sigma^2 >= ||E X^2|| and K >= ||lambda_max(X)_+||_{psi_alpha} refer to
    one summand; z = z(K, sigma; alpha).
    """
    if variant not in _VARIANTS:
        raise PreconditionError(f"variant must be one of {_VARIANTS}")
    _require_alpha_at_least(p.alpha, 1, "the i.i.d. bound")
    d = p.require_dim()
    n = p.require_n()
    sigma, K, x, alpha = p.sigma, p.bigK, p.x, p.alpha
    z = z_threshold(K, sigma, alpha)
    lead = sigma * math.sqrt(2.0 * x / n)
    ben = lead + bennett_increment(sigma, K, z, alpha, x / n)
    ber = lead + 0.75 * K * z * x / n
    dev = {"bennett": ben, "bernstein": ber, "mixed": min(ben, ber)}[variant]
    return BoundResult(dev, d * math.exp(-x), formula=f"iid_mean_{variant}",
                       details={"z": z, "bennett": ben, "bernstein": ber})


def cor_scalar(p: TailParams, variant="bennett", literal=False) -> BoundResult:
    """The d = 1 case of the martingale bound."""
    if variant not in _VARIANTS:
        raise PreconditionError(f"variant must be one of {_VARIANTS}")
    q = TailParams(alpha=p.alpha, sigma=p.sigma, bigU=p.bigU, bigK=p.bigK, x=p.x, dim=1)
    res = {"bennett": thm1_bennett, "bernstein": thm1_bernstein, "mixed": thm1_mixed}[variant](q, literal)
    return BoundResult(res.deviation, res.failure_budget, res.regime, f"scalar_martingale_{variant}",
                       res.warnings, res.details)


def cor_covariance(p: TailParams, exponent="literal") -> UpperLower:
    """Deviation of the sample second-moment matrix of independent vectors.

    z = z(U, sigma; alpha/2).  The 2 a z^a cap in the upper bound uses
    a = alpha with exponent="literal" and a = alpha/2 with exponent="half".
    """
    _require_alpha_at_least(p.alpha, 2, "the covariance bound")
    if exponent not in ("literal", "half"):
        raise PreconditionError('exponent must be "literal" or "half"')
    d = p.require_dim()
    sigma, K, U, x, alpha = p.sigma, p.bigK, p.bigU, p.x, p.alpha
    z = z_threshold(U, sigma, alpha / 2.0)
    a = alpha if exponent == "literal" else alpha / 2.0
    cap = min(2.0 * a * z ** a, underline_log((K / (math.sqrt(2.0) * sigma)) ** 2 * x))
    upper = 2.0 * sigma * K * z * math.sqrt(x) + 4.0 * K * K * z * x / cap
    kz2 = (K * z) ** 2
    lower = 2.0 * kz2 * h_inv(sigma * sigma * x / (2.0 * kz2))
    lower_relaxed = 2.0 * sigma * K * z * math.sqrt(x) + 2.0 * sigma * sigma * x / underline_log(sigma * sigma * x / kz2)
    warn = (WARN_COV_EXPONENT_LITERAL if exponent == "literal" else WARN_COV_EXPONENT_HALF,)
    budget = d * math.exp(-x)
    return UpperLower(
        BoundResult(upper, budget, formula="covariance_upper", warnings=warn, details={"z": z}),
        BoundResult(lower, budget, formula="covariance_lower", warnings=warn,
                    details={"z": z, "relaxed": lower_relaxed}),
    )


def empirical_z(sigma_hat, bigK, alpha):
    """z_hat = (4 underline_log(K e / sigma_hat))^(1/alpha); infinite at sigma_hat = 0."""
    if sigma_hat == 0:
        return math.inf
    return (4.0 * underline_log(bigK * math.e / sigma_hat)) ** (1.0 / alpha)


def cor_empirical(sigma_hat, bigK, alpha, x, n, d) -> BoundResult:
    """Empirical Bernstein radius for ||mean - E X_1||, valid when n >= 8x.

    deviation = sigma_hat sqrt(2x/n) + 15 K z_hat x / n, budget 3 d e^{-x}.
    A zero empirical variance makes z_hat, and so the radius, infinite.
    """
    sigma_hat, bigK, alpha, x = float(sigma_hat), float(bigK), float(alpha), float(x)
    _require_alpha_at_least(alpha, 1, "the empirical Bernstein bound")
    if not x > 0:
        raise PreconditionError("x must be > 0")
    if int(n) != n or n < 1 or int(d) != d or d < 1:
        raise PreconditionError("n and d must be positive integers")
    if n < 8 * x:
        raise PreconditionError(f"need n >= 8x, got n={n}, 8x={8 * x!r}")
    if not sigma_hat >= 0 or not bigK > 0:
        raise PreconditionError("need sigma_hat >= 0 and K > 0")
    z_hat = empirical_z(sigma_hat, bigK, alpha)
    dev = sigma_hat * math.sqrt(2.0 * x / n) + 15.0 * bigK * z_hat * x / n
    warns = ("zero_empirical_variance",) if sigma_hat == 0 else ()
    return BoundResult(dev, 3.0 * d * math.exp(-x), formula="empirical_bernstein", warnings=warns,
                       details={"z_hat": z_hat})


def mcdiarmid_bound(p: TailParams) -> BennettBernstein:
    """f(Y) - E f(Y) for independent Y_1..Y_n with psi_alpha-bounded differences."""
    _require_alpha_at_least(p.alpha, 1, "the bounded-difference bound")
    n = p.require_n()
    sigma, K, U, x, alpha = p.sigma, p.bigK, p.bigU, p.x, p.alpha
    z = z_threshold(U, sigma, alpha)
    q = (n + 1) / n
    lead = sigma * math.sqrt(2.0 * x * q)
    ben = lead + bennett_increment(sigma * q, K, z, alpha, x)
    ber = lead + 0.75 * K * z * x * q
    budget = math.exp(-x)
    info = {"z": z}
    return BennettBernstein(BoundResult(ben, budget, formula="bounded_difference_bennett", details=info),
                            BoundResult(ber, budget, formula="bounded_difference_bernstein", details=info))


def mcdiarmid_norm_sum(orlicz_norms, second_moments, alpha, x) -> BennettBernstein:
    """Bounded-difference bound for f(y) = ||sum y_i|| / 2 of independent vectors.

    orlicz_norms[i] = || ||Y_i|| ||_{psi_alpha}, second_moments[i] = E||Y_i||^2.
    """
    norms = [float(v) for v in orlicz_norms]
    moments = [float(v) for v in second_moments]
    if not norms or len(norms) != len(moments):
        raise PreconditionError("need one Orlicz norm and one second moment per summand")
    bigK = max(norms)
    bigU = math.sqrt(sum(v * v for v in norms))
    sigma = math.sqrt(sum(moments))
    p = TailParams(alpha=alpha, sigma=sigma, bigU=bigU, bigK=bigK, x=x, n=len(norms))
    pair = mcdiarmid_bound(p)
    info = {"z": pair.bennett.details["z"], "bigK": bigK, "bigU": bigU, "sigma": sigma, "n": len(norms)}
    return BennettBernstein(
        BoundResult(pair.bennett.deviation, pair.bennett.failure_budget, formula="norm_sum_bennett", details=info),
        BoundResult(pair.bernstein.deviation, pair.bernstein.failure_budget, formula="norm_sum_bernstein",
                    details=info),
    )
