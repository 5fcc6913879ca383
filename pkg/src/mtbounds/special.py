"""Scalar special functions behind every deviation bound.

phi(t) = e^t - 1 - t and its convex conjugate h(x) = (1+x)ln(1+x) - x are
the two Chernoff-type functions.  The rest (h_inv, upsilon, rho, z_threshold,
g_inv, underline_log) are built on them.  Everything here is a pure function
of floats.
"""
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

_PHI_SERIES_CUTOFF = 1e-4
_UPSILON_SERIES_CUTOFF = 1e-3


@dataclass(frozen=True)
class Tolerance:
    """Stopping rule for the iterative inverses."""

    abs: float = 1e-12
    rel: float = 1e-12
    max_iter: int = 100

    def __post_init__(self):
        if not self.abs > 0:
            raise DomainError("Tolerance.abs must be > 0")
        if not self.rel >= 0:
            raise DomainError("Tolerance.rel must be >= 0")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError("Tolerance.max_iter must be a positive integer")


DEFAULT_TOL = Tolerance()


def _finite(t, name="t"):
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"{name} must be finite, got {t!r}")
    return t


def phi(t):
    """e^t - 1 - t, with a Taylor series for |t| < 1e-4."""
    t = _finite(t)
    if abs(t) < _PHI_SERIES_CUTOFF:
        return t * t * (0.5 + t * (1.0 / 6 + t * (1.0 / 24 + t / 120)))
    if t > 709.0:
        return math.inf
    return math.expm1(t) - t


def phi_prime(t):
    """Derivative of phi, e^t - 1."""
    t = _finite(t)
    return math.expm1(t) if t <= 709.0 else math.inf


def phi_minus_quadratic(t):
    """phi(t) - t^2/2 = sum_{k>=3} t^k/k!, accurate for small |t|.

    For |t| < 1 the power series is summed directly; the closed form would
    cancel most significant digits there.
    """
    t = _finite(t)
    if abs(t) < 1.0:
        term = t * t * t / 6.0
        total = 0.0
        k = 3
        while True:
            total += term
            k += 1
            term *= t / k
            if abs(term) <= 1e-18 * abs(total) or k > 40:
                break
        return total
    return phi(t) - 0.5 * t * t


def h(x):
    """(1+x) ln(1+x) - x for x > -1."""
    x = float(x)
    if not x > -1.0 or math.isnan(x):
        raise DomainError(f"h(x) requires x > -1, got {x!r}")
    if math.isinf(x):
        return math.inf
    if abs(x) < _PHI_SERIES_CUTOFF:
        # sum_{k>=2} (-1)^k x^k / (k(k-1))
        return x * x * (0.5 + x * (-1.0 / 6 + x * (1.0 / 12 - x / 20)))
    return (1.0 + x) * math.log1p(x) - x


def underline_log(x):
    """Truncated logarithm max(ln x, 1)."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"underline_log requires x > 0, got {x!r}")
    if math.isinf(x):
        return math.inf
    return max(math.log(x), 1.0)


def h_inv_envelopes(u):
    """The two closed-form upper envelopes of h^{-1}(u).

    Returns (sqrt(2u) + 2u/underline_log(2u), sqrt(2u) + u/3).
    """
    u = float(u)
    root = math.sqrt(2.0 * u)
    if u == 0:
        return 0.0, 0.0
    return root + 2.0 * u / underline_log(2.0 * u), root + u / 3.0


def h_inv(u, tol=DEFAULT_TOL):
    """Inverse of h on [0, inf).

    Safeguarded Newton iteration inside the bracket
    [sqrt(2u), min(envelopes)].  The lower end holds because h(t) <= t^2/2
    for t >= 0, the upper ends are the two analytic envelopes.
    """
    u = float(u)
    if not u >= 0 or math.isnan(u):
        raise DomainError(f"h_inv requires u >= 0, got {u!r}")
    if u == 0:
        return 0.0
    if math.isinf(u):
        return math.inf
    target = tol.abs + tol.rel * u
    lo = math.sqrt(2.0 * u)
    hi = min(h_inv_envelopes(u))
    f_lo = h(lo) - u
    if abs(f_lo) <= target:
        return lo
    f_hi = h(hi) - u
    if abs(f_hi) <= target:
        return hi
    t = 0.5 * (lo + hi)
    for _ in range(tol.max_iter):
        f = h(t) - u
        if abs(f) <= target:
            # one more Newton step is nearly free and gains several digits
            slope = math.log1p(t)
            polished = t - f / slope if slope > 0 else t
            if lo <= polished <= hi and abs(h(polished) - u) <= abs(f):
                return polished
            return t
        if f > 0:
            hi = t
        else:
            lo = t
        slope = math.log1p(t)
        step = t - f / slope if slope > 0 else math.nan
        if lo < step < hi:
            t = step
        else:
            t = 0.5 * (lo + hi)
        if hi - lo <= 4 * math.ulp(hi):
            # bracket exhausted: the best representable point is the answer
            t_best = lo if abs(h(lo) - u) <= abs(h(hi) - u) else hi
            if abs(h(t_best) - u) <= max(target, 8 * math.ulp(u)):
                return t_best
            break
    raise ConvergenceError(f"h_inv({u!r}) did not converge in {tol.max_iter} iterations")


def upsilon(t):
    """t*phi(t) / (phi(t) - t^2/2), continuously extended by 3 at t = 0."""
    t = _finite(t)
    if abs(t) < _UPSILON_SERIES_CUTOFF:
        num = 0.5 + t * (1.0 / 6 + t * (1.0 / 24 + t * (1.0 / 120 + t / 720)))
        den = 1.0 / 6 + t * (1.0 / 24 + t * (1.0 / 120 + t * (1.0 / 720 + t / 5040)))
        return num / den
    if abs(t) < 1.0:
        return t * phi(t) / phi_minus_quadratic(t)
    # written as t / (1 - t^2/(2 phi)) so that overflow of phi at large t
    # gives the right limit instead of inf/inf
    p = phi(t)
    q = 0.5 * t * t / p
    return t / (1.0 - q)


def rho(lam, alpha, x):
    """(phi(lam*x) - (lam*x)^2/2) * exp(-x^alpha) for x >= 0."""
    lam = float(lam)
    alpha = float(alpha)
    x = float(x)
    if not lam > 0:
        raise DomainError("rho requires lambda > 0")
    if not alpha > 0:
        raise DomainError("rho requires alpha > 0")
    if not x >= 0 or math.isinf(x):
        raise DomainError(f"rho is only defined for finite x >= 0, got {x!r}")
    if x == 0:
        return 0.0
    lx = lam * x
    xa = x ** alpha
    if lx > 700:
        # both factors are extreme; combine in log space
        expo = lx - xa + math.log1p(-(1 + lx + 0.5 * lx * lx) * math.exp(-lx))
        return math.exp(expo) if expo < 709 else math.inf
    return phi_minus_quadratic(lx) * math.exp(-xa)


def z_threshold(bigU, sigma, alpha):
    """Threshold z(U, sigma; alpha).

    alpha >= 1: (4 * underline_log(e*U/sigma))^(1/alpha)
    alpha <  1: ((4/alpha) ln(e/alpha) + 4 (ln(U/sigma))_+)^(1/alpha)
    """
    bigU = float(bigU)
    sigma = float(sigma)
    alpha = float(alpha)
    if not (bigU > 0 and sigma > 0 and alpha > 0):
        raise DomainError("z_threshold requires U, sigma, alpha > 0")
    if alpha >= 1:
        inner = 4.0 * underline_log(math.e * bigU / sigma)
    else:
        inner = (4.0 / alpha) * math.log(math.e / alpha) + 4.0 * max(math.log(bigU / sigma), 0.0)
    z = inner ** (1.0 / alpha)
    # alpha*z^alpha >= 4 holds exactly; allow for the rounding in the power
    assert alpha * z ** alpha >= 4.0 * (1 - 1e-12), "z_threshold post-condition failed"
    return z


def g_breakpoint(lambda0):
    """(x0, t0) for g_{lambda0}: x0 = lambda0*phi'(lambda0) - phi(lambda0), t0 = phi'(lambda0)."""
    lambda0 = float(lambda0)
    if not lambda0 > 0:
        raise DomainError("lambda0 must be > 0")
    t0 = phi_prime(lambda0)
    x0 = lambda0 * t0 - phi(lambda0)
    return x0, t0


def g_inv(lambda0, x, tol=DEFAULT_TOL):
    """Inverse of g_{lambda0}: h^{-1} below the breakpoint, linear above it."""
    x = float(x)
    if not x >= 0 or math.isnan(x):
        raise DomainError(f"g_inv requires x >= 0, got {x!r}")
    x0, t0 = g_breakpoint(lambda0)
    if x <= x0:
        return h_inv(x, tol)
    return t0 + (x - x0) / float(lambda0)
