"""psi_alpha Orlicz (quasi-)norms.

||X||_{psi_alpha} = inf{t > 0 : E exp((|X|/t)^alpha) <= 2}.

Three entry points: the plug-in estimator on a weighted sample, the exact
norm of a few analytic laws (adaptive quadrature inside a bisection on t),
and a yes/no audit of a declared norm against samples.
"""
import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize, special

from .errors import DivergenceError, DomainError, ValidationError
from .special import DEFAULT_TOL

LN2 = math.log(2.0)


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Nonnegative realizations with optional probability weights."""

    values: np.ndarray
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size == 0:
            raise ValidationError("SampleSet must be nonempty")
        if not np.all(np.isfinite(v)):
            raise ValidationError("SampleSet values must be finite")
        if np.any(v < 0):
            raise ValidationError("SampleSet values must be >= 0 (apply |.| or (.)_+ first)")
        if self.weights is None:
            w = np.full(v.size, 1.0 / v.size)
        else:
            w = np.asarray(self.weights, dtype=float).ravel()
            if w.shape != v.shape:
                raise ValidationError("weights and values differ in length")
            if np.any(w < 0) or not np.all(np.isfinite(w)):
                raise ValidationError("weights must be finite and >= 0")
            if abs(float(np.sum(w)) - 1.0) > 1e-12:
                raise ValidationError(f"weights sum to {np.sum(w)!r}, expected 1")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_json_obj(cls, obj):
        if not isinstance(obj, dict) or "values" not in obj:
            raise ValidationError('SampleSet JSON needs a "values" list')
        return cls(obj["values"], obj.get("weights"))

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    def to_json_obj(self):
        return {"values": self.values.tolist(), "weights": self.weights.tolist()}

    def scaled(self, c):
        return SampleSet(self.values * float(c), self.weights)


def _check_alpha(alpha):
    alpha = float(alpha)
    if not alpha > 0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be a finite positive number, got {alpha!r}")
    return alpha


def defining_mean(samples, alpha, t):
    """Weighted mean of psi_alpha(v/t) = exp((v/t)^alpha) - 1."""
    alpha = _check_alpha(alpha)
    s = samples if isinstance(samples, SampleSet) else SampleSet(samples)
    with np.errstate(over="ignore"):
        psi = np.expm1((s.values / float(t)) ** alpha)
    return float(np.dot(s.weights, psi))


def _log_mean_exp(values, weights, alpha, t):
    mask = weights > 0
    return float(special.logsumexp((values[mask] / t) ** alpha, b=weights[mask]))


def empirical_orlicz_norm(samples, alpha, tol=DEFAULT_TOL):
    """Plug-in Orlicz norm of the (weighted) empirical measure.

    The root of log E exp((v/t)^alpha) = ln 2 is bracketed by
    [max(v)/w_hi, max(v)/(ln 2)^(1/alpha)], with psi_alpha(w_hi) = 1/min weight:
    at the left end the largest atom alone already contributes 1, at the
    right end every term is at most psi_alpha((ln 2)^(1/alpha)) = 1.
    """
    alpha = _check_alpha(alpha)
    s = samples if isinstance(samples, SampleSet) else SampleSet(samples)
    vmax = float(np.max(s.values))
    if vmax == 0.0:
        return 0.0
    positive = s.weights[s.values == vmax]
    w_at_max = float(np.sum(positive))
    w_hi = math.log1p(1.0 / w_at_max) ** (1.0 / alpha)
    t_hi = vmax / LN2 ** (1.0 / alpha)
    t_lo = vmax / w_hi
    if t_hi <= t_lo * (1 + 1e-15):
        return t_hi

    def f(log_t):
        return _log_mean_exp(s.values, s.weights, alpha, math.exp(log_t)) - LN2

    lo, hi = math.log(t_lo), math.log(t_hi)
    f_lo, f_hi = f(lo), f(hi)
    if f_hi >= 0:
        return t_hi
    if f_lo <= 0:
        return t_lo
    root = optimize.brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps,
                           maxiter=max(tol.max_iter, 200))
    return math.exp(root)


def certify_declared_norm(samples, declared_U, alpha, margin):
    """True iff the sample mean of psi_alpha(v/declared_U) is <= 1 + margin."""
    if not declared_U > 0:
        raise DomainError("declared_U must be > 0")
    return defining_mean(samples, alpha, declared_U) <= 1.0 + float(margin)


# --- analytic laws ---------------------------------------------------------

_LAW_KINDS = ("point_mass", "weibull", "folded_gaussian", "bounded_uniform", "chi")


@dataclass(frozen=True)
class LawSpec:
    """A distribution on [0, inf) with known density.

    kind:
      point_mass       scale = c
      weibull          scale = s, shape = k      P(X > x) = exp(-(x/s)^k)
      folded_gaussian  scale = s                 X = |N(0, s^2)|
      bounded_uniform  scale = b                 X ~ U(0, b)
      chi              scale = c, dof = k        X = c * sqrt(chi^2_k)
    """

    kind: str
    scale: float
    shape: float = None
    dof: int = None

    def __post_init__(self):
        if self.kind not in _LAW_KINDS:
            raise ValidationError(f"unknown law kind {self.kind!r}")
        if not (math.isfinite(self.scale) and self.scale >= 0):
            raise ValidationError("law scale must be finite and >= 0")
        if self.kind != "point_mass" and not self.scale > 0:
            raise ValidationError(f"{self.kind} needs a positive scale")
        if self.kind == "weibull" and not (self.shape is not None and self.shape > 0):
            raise ValidationError("weibull needs a positive shape")
        if self.kind == "chi" and not (self.dof is not None and int(self.dof) == self.dof and self.dof >= 1):
            raise ValidationError("chi needs a positive integer dof")

    @classmethod
    def point_mass(cls, c):
        return cls("point_mass", float(c))

    @classmethod
    def weibull(cls, s, k):
        return cls("weibull", float(s), shape=float(k))

    @classmethod
    def folded_gaussian(cls, s):
        return cls("folded_gaussian", float(s))

    @classmethod
    def bounded_uniform(cls, b):
        return cls("bounded_uniform", float(b))

    @classmethod
    def chi(cls, c, k):
        return cls("chi", float(c), dof=int(k))

    @classmethod
    def from_json_obj(cls, obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValidationError('law JSON needs a "kind"')
        try:
            return cls(obj["kind"], float(obj["scale"]),
                       shape=None if obj.get("shape") is None else float(obj["shape"]),
                       dof=None if obj.get("dof") is None else int(obj["dof"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad law JSON: {exc}") from None

    def to_json_obj(self):
        obj = {"kind": self.kind, "scale": self.scale}
        if self.shape is not None:
            obj["shape"] = self.shape
        if self.dof is not None:
            obj["dof"] = self.dof
        return obj

    def mean(self):
        c = self.scale
        if self.kind == "point_mass":
            return c
        if self.kind == "weibull":
            return c * math.gamma(1 + 1 / self.shape)
        if self.kind == "folded_gaussian":
            return c * math.sqrt(2 / math.pi)
        if self.kind == "bounded_uniform":
            return c / 2
        k = self.dof
        return c * math.sqrt(2) * math.exp(special.gammaln((k + 1) / 2) - special.gammaln(k / 2))

    def second_moment(self):
        c = self.scale
        if self.kind == "point_mass":
            return c * c
        if self.kind == "weibull":
            return c * c * math.gamma(1 + 2 / self.shape)
        if self.kind == "folded_gaussian":
            return c * c
        if self.kind == "bounded_uniform":
            return c * c / 3
        return c * c * self.dof


def _log_integral(log_integrand, a, b, peak, length=1.0):
    """log of int_a^b exp(log_integrand(u)) du.

    The integrand is rescaled by its peak value so nothing overflows.  For an
    infinite upper limit the domain is cut at peak + {1, 4, 16, 64} * length,
    where length is the decay length of the tail; this keeps each quadrature
    panel on a scale where the integrand actually varies.
    """
    g_max = log_integrand(peak) if a <= peak <= b else max(log_integrand(a), log_integrand(min(b, a + 1.0)))
    if g_max > 700:
        return math.inf
    cuts = [a]
    if a < peak < b:
        cuts.append(peak)
    if math.isinf(b):
        cuts.extend(peak + m * length for m in (1.0, 4.0, 16.0, 64.0))
    cuts.append(b)
    total = 0.0
    with warnings.catch_warnings():
        # Close to the divergence edge the 1e-12 target is out of reach and
        # QUADPACK says so.  Those calls only have to decide that the
        # expectation is far above 2, which the returned value still does.
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            if hi <= lo:
                continue
            val, _ = integrate.quad(lambda u: math.exp(log_integrand(u) - g_max), lo, hi,
                                    epsabs=0.0, epsrel=1e-12, limit=400)
            total += val
    if not total > 0 or not math.isfinite(total):
        return math.inf
    return math.log(total) + g_max


def _log_expectation(law, alpha, t):
    """log E exp((X/t)^alpha), +inf when the expectation diverges."""
    c = law.scale
    if law.kind == "point_mass":
        return (c / t) ** alpha
    if law.kind == "weibull":
        # X = s * E^(1/k) with E ~ Exp(1): integrand exp(a u^p - u), a = (s/t)^alpha
        k = law.shape
        p = alpha / k
        a = (c / t) ** alpha
        if p > 1 + 1e-12 or (abs(p - 1) <= 1e-12 and a >= 1):
            return math.inf
        if abs(p - 1) <= 1e-12:
            p = 1.0
        peak = (a * p) ** (1 / (1 - p)) if p < 1 else 0.0
        # tail decay length: 1/(1 - a) in the borderline case p = 1
        length = 1.0 / (1.0 - a) if p == 1.0 else 1.0

        if p == 1.0:
            def g(u):
                return (a - 1.0) * u  # avoids a*u - u cancelling at large u
        else:
            def g(u):
                return (a * u ** p if u > 0 else 0.0) - u
        return _log_integral(g, 0.0, math.inf, peak, length)
    if law.kind in ("folded_gaussian", "chi"):
        k = 1 if law.kind == "folded_gaussian" else law.dof
        a = (c / t) ** alpha
        if alpha > 2 + 1e-12 or (abs(alpha - 2) <= 1e-12 and a >= 0.5):
            return math.inf
        log_norm = (k / 2 - 1) * LN2 + special.gammaln(k / 2)
        # at alpha = 2 the Gaussian factor becomes exp(-(1/2 - a) y^2)
        length = 1.0 / math.sqrt(1.0 - 2.0 * a) if alpha == 2 else 1.0

        def g(y):
            if y <= 0:
                return -math.inf if k > 1 else -log_norm
            return a * y ** alpha + (k - 1) * math.log(y) - 0.5 * y * y - log_norm
        # the integrand's mode, found numerically
        mode = optimize.minimize_scalar(lambda y: -g(y), bounds=(1e-12, (50.0 + 10 * math.sqrt(k)) * length),
                                        method="bounded").x
        return _log_integral(g, 0.0, math.inf, mode, length)
    # bounded uniform: E = int_0^1 exp((b y/t)^alpha) dy
    a = (c / t) ** alpha

    def g(y):
        return a * y ** alpha
    return _log_integral(g, 0.0, 1.0, 1.0)


def law_expectation(law, alpha, t):
    """E exp((X/t)^alpha) for an analytic law (may be +inf)."""
    val = _log_expectation(law, _check_alpha(alpha), float(t))
    return math.exp(val) if val < 709 else math.inf


def law_orlicz_norm(law, alpha, tol=DEFAULT_TOL):
    """Exact Orlicz norm of an analytic law.

    Bisection in log t on the defining condition E exp((X/t)^alpha) = 2,
    where each evaluation is an adaptive quadrature.
    """
    alpha = _check_alpha(alpha)
    if law.kind == "point_mass":
        return law.scale / LN2 ** (1 / alpha)
    if law.kind == "weibull" and law.shape < alpha * (1 - 1e-12):
        raise DivergenceError(f"Weibull shape {law.shape} < alpha {alpha}: psi_alpha norm is infinite")
    if law.kind in ("folded_gaussian", "chi") and alpha > 2 * (1 + 1e-12):
        raise DivergenceError("Gaussian-type tails have infinite psi_alpha norm for alpha > 2")

    def excess(log_t):
        return _log_expectation(law, alpha, math.exp(log_t)) - LN2

    start = math.log(law.scale)
    lo = hi = start
    # expand until the root is bracketed: f(lo) >= 0 >= f(hi)
    for _ in range(200):
        if excess(hi) <= 0:
            break
        hi += 1.0
    else:
        raise DivergenceError("could not find a scale with E psi <= 1")
    for _ in range(200):
        if excess(lo) >= 0:
            break
        lo -= 1.0
    rel = max(tol.rel, 1e-13)
    for _ in range(max(tol.max_iter, 200)):
        if hi - lo <= rel:
            break
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))
