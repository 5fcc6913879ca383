"""Simulated martingale difference sequences with analytic per-step declarations.

Every kind draws its increments from a lane bank (one lane per trial) in
blocks of consecutive steps, and declares deterministic bounds on the
conditional second moment Sigma_i and on the conditional Orlicz norm
U_i = || lambda_max(X_i)_+ | past ||_{psi_alpha}.  Because the
declarations hold surely, the event E of the martingale bounds has
probability one for the declared aggregates.

Increment blocks come in four layouts, chosen per kind:
  scalar    (lanes, steps)             d = 1
  rank_one  (lanes, steps)             X = c v v^T with a fixed unit v
  diagonal  (lanes, steps, d)          X = diag(.)
  full      (lanes, steps, d, d)       dense Hermitian
"""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma

from ..errors import ConfigError
from ..linalg import HermitianMatrix
from ..orlicz import LawSpec, law_orlicz_norm

KINDS = ("gaussian_wigner", "rademacher_fixed", "weibull_rank_one",
         "scalar_adaptive_gaussian", "scalar_weibull_centered")
VOL_FUNCTIONS = ("constant", "sign_switch", "tanh")
LN2 = math.log(2.0)


@dataclass(frozen=True)
class Declarations:
    """Deterministic per-step bounds for one spec.

    sigma_sq[i] = ||Sigma_i||, U[i] = declared U_i, cov = sum_i Sigma_i.
    bounded_K is a sure bound on lambda_max(X_i) (None if unbounded).
    iid_sigma / iid_K describe one summand when the steps are i.i.d.
    centered_K bounds || ||X_i - E X_i|| ||_{psi_alpha} (i.i.d. kinds).
    """

    alpha: float
    sigma_sq: np.ndarray
    U: np.ndarray
    cov: HermitianMatrix
    bounded_K: float = None
    iid_sigma: float = None
    iid_K: float = None
    centered_K: float = None

    @property
    def sigma(self):
        return math.sqrt(float(np.linalg.eigvalsh(self.cov.data)[-1]))

    @property
    def bigU(self):
        return math.sqrt(float(np.sum(self.U ** 2)))

    @property
    def bigK(self):
        return float(np.max(self.U))


def _op_norm(a):
    # the harness uses LAPACK for speed; the library eigensolver is checked against it in tests
    return float(np.max(np.abs(np.linalg.eigvalsh(np.asarray(a)))))


def _weibull_mean_var(scale, shape):
    m1 = scale * gamma(1.0 + 1.0 / shape)
    m2 = scale ** 2 * gamma(1.0 + 2.0 / shape)
    return float(m1), float(m2 - m1 * m1)


def _positive(obj, key, default=None):
    v = obj.get(key, default)
    if v is None:
        raise ConfigError(f"spec needs {key!r}")
    try:
        v = float(v)
    except (TypeError, ValueError):
        raise ConfigError(f"{key!r} must be a number") from None
    if not (v > 0 and math.isfinite(v)):
        raise ConfigError(f"{key!r} must be a finite positive number, got {v!r}")
    return v


def _dimension(obj, key="d", default=None):
    v = obj.get(key, default)
    if v is None or isinstance(v, bool) or int(v) != v or v < 1:
        raise ConfigError(f"{key!r} must be a positive integer, got {v!r}")
    return int(v)


@dataclass(frozen=True, eq=False)
class MartingaleSpec:
    """A generator kind, its step count n, declared exponent alpha and kind parameters."""

    kind: str
    n: int
    declared_alpha: float
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown generator kind {self.kind!r}; choose from {KINDS}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not (float(self.declared_alpha) > 0):
            raise ConfigError("declared_alpha must be > 0")
        object.__setattr__(self, "declared_alpha", float(self.declared_alpha))
        object.__setattr__(self, "_impl", _IMPLS[self.kind](self))

    @classmethod
    def from_json_obj(cls, obj):
        if not isinstance(obj, dict):
            raise ConfigError("spec must be a JSON object")
        obj = dict(obj)
        try:
            kind = obj.pop("kind")
            n = obj.pop("n")
        except KeyError as exc:
            raise ConfigError(f"spec needs {exc.args[0]!r}") from None
        nested = obj.pop("params", {})
        if not isinstance(nested, dict):
            raise ConfigError("spec 'params' must be a JSON object")
        obj.update(nested)
        alpha = obj.pop("declared_alpha", None)
        if alpha is None:
            alpha = _DEFAULT_ALPHA.get(kind, lambda o: 1.0)(obj)
        return cls(kind, n, alpha, obj)

    def to_json_obj(self):
        out = {"kind": self.kind, "n": self.n, "declared_alpha": self.declared_alpha}
        out.update(self.params)
        return out

    @property
    def dim(self):
        return self._impl.dim

    @property
    def layout(self):
        return self._impl.layout

    def declarations(self):
        return self._impl.declarations()

    def init_state(self, lanes):
        return self._impl.init_state(lanes)

    def draw(self, bank, state, count):
        return self._impl.draw(bank, state, count)

    def to_matrices(self, block):
        """Convert a block of any layout to (lanes, steps, d, d) arrays."""
        return self._impl.to_matrices(block)


class _Kind:
    layout = "scalar"
    dim = 1

    def __init__(self, spec):
        self.spec = spec
        self.alpha = spec.declared_alpha

    def init_state(self, lanes):
        return None

    def to_matrices(self, block):
        return block if self.layout == "full" else block[..., None, None]


class _Wigner(_Kind):
    """X = scale (G + G^*) / sqrt(2d) with standard complex Gaussian G."""

    def __init__(self, spec):
        super().__init__(spec)
        p = spec.params
        self.dim = _dimension(p)
        self.scale = _positive(p, "scale", 1.0)
        self.layout = "scalar" if self.dim == 1 else "full"
        self._iu = np.triu_indices(self.dim, 1)

    def frobenius_law(self):
        # ||X||_F = (scale / sqrt d) * chi with d^2 degrees of freedom
        return LawSpec.chi(self.scale / math.sqrt(self.dim), self.dim ** 2)

    def declarations(self):
        n, d = self.spec.n, self.dim
        u = law_orlicz_norm(self.frobenius_law(), self.alpha)
        return Declarations(self.alpha, np.full(n, self.scale ** 2), np.full(n, u),
                            HermitianMatrix(np.eye(d) * (n * self.scale ** 2)),
                            iid_sigma=self.scale, iid_K=u, centered_K=u)

    def draw(self, bank, state, count):
        d = self.dim
        g = bank.normals(count * d * d).reshape(bank.lanes, count, d * d)
        if d == 1:
            return self.scale * g[:, :, 0]
        h = np.zeros((bank.lanes, count, d, d), dtype=complex)
        idx = np.arange(d)
        h[:, :, idx, idx] = g[:, :, :d]
        off = g[:, :, d:].reshape(bank.lanes, count, -1, 2)
        vals = (off[..., 0] + 1j * off[..., 1]) / math.sqrt(2.0)
        h[:, :, self._iu[0], self._iu[1]] = vals
        h[:, :, self._iu[1], self._iu[0]] = np.conj(vals)
        return h * (self.scale / math.sqrt(d))


class _Rademacher(_Kind):
    """X_i = eps_i A_i with fixed Hermitian A_i and independent signs."""

    def __init__(self, spec):
        super().__init__(spec)
        raw = spec.params.get("directions")
        if not isinstance(raw, list) or not raw:
            raise ConfigError("rademacher_fixed needs a nonempty 'directions' list of matrices")
        try:
            mats = [HermitianMatrix.from_json_obj(m) for m in raw]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad direction matrix: {exc}") from None
        if len(mats) == 1:
            mats = mats * spec.n
        if len(mats) != spec.n:
            raise ConfigError(f"need 1 or n={spec.n} direction matrices, got {len(mats)}")
        dims = {m.dim for m in mats}
        if len(dims) != 1:
            raise ConfigError("direction matrices must share one dimension")
        self.dim = dims.pop()
        self.stack = np.array([m.data for m in mats])
        self.norms = np.array([_op_norm(m.data) for m in mats])
        self.identical = bool(np.all(self.stack == self.stack[0]))
        if self.dim == 1:
            self.layout = "scalar"
            self.coef = self.stack[:, 0, 0].real
        elif all(np.count_nonzero(a - np.diag(np.diag(a))) == 0 for a in self.stack):
            self.layout = "diagonal"
            self.coef = np.real(np.diagonal(self.stack, axis1=1, axis2=2))
        else:
            self.layout = "full"
        self.mats = mats

    def declarations(self):
        u = self.norms / LN2 ** (1.0 / self.alpha)
        squares = [m.data @ m.data for m in self.mats]
        sigma_sq = np.array([_op_norm(s) for s in squares])
        cov = HermitianMatrix(np.sum(squares, axis=0))
        iid = {}
        if self.identical:
            iid = dict(iid_sigma=float(self.norms[0]), iid_K=float(u[0]), centered_K=float(u[0]))
        return Declarations(self.alpha, sigma_sq, u, cov, bounded_K=float(np.max(self.norms)), **iid)

    def init_state(self, lanes):
        return {"step": 0}

    def draw(self, bank, state, count):
        eps = bank.signs(count)
        k = state["step"]
        state["step"] = k + count
        if self.layout == "scalar":
            return eps * self.coef[k:k + count]
        if self.layout == "diagonal":
            return eps[:, :, None] * self.coef[None, k:k + count, :]
        return eps[:, :, None, None] * self.stack[None, k:k + count]

    def to_matrices(self, block):
        if self.layout == "diagonal":
            d = self.dim
            out = np.zeros(block.shape + (d,))
            idx = np.arange(d)
            out[..., idx, idx] = block
            return out
        if self.layout == "full":
            return block
        return block[..., None, None]


class _WeibullCentered(_Kind):
    """X = xi - E xi with xi ~ Weibull(scale, shape); d = 1."""

    def __init__(self, spec):
        super().__init__(spec)
        p = spec.params
        self.scale = _positive(p, "scale", 1.0)
        self.shape = _positive(p, "shape", 1.0)
        self.mean, self.var = _weibull_mean_var(self.scale, self.shape)

    def _declared_u(self):
        # (xi - E xi)_+ <= xi, so ||xi||_{psi_alpha} suffices; the added term keeps
        # the declaration valid as a bound on both |xi - E xi| and its positive part
        norm = law_orlicz_norm(LawSpec.weibull(self.scale, self.shape), self.alpha)
        return norm + self.mean / LN2 ** (1.0 / self.alpha)

    def _rank_one_cov(self):
        return HermitianMatrix(np.array([[self.spec.n * self.var]]))

    def declarations(self):
        n = self.spec.n
        u = self._declared_u()
        return Declarations(self.alpha, np.full(n, self.var), np.full(n, u), self._rank_one_cov(),
                            iid_sigma=math.sqrt(self.var), iid_K=u, centered_K=u)

    def _draw_coef(self, bank, count):
        u = bank.uniforms(count)
        return self.scale * (-np.log(u)) ** (1.0 / self.shape) - self.mean


class _ScalarWeibull(_WeibullCentered):
    def draw(self, bank, state, count):
        return self._draw_coef(bank, count)


class _WeibullRankOne(_WeibullCentered):
    """X = (xi - E xi) v v^T with a fixed unit vector v."""

    def __init__(self, spec):
        super().__init__(spec)
        p = spec.params
        self.dim = _dimension(p)
        v = p.get("direction")
        v = np.ones(self.dim) if v is None else np.asarray(v, dtype=float)
        if v.shape != (self.dim,) or not np.linalg.norm(v) > 0:
            raise ConfigError("direction must be a nonzero vector of length d")
        self.v = v / np.linalg.norm(v)
        self.layout = "scalar" if self.dim == 1 else "rank_one"

    def _rank_one_cov(self):
        return HermitianMatrix(self.spec.n * self.var * np.outer(self.v, self.v))

    def draw(self, bank, state, count):
        return self._draw_coef(bank, count)

    def to_matrices(self, block):
        return block[..., None, None] * np.outer(self.v, self.v)


class _AdaptiveGaussian(_Kind):
    """X_i = s(S_{i-1}) g_i with a bounded volatility s depending on the past sum."""

    def __init__(self, spec):
        super().__init__(spec)
        p = spec.params
        self.vol = p.get("vol", "sign_switch")
        if self.vol not in VOL_FUNCTIONS:
            raise ConfigError(f"unknown volatility function {self.vol!r}; choose from {VOL_FUNCTIONS}")
        self.s_max = _positive(p, "s_max", 1.0)
        self.s_min = _positive(p, "s_min", 0.5 * self.s_max)
        if self.s_min > self.s_max:
            raise ConfigError("need s_min <= s_max")

    def volatility(self, past_sum):
        if self.vol == "constant":
            return np.full_like(past_sum, self.s_max)
        if self.vol == "sign_switch":
            return np.where(past_sum <= 0.0, self.s_max, self.s_min)
        w = 0.5 * (1.0 + np.tanh(past_sum / self.s_max))
        return self.s_min + (self.s_max - self.s_min) * w

    def declarations(self):
        n = self.spec.n
        u = law_orlicz_norm(LawSpec.folded_gaussian(self.s_max), self.alpha)
        iid = {}
        if self.vol == "constant":
            iid = dict(iid_sigma=self.s_max, iid_K=u, centered_K=u)
        return Declarations(self.alpha, np.full(n, self.s_max ** 2), np.full(n, u),
                            HermitianMatrix(np.array([[n * self.s_max ** 2]])), **iid)

    def init_state(self, lanes):
        return {"sum": np.zeros(lanes)}

    def draw(self, bank, state, count):
        g = bank.normals(count)
        out = np.empty_like(g)
        s = state["sum"]
        for j in range(count):
            out[:, j] = self.volatility(s) * g[:, j]
            s = s + out[:, j]
        state["sum"] = s
        return out


_IMPLS = {
    "gaussian_wigner": _Wigner,
    "rademacher_fixed": _Rademacher,
    "weibull_rank_one": _WeibullRankOne,
    "scalar_adaptive_gaussian": _AdaptiveGaussian,
    "scalar_weibull_centered": _ScalarWeibull,
}

_DEFAULT_ALPHA = {
    "gaussian_wigner": lambda p: 2.0,
    "scalar_adaptive_gaussian": lambda p: 2.0,
    "rademacher_fixed": lambda p: 1.0,
    "weibull_rank_one": lambda p: float(p.get("shape", 1.0)),
    "scalar_weibull_centered": lambda p: float(p.get("shape", 1.0)),
}


def generate_sequence(spec, stream):
    """One trial's increments X_1..X_n from a single-lane stream.

    Returns a list of floats for d = 1 and of HermitianMatrix otherwise.
    """
    if getattr(stream, "lanes", None) != 1:
        raise ConfigError("generate_sequence needs a single-lane stream (see prng_stream)")
    state = spec.init_state(1)
    block = spec.draw(stream, state, spec.n)
    if spec.dim == 1:
        return [float(v) for v in np.real(np.asarray(block).reshape(-1))]
    mats = spec.to_matrices(block)[0]
    return [HermitianMatrix(m) for m in mats]
