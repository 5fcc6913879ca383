"""Parameter and result containers shared by the bound evaluators."""
import enum
import json
import math
from dataclasses import dataclass, field

from ..errors import PreconditionError
from ..linalg import HermitianMatrix, as_hermitian, intrinsic_dim, lambda_max


class Regime(str, enum.Enum):
    SUB_GAUSSIAN = "SubGaussian"
    SUB_POISSON = "SubPoisson"
    SUB_EXPONENTIAL = "SubExponential"
    NOT_APPLICABLE = "NotApplicable"


def _positive(name, value):
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise PreconditionError(f"{name} must be a finite positive number, got {value!r}")
    return value


@dataclass(frozen=True)
class TailParams:
    """(alpha, sigma, U, K, x) plus either an ambient dimension or a covariance proxy.

    sigma may be omitted when cov is given; it is then sqrt(lambda_max(cov)).
    """

    alpha: float
    sigma: float = None
    bigU: float = None
    bigK: float = None
    x: float = None
    dim: int = None
    cov: HermitianMatrix = None
    eps: float = 1.0
    n: int = None

    def __post_init__(self):
        _positive("alpha", self.alpha)
        _positive("x", self.x)
        bigK = _positive("bigK", self.bigK)
        bigU = _positive("bigU", self.bigU)
        if bigU < bigK:
            raise PreconditionError(f"need U >= K, got U={bigU!r} < K={bigK!r}")
        if self.dim is not None and self.cov is not None:
            raise PreconditionError("give either dim or cov, not both")
        if self.dim is not None and (int(self.dim) != self.dim or self.dim < 1):
            raise PreconditionError(f"dim must be a positive integer, got {self.dim!r}")
        if not (0 < float(self.eps) <= 1):
            raise PreconditionError(f"eps must lie in (0, 1], got {self.eps!r}")
        if self.n is not None and (int(self.n) != self.n or self.n < 1):
            raise PreconditionError(f"n must be a positive integer, got {self.n!r}")
        if self.cov is not None:
            cov = as_hermitian(self.cov)
            object.__setattr__(self, "cov", cov)
            top = lambda_max(cov)
            if not top > 0:
                raise PreconditionError("cov must have a positive top eigenvalue")
            if self.sigma is None:
                object.__setattr__(self, "sigma", math.sqrt(top))
            elif abs(float(self.sigma) ** 2 - top) > 1e-9 * top:
                raise PreconditionError(
                    f"sigma^2 = {float(self.sigma) ** 2!r} disagrees with lambda_max(cov) = {top!r}")
        if self.sigma is None:
            raise PreconditionError("sigma is required")
        _positive("sigma", self.sigma)

    def require_dim(self):
        if self.dim is None:
            raise PreconditionError("this bound needs the ambient dimension (dim)")
        return int(self.dim)

    def require_cov(self):
        if self.cov is None:
            raise PreconditionError("this bound needs a covariance proxy (cov)")
        return self.cov

    def require_n(self):
        if self.n is None:
            raise PreconditionError("this bound needs the sample count (n)")
        return int(self.n)

    def effective_rank(self):
        return intrinsic_dim(self.require_cov())


@dataclass(frozen=True)
class BoundResult:
    deviation: float
    failure_budget: float
    regime: Regime = Regime.NOT_APPLICABLE
    formula: str = ""
    warnings: tuple = ()
    details: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "deviation": self.deviation,
            "failure_budget": self.failure_budget,
            "regime": Regime(self.regime).value,
            "formula": self.formula,
            "warnings": list(self.warnings),
        }
        if self.details:
            out["details"] = dict(self.details)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=False)


@dataclass(frozen=True)
class BaselineParams:
    """Inputs of the comparison bounds.  Only the fields a given kind uses are checked."""

    t: float = None
    sigma: float = None
    bigK: float = None
    bigU: float = None
    x: float = None
    dim: int = None
    n: int = None
    alpha: float = None
    cov: HermitianMatrix = None
    mean_cov: HermitianMatrix = None
    bigM: float = None
    free_constant: float = None
    free_constants: tuple = None
