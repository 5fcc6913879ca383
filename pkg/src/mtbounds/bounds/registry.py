"""Theorem tags shared by the command line and the simulation harness."""
from ..errors import PreconditionError
from .specializations import cor_covariance, cor_iid, cor_scalar, mcdiarmid_bound
from .intrinsic import thm2_bounded, thm3_mixed, thm3_unbounded
from .martingale import thm1_bennett, thm1_bernstein, thm1_mixed, thm1_monotone


def _thm2(p, opts):
    cov_or_r = p.cov if p.cov is not None else p.require_dim()
    return thm2_bounded(p.sigma ** 2, p.bigK, cov_or_r, p.x)


def _cov(side):
    def run(p, opts):
        pair = cor_covariance(p, exponent=opts.get("cov_exponent", "literal"))
        return getattr(pair, side)
    return run


def _literal(fn):
    return lambda p, opts: fn(p, literal=opts.get("literal", False))


_EVALUATORS = {
    "thm1-ben": _literal(thm1_bennett),
    "thm1-ber": _literal(thm1_bernstein),
    "thm1-mixed": _literal(thm1_mixed),
    "thm1-monotone": lambda p, opts: thm1_monotone(p, grid=opts.get("grid", 64), literal=opts.get("literal", False)),
    "thm2": _thm2,
    "thm3": _literal(thm3_mixed),
    "thm3-ben": lambda p, opts: thm3_unbounded(p, literal=opts.get("literal", False)).bennett,
    "thm3-ber": lambda p, opts: thm3_unbounded(p, literal=opts.get("literal", False)).bernstein,
    "cor-iid": lambda p, opts: cor_iid(p, "bennett"),
    "cor-iid-ber": lambda p, opts: cor_iid(p, "bernstein"),
    "cor-scalar": lambda p, opts: cor_scalar(p, "bennett", literal=opts.get("literal", False)),
    "cor-scalar-ber": lambda p, opts: cor_scalar(p, "bernstein", literal=opts.get("literal", False)),
    "cor-scalar-mixed": lambda p, opts: cor_scalar(p, "mixed", literal=opts.get("literal", False)),
    "cor-cov-upper": _cov("upper"),
    "cor-cov-lower": _cov("lower"),
    "mcdiarmid-ben": lambda p, opts: mcdiarmid_bound(p).bennett,
    "mcdiarmid-ber": lambda p, opts: mcdiarmid_bound(p).bernstein,
}

THEOREM_TAGS = tuple(_EVALUATORS)


def evaluate(tag, p, **opts):
    """Evaluate the bound named by tag at TailParams p.

    Options: literal (bool), grid (int, thm1-monotone), cov_exponent
    ("literal" or "half", covariance bounds).
    """
    try:
        fn = _EVALUATORS[tag]
    except KeyError:
        raise PreconditionError(f"unknown theorem {tag!r}; choose from {list(THEOREM_TAGS)}") from None
    return fn(p, opts)
