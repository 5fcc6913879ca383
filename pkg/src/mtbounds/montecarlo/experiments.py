"""Monte Carlo checks of the bounds' failure budgets.

Trials are split into fixed chunks of consecutive trial indices.  Each
chunk owns the streams of its trials, so a trial's outcome depends only on
(seed, trial index) and the per-trial statistics can be merged by index
regardless of how many worker threads ran the chunks.
"""
import hashlib
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..bounds import BaselineParams, TailParams, baseline, cor_empirical, evaluate, mcdiarmid_norm_sum
from ..bounds.registry import THEOREM_TAGS
from ..errors import ConfigError, PreconditionError
from ..orlicz import LawSpec, SampleSet, certify_declared_norm, defining_mean, law_orlicz_norm
from .generators import MartingaleSpec
from .prng import LaneBank, MASK64

CHUNK_TRIALS = 4096
BLOCK_ELEMENTS = 1 << 21
WILSON_Z = 1.959963984540054
QUANTILE_LEVELS = (0.5, 0.9, 0.95, 0.99)
PILOT_TRIAL_OFFSET = 1 << 40
SEED_ENV = "MTB_SEED"
# statistics compared against each bound: the running maximum of lambda_max(S_k),
# or lambda_max(S_n / n) for the i.i.d. average
IID_MEAN_TAGS = ("cor-iid", "cor-iid-ber")
SIM_TAGS = tuple(t for t in THEOREM_TAGS if not t.startswith(("cor-cov", "mcdiarmid")))


# ---------------------------------------------------------------- statistics

def wilson_interval(successes, trials, z=WILSON_Z):
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise PreconditionError("need at least one trial")
    p = successes / trials
    denom = 1.0 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


def _digest(*arrays):
    h = hashlib.sha256()
    for a in arrays:
        h.update(np.ascontiguousarray(a, dtype="<f8").tobytes())
    return h.hexdigest()


def _quantiles(samples, budget):
    table = {str(q): float(np.quantile(samples, q)) for q in QUANTILE_LEVELS}
    table["1-budget"] = float(np.quantile(samples, 1.0 - budget)) if budget < 1 else None
    return table


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _finite_or_none(v):
    return float(v) if math.isfinite(v) else None


# ---------------------------------------------------------------- simulation

def _chunks(trials, chunk):
    return [(s, min(s + chunk, trials)) for s in range(0, trials, chunk)]


def _run_chunks(worker, trials, threads, chunk=CHUNK_TRIALS):
    spans = _chunks(trials, chunk)
    if threads is None or threads <= 1 or len(spans) == 1:
        return [worker(a, b) for a, b in spans]
    with ThreadPoolExecutor(max_workers=int(threads)) as pool:
        return list(pool.map(lambda ab: worker(*ab), spans))


def _block_steps(spec, lanes):
    per_step = lanes * spec.dim * (spec.dim if spec.layout == "full" else 1)
    return max(1, BLOCK_ELEMENTS // max(per_step, 1))


def _lambda_max_of_sums(spec, acc, block):
    """Running sums continued from acc, and lambda_max of each partial sum."""
    if spec.layout in ("scalar", "rank_one"):
        sums = acc[:, None] + np.cumsum(block, axis=1)
        top = sums if spec.layout == "scalar" else np.maximum(sums, 0.0)
        return sums[:, -1], top
    if spec.layout == "diagonal":
        sums = acc[:, None, :] + np.cumsum(block, axis=1)
        return sums[:, -1], sums.max(axis=2)
    sums = acc[:, None] + np.cumsum(block, axis=1)
    return sums[:, -1], np.linalg.eigvalsh(sums)[..., -1]


def _zero_sum(spec, lanes):
    if spec.layout in ("scalar", "rank_one"):
        return np.zeros(lanes)
    if spec.layout == "diagonal":
        return np.zeros((lanes, spec.dim))
    return np.zeros((lanes, spec.dim, spec.dim), dtype=complex)


def _final_lambda_max(spec, acc):
    if spec.layout == "scalar":
        return acc
    if spec.layout == "rank_one":
        return np.maximum(acc, 0.0)
    if spec.layout == "diagonal":
        return acc.max(axis=1)
    return np.linalg.eigvalsh(acc)[:, -1]


@dataclass(frozen=True)
class TrialStatistics:
    """Per-trial max_k lambda_max(S_k) and lambda_max(S_n), ordered by trial index."""

    path_max: np.ndarray
    final: np.ndarray


def simulate(spec: MartingaleSpec, trials, seed, threads=None, trial_offset=0):
    if int(trials) != trials or trials < 1:
        raise ConfigError("trials must be a positive integer")

    def worker(start, stop):
        lanes = stop - start
        bank = LaneBank(seed, range(trial_offset + start, trial_offset + stop))
        state = spec.init_state(lanes)
        acc = _zero_sum(spec, lanes)
        best = np.full(lanes, -np.inf)
        step, block = 0, _block_steps(spec, lanes)
        while step < spec.n:
            count = min(block, spec.n - step)
            acc, top = _lambda_max_of_sums(spec, acc, spec.draw(bank, state, count))
            best = np.maximum(best, top.max(axis=1))
            step += count
        return best, _final_lambda_max(spec, acc)

    parts = _run_chunks(worker, int(trials), threads)
    return TrialStatistics(np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))


# ---------------------------------------------------------------- run_experiment

def declared_params(spec, tag, x, eps=1.0):
    """TailParams built from the generator's declared aggregates for the bound named by tag."""
    dec = spec.declarations()
    alpha, n = dec.alpha, spec.n
    if tag in IID_MEAN_TAGS:
        if dec.iid_sigma is None:
            raise PreconditionError(f"{tag} needs an i.i.d. generator kind")
        return TailParams(alpha=alpha, sigma=dec.iid_sigma, bigU=dec.iid_K, bigK=dec.iid_K, x=x,
                          dim=spec.dim, n=n)
    if tag == "thm2":
        if dec.bounded_K is None:
            raise PreconditionError("thm2 needs a generator with bounded increments")
        return TailParams(alpha=alpha, bigU=max(dec.bigU, dec.bounded_K), bigK=dec.bounded_K, x=x, cov=dec.cov)
    if tag.startswith("thm3"):
        return TailParams(alpha=alpha, bigU=dec.bigU, bigK=dec.bigK, x=x, cov=dec.cov, eps=eps)
    if tag.startswith("cor-scalar") and spec.dim != 1:
        raise PreconditionError(f"{tag} needs a scalar (d = 1) generator")
    return TailParams(alpha=alpha, sigma=dec.sigma, bigU=dec.bigU, bigK=dec.bigK, x=x, dim=spec.dim)


@dataclass(frozen=True)
class SimulationConfig:
    spec: MartingaleSpec
    trials: int
    seed: int
    x: float
    bound_kind: str
    threads: int = None
    eps: float = 1.0
    literal: bool = False

    def __post_init__(self):
        if isinstance(self.trials, bool) or int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError("trials must be a positive integer")
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or not 0 <= self.seed <= MASK64:
            raise ConfigError("seed must be an integer in [0, 2^64)")
        if self.bound_kind not in SIM_TAGS:
            raise ConfigError(f"bound {self.bound_kind!r} cannot be simulated; choose from {list(SIM_TAGS)}")
        if self.threads is not None and (int(self.threads) != self.threads or self.threads < 1):
            raise ConfigError("threads must be a positive integer")
        if not (float(self.x) > 0):
            raise ConfigError("x must be > 0")

    @classmethod
    def from_json_obj(cls, obj, seed=None, threads=None):
        """Seed precedence: the seed argument, then $MTB_SEED, then the config's "seed"."""
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(obj) - {"spec", "trials", "seed", "x", "bound", "threads", "eps", "literal"}
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        if seed is None and os.environ.get(SEED_ENV, "") != "":
            try:
                seed = int(os.environ[SEED_ENV], 0)
            except ValueError:
                raise ConfigError(f"${SEED_ENV} is not an integer") from None
        if seed is None:
            seed = obj.get("seed")
        if seed is None:
            raise ConfigError("no seed given (flag, $MTB_SEED or config 'seed')")
        try:
            return cls(spec=MartingaleSpec.from_json_obj(obj["spec"]), trials=obj["trials"], seed=seed,
                       x=float(obj["x"]), bound_kind=obj.get("bound", "thm1-mixed"),
                       threads=threads if threads is not None else obj.get("threads"),
                       eps=float(obj.get("eps", 1.0)), literal=bool(obj.get("literal", False)))
        except KeyError as exc:
            raise ConfigError(f"config needs {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from None

    def to_json_obj(self):
        return {"spec": self.spec.to_json_obj(), "trials": int(self.trials), "seed": int(self.seed),
                "x": float(self.x), "bound": self.bound_kind, "eps": float(self.eps), "literal": self.literal}


@dataclass(frozen=True)
class SimulationReport:
    config: dict
    statistic: str
    bound: dict
    bound_value: float
    failure_budget: float
    vacuous: bool
    exceedances: int
    trials: int
    empirical_exceedance: float
    wilson: tuple
    passed: bool
    samples: dict
    digest: str
    runtime_seconds: float = field(default=0.0, compare=False)

    def to_json_obj(self, include_runtime=False):
        out = {
            "config": self.config,
            "statistic": self.statistic,
            "bound": self.bound,
            "bound_value": _finite_or_none(self.bound_value),
            "failure_budget": self.failure_budget,
            "vacuous": self.vacuous,
            "exceedances": self.exceedances,
            "trials": self.trials,
            "empirical_exceedance": self.empirical_exceedance,
            "wilson_95": list(self.wilson),
            "pass": self.passed,
            "samples": self.samples,
            "digest": self.digest,
        }
        if include_runtime:
            out["runtime_seconds"] = self.runtime_seconds
        return out

    def to_json(self, include_runtime=False):
        """Canonical bytes; runtime is left out by default so reports are reproducible."""
        return _canonical(self.to_json_obj(include_runtime))


def _judge(samples, bound_value, budget):
    """Exceedance count, rate, Wilson interval and the pass verdict."""
    trials = int(samples.size)
    hits = int(np.count_nonzero(samples >= bound_value))
    lo, hi = wilson_interval(hits, trials)
    passed = budget >= 1 or hits == 0 or hi <= budget
    return hits, hits / trials, (lo, hi), bool(passed)


def report_from_statistics(cfg: SimulationConfig, stats: TrialStatistics, runtime=0.0):
    p = declared_params(cfg.spec, cfg.bound_kind, cfg.x, cfg.eps)
    res = evaluate(cfg.bound_kind, p, literal=cfg.literal)
    if cfg.bound_kind in IID_MEAN_TAGS:
        statistic, samples = "lambda_max_of_mean", stats.final / cfg.spec.n
    else:
        statistic, samples = "max_partial_sum_lambda_max", stats.path_max
    budget = float(res.failure_budget)
    vacuous = budget >= 1
    bound_value = math.inf if vacuous else float(res.deviation)
    hits, rate, wilson, passed = _judge(samples, bound_value, budget)
    summary = {"count": int(samples.size), "mean": float(np.mean(samples)), "max": float(np.max(samples)),
               "quantiles": _quantiles(samples, budget)}
    return SimulationReport(cfg.to_json_obj(), statistic, res.to_dict(), bound_value, budget, vacuous, hits,
                            int(samples.size), rate, wilson, passed, summary, _digest(samples), runtime)


def run_experiment(cfg: SimulationConfig) -> SimulationReport:
    t0 = time.perf_counter()
    p = declared_params(cfg.spec, cfg.bound_kind, cfg.x, cfg.eps)
    evaluate(cfg.bound_kind, p, literal=cfg.literal)  # fail fast before simulating
    stats = simulate(cfg.spec, cfg.trials, cfg.seed, cfg.threads)
    return report_from_statistics(cfg, stats, time.perf_counter() - t0)


# ---------------------------------------------------------------- empirical Bernstein coverage

def _all_increments(spec, bank):
    state = spec.init_state(bank.lanes)
    return spec.to_matrices(spec.draw(bank, state, spec.n))


def empirical_ci_components(xs):
    """Sample mean, sigma_hat and ||mean|| for stacks xs of shape (lanes, n, d, d)."""
    mean = xs.mean(axis=1)
    dev = xs - mean[:, None]
    sigma_hat_matrix = np.mean(dev @ dev, axis=1)
    sigma_hat = np.sqrt(np.maximum(np.linalg.eigvalsh(sigma_hat_matrix)[:, -1], 0.0))
    centre_norm = np.max(np.abs(np.linalg.eigvalsh(mean)), axis=1)
    return mean, sigma_hat, centre_norm


def empirical_bernstein_experiment(spec: MartingaleSpec, x, trials, seed, threads=None, bigK=None):
    """Coverage of the empirical Bernstein radius for ||mean - E X_1|| (all kinds have mean zero)."""
    t0 = time.perf_counter()
    dec = spec.declarations()
    if dec.centered_K is None:
        raise PreconditionError("the empirical Bernstein check needs an i.i.d. generator kind")
    K = dec.centered_K if bigK is None else float(bigK)
    n, d, alpha = spec.n, spec.dim, dec.alpha
    if n < 8 * x:
        raise PreconditionError(f"need n >= 8x, got n={n}, 8x={8 * x!r}")
    cor_empirical(1.0, max(K, 1e-300), alpha, x, n, d)  # precondition check before simulating
    if not K > 0:
        raise PreconditionError("declared K is zero; pass a positive bigK")

    def worker(start, stop):
        bank = LaneBank(seed, range(start, stop))
        _, sigma_hat, centre = empirical_ci_components(_all_increments(spec, bank))
        radius = np.array([cor_empirical(s, K, alpha, x, n, d).deviation for s in sigma_hat])
        return sigma_hat, centre, radius

    parts = _run_chunks(worker, int(trials), threads, chunk=max(1, min(CHUNK_TRIALS, BLOCK_ELEMENTS // (n * d * d))))
    sigma_hat, centre, radius = (np.concatenate([p[k] for p in parts]) for k in range(3))
    budget = 3.0 * d * math.exp(-x)
    misses = int(np.count_nonzero(centre > radius))
    lo, hi = wilson_interval(misses, centre.size)
    passed = budget >= 1 or misses == 0 or hi <= budget
    finite = radius[np.isfinite(radius)]
    return {
        "spec": spec.to_json_obj(), "x": float(x), "trials": int(trials), "seed": int(seed), "bigK": K,
        "failure_budget": budget, "coverage": 1.0 - misses / centre.size, "coverage_floor": 1.0 - budget,
        "misses": misses, "miss_wilson_95": [lo, hi], "pass": bool(passed),
        "radius_median": float(np.median(radius)) if finite.size == radius.size else None,
        "infinite_radii": int(radius.size - finite.size),
        "digest": _digest(sigma_hat, centre, radius), "runtime_seconds": time.perf_counter() - t0,
    }


# ---------------------------------------------------------------- bounded-difference experiment

def sample_law(law: LawSpec, bank, count):
    """(lanes, count) draws of a LawSpec from a lane bank."""
    if law.kind == "point_mass":
        return np.full((bank.lanes, count), float(law.scale))
    if law.kind == "weibull":
        return law.scale * (-np.log(bank.uniforms(count))) ** (1.0 / law.shape)
    if law.kind == "folded_gaussian":
        return law.scale * np.abs(bank.normals(count))
    if law.kind == "bounded_uniform":
        return law.scale * bank.uniforms(count)
    k = int(law.dof)
    g = bank.normals(count * k).reshape(bank.lanes, count, k)
    return law.scale * np.sqrt(np.sum(g * g, axis=2))


def _half_norm_of_sum(m, n, law, seed, start, stop):
    """f(Y) = ||sum_i Y_i||_2 / 2 with Y_i = R_i * (uniform direction on the sphere)."""
    bank = LaneBank(seed, range(start, stop))
    total = np.zeros((bank.lanes, m))
    for _ in range(n):
        g = bank.normals(m)
        radius = sample_law(law, bank, 1)[:, 0]
        norm = np.linalg.norm(g, axis=1)
        total += np.where(norm[:, None] > 0, g / np.where(norm > 0, norm, 1.0)[:, None], 0.0) * radius[:, None]
    return 0.5 * np.linalg.norm(total, axis=1)


def mcdiarmid_table(m, n, law: LawSpec, x, alpha=1.0):
    """Bounded-difference bounds for f = ||sum Y_i|| / 2, next to the Maurer baseline."""
    norm = law_orlicz_norm(law, alpha)
    second = law.second_moment()
    row = {"m": m, "n": n, "x": float(x), "alpha": float(alpha), "law": law.to_json_obj(),
           "orlicz_norm": norm, "second_moment": second}
    if norm == 0:
        row.update(bennett=0.0, bernstein=0.0, maurer_norm_scale=0.0, maurer_half=0.0, degenerate=True)
        return row
    pair = mcdiarmid_norm_sum([norm] * n, [second] * n, alpha, x)
    maurer = baseline("maurer_norm", BaselineParams(bigU=pair.bennett.details["bigU"],
                                                    bigK=pair.bennett.details["bigK"], x=x, alpha=alpha))
    row.update(bennett=pair.bennett.deviation, bernstein=pair.bernstein.deviation,
               maurer_norm_scale=maurer.deviation, maurer_half=0.5 * maurer.deviation,
               z=pair.bennett.details["z"], bigU=pair.bennett.details["bigU"], bigK=pair.bennett.details["bigK"],
               sigma=pair.bennett.details["sigma"], degenerate=False)
    return row


def mcdiarmid_experiment(m, n, law: LawSpec, x, trials, seed, alpha=1.0, pilot_trials=100_000, threads=None):
    """Exceedance of f(Y) - E f(Y) over the bounded-difference bounds.

    E f(Y) is estimated from a pilot run on a disjoint range of trial
    indices; three pilot standard errors are added to the threshold and
    reported as slack.  The Maurer bound (on the ||sum Y_i|| scale, so
    halved for f) is evaluated at the same inputs for comparison.
    """
    t0 = time.perf_counter()
    row = mcdiarmid_table(m, n, law, x, alpha)
    chunk = max(1, min(CHUNK_TRIALS, BLOCK_ELEMENTS // max(m, 1)))

    def run(count, offset):
        parts = _run_chunks(lambda a, b: _half_norm_of_sum(m, n, law, seed, offset + a, offset + b),
                            int(count), threads, chunk)
        return np.concatenate(parts)

    pilot = run(pilot_trials, PILOT_TRIAL_OFFSET)
    pilot_mean = float(np.mean(pilot))
    pilot_se = float(np.std(pilot, ddof=1) / math.sqrt(pilot.size)) if pilot.size > 1 else 0.0
    slack = 3.0 * pilot_se
    f = run(trials, 0)
    dev = f - pilot_mean
    budget = math.exp(-x)
    out = dict(row, trials=int(trials), seed=int(seed), pilot_trials=int(pilot_trials), pilot_mean=pilot_mean,
               pilot_standard_error=pilot_se, pilot_slack=slack, failure_budget=budget)
    verdicts = []
    for name in ("bennett", "bernstein", "maurer_half"):
        hits = int(np.count_nonzero(dev > row[name] + slack)) if not row["degenerate"] else int(np.count_nonzero(dev > 0))
        lo, hi = wilson_interval(hits, dev.size)
        ok = hits == 0 or hi <= budget
        out[f"{name}_exceedances"] = hits
        out[f"{name}_wilson_95"] = [lo, hi]
        if name != "maurer_half":
            verdicts.append(ok)
    out["pass"] = bool(all(verdicts))
    out["digest"] = _digest(pilot, f)
    out["runtime_seconds"] = time.perf_counter() - t0
    return out


# ---------------------------------------------------------------- generator audits

def audit_declarations(spec: MartingaleSpec, seed, draws=10_000, margin=0.05):
    """Certify each step's declared U_i on `draws` independent samples of lambda_max(X_i)_+.

    For the adaptive kind the samples are also taken conditionally on a
    few fixed past sums, so the conditional declaration is exercised.
    Returns (ok, worst defining mean over steps).
    """
    dec = spec.declarations()
    base = PILOT_TRIAL_OFFSET * 2
    step = max(1, BLOCK_ELEMENTS // (spec.n * spec.dim * spec.dim))
    tops = np.concatenate([
        np.maximum(np.linalg.eigvalsh(_all_increments(spec, LaneBank(seed, range(base + a, base + b))))[..., -1], 0.0)
        for a, b in _chunks(draws, step)])
    bank = LaneBank(seed, range(base + draws, base + 2 * draws))
    worst, ok = 0.0, True
    for i in range(spec.n):
        s = SampleSet(tops[:, i])
        ok &= certify_declared_norm(s, float(dec.U[i]), dec.alpha, margin)
        worst = max(worst, _defining(s, float(dec.U[i]), dec.alpha))
    if spec.kind == "scalar_adaptive_gaussian":
        impl = spec._impl
        for past in (-1.0, 0.0, 1.0):
            g = bank.normals(1)[:, 0]
            vals = np.maximum(impl.volatility(np.full(bank.lanes, past)) * g, 0.0)
            s = SampleSet(vals)
            ok &= certify_declared_norm(s, float(dec.U[0]), dec.alpha, margin)
            worst = max(worst, _defining(s, float(dec.U[0]), dec.alpha))
    return bool(ok), worst


def _defining(samples, t, alpha):
    return float(defining_mean(samples, alpha, t)) if t > 0 else 0.0


def audit_supermartingale(spec: MartingaleSpec, seed, lanes=2000):
    """Mean increment conditioned on the sign of lambda_max(S_{i-1}).

    For each of the two buckets returns (count, lambda_max of the mean,
    standard error) where the standard error is sqrt(mean tr(X_i^2) / count),
    which bounds the root-mean-square Frobenius norm of a mean of
    martingale differences.  ok means lambda_max <= 3 standard errors.
    """
    bank = LaneBank(seed, range(PILOT_TRIAL_OFFSET * 3, PILOT_TRIAL_OFFSET * 3 + lanes))
    xs = _all_increments(spec, bank)
    sums = np.cumsum(xs, axis=1)
    past = np.concatenate([np.zeros((lanes, 1)), np.linalg.eigvalsh(sums[:, :-1])[..., -1]], axis=1)
    out = {}
    ok = True
    for name, mask in (("nonpositive_past", past <= 0), ("positive_past", past > 0)):
        count = int(np.count_nonzero(mask))
        if count == 0:
            out[name] = (0, 0.0, 0.0)
            continue
        sel = xs[mask]
        mean = sel.mean(axis=0)
        top = float(np.linalg.eigvalsh(mean)[-1])
        se = math.sqrt(float(np.real(np.einsum("kij,kji->", sel, sel))) / count / count)
        out[name] = (count, top, se)
        ok &= top <= 3.0 * se
    return bool(ok), out


# ---------------------------------------------------------------- standard configurations

def _diag_json(values):
    d = len(values)
    return {"d": d, "re": [[float(values[i]) if i == j else 0.0 for j in range(d)] for i in range(d)]}


def rank_one_rademacher_spec(d=32, delta=1e-3, head_steps=69):
    """Diagonal rank-one Rademacher steps whose squares sum to diag(1, delta, ..., delta).

    The first head_steps steps act on e_1 with squared size 1/head_steps;
    each of the remaining d - 1 steps acts on one other coordinate with
    squared size delta.
    """
    head = [0.0] * d
    head[0] = 1.0 / math.sqrt(head_steps)
    directions = [_diag_json(head)] * head_steps
    for j in range(1, d):
        tail = [0.0] * d
        tail[j] = math.sqrt(delta)
        directions.append(_diag_json(tail))
    return MartingaleSpec("rademacher_fixed", head_steps + d - 1, 1.0, {"directions": directions})


def soundness_specs(n=100):
    """(name, spec, applicable bound tags) for the soundness sweep."""
    pauli = [{"d": 2, "re": [[0.0, 1.0], [1.0, 0.0]]}, {"d": 2, "re": [[0.0, 0.0], [0.0, 0.0]], "im": [[0.0, -1.0], [1.0, 0.0]]},
             {"d": 2, "re": [[1.0, 0.0], [0.0, -0.5]]}]
    general = ["thm1-mixed", "thm3"]
    specs = [
        ("wigner_d3", MartingaleSpec("gaussian_wigner", n, 2.0, {"d": 3, "scale": 1.0}), general + ["cor-iid"]),
        ("rademacher_d1", MartingaleSpec("rademacher_fixed", n, 1.0, {"directions": [{"d": 1, "re": [[1.0]]}]}),
         general + ["thm2", "cor-iid", "cor-scalar"]),
        ("rademacher_d2_noncommuting",
         MartingaleSpec("rademacher_fixed", n, 1.0, {"directions": (pauli * n)[:n]}), general + ["thm2"]),
        ("weibull_rank_one_d3", MartingaleSpec("weibull_rank_one", n, 1.0, {"d": 3, "scale": 1.0, "shape": 1.0}),
         general + ["cor-iid"]),
        ("adaptive_gaussian", MartingaleSpec("scalar_adaptive_gaussian", n, 2.0,
                                             {"vol": "sign_switch", "s_min": 0.5, "s_max": 1.0}),
         general + ["cor-scalar"]),
        ("scalar_weibull_heavy", MartingaleSpec("scalar_weibull_centered", n, 0.5, {"scale": 1.0, "shape": 0.5}),
         general + ["cor-scalar"]),
    ]
    return specs
