"""Built-in property checks, grouped in suites that mirror the package modules.

Each check returns (ok, detail).  run_suites prints one line per check and
returns the number of failures.
"""
import math
import time

import numpy as np

SUITES = ("scalar", "linalg", "orlicz", "bounds", "montecarlo")
_REGISTRY = {name: [] for name in SUITES}


def check(suite):
    def register(fn):
        _REGISTRY[suite].append(fn)
        return fn
    return register


# ---------------------------------------------------------------- scalar

@check("scalar")
def h_is_conjugate_of_phi():
    from .special import h, phi
    lams = np.linspace(0.0, 4.0, 4001)
    violations = []
    for x in np.linspace(0.0, 50.0, 101):
        at_opt = math.log1p(x) * x - phi(math.log1p(x))
        grid_max = max(lam * x - phi(lam) for lam in lams)
        violations.append(max(abs(h(x) - at_opt), grid_max - h(x)))
    worst = max(violations)
    return worst <= 1e-6, f"max violation {worst:.2e}"


@check("scalar")
def phi_over_t_squared_increasing():
    from .special import phi
    ts = [t for t in np.linspace(-20.0, 20.0, 4001) if abs(t) > 1e-12]
    vals = [phi(t) / (t * t) for t in ts]
    mono = all(b > a for a, b in zip(vals, vals[1:]))
    near_zero = abs(phi(1e-7) / 1e-14 - 0.5) < 1e-6
    return mono and near_zero, f"increasing={mono}, limit at 0 ~ 0.5: {near_zero}"


@check("scalar")
def upsilon_increasing_convex_capped():
    from .special import upsilon
    ts = np.linspace(-20.0, 20.0, 2001)
    v = np.array([upsilon(t) for t in ts])
    d1 = np.diff(v)
    d2 = np.diff(v, 2)
    cap = all(upsilon(t) <= max(4.0, 1.5 * t) for t in ts)
    low = 2.0 < upsilon(-1e6) < 2.0 + 1e-3
    ok = bool(np.all(d1 > 0) and np.all(d2 > -1e-12) and cap and low and upsilon(0.0) == 3.0)
    return ok, f"min diff {d1.min():.2e}, min 2nd diff {d2.min():.2e}, cap={cap}, asymptote={low}"


@check("scalar")
def h_inv_round_trip_and_envelopes():
    from .special import h, h_inv, h_inv_envelopes
    worst, env_ok = 0.0, True
    for k in range(-6, 7):
        u = 10.0 ** k
        t = h_inv(u)
        worst = max(worst, abs(h(t) - u) / (1 + u))
        e1, e2 = h_inv_envelopes(u)
        env_ok &= t <= e1 * (1 + 1e-14) and t <= e2 * (1 + 1e-14)
    return worst <= 1e-10 and env_ok, f"max |h(h_inv(u)) - u|/(1+u) = {worst:.2e}, envelopes={env_ok}"


_Z_GRID = [(a, r) for a in (0.25, 0.5, 1.0, 2.0, 4.0) for r in (0.5, 1.0, 10.0, 1e3)]


@check("scalar")
def z_threshold_postcondition():
    from .special import z_threshold
    slack = [a * z_threshold(r, 1.0, a) ** a for a, r in _Z_GRID]
    return min(slack) >= 4 * (1 - 1e-12), f"min alpha z^alpha = {min(slack):.6f}"


@check("scalar")
def exponential_dominates_powers():
    # t^p <= (p/(alpha e))^(p/alpha) e^(t^alpha), and t^p e^(-t^alpha) is nonincreasing once alpha t^alpha >= p
    ts = np.linspace(0.0, 50.0, 5001)
    ok, bad = True, 0
    for p in (1, 2, 4):
        for a in (0.5, 1.0, 2.0):
            log_rhs = (p / a) * math.log(p / (a * math.e)) + ts ** a
            with np.errstate(divide="ignore"):
                log_lhs = p * np.log(ts)
            fails = np.count_nonzero(log_lhs > log_rhs + 1e-12 * np.maximum(1, np.abs(log_rhs)))
            tail = ts[a * ts ** a >= p]
            logs = p * np.log(tail) - tail ** a
            fails += np.count_nonzero(np.diff(logs) > 1e-12)
            bad += int(fails)
            ok &= fails == 0
    return ok, f"violations {bad}"


@check("scalar")
def exp_z_dominates_ratio():
    from .special import z_threshold
    bad = []
    for a, r in _Z_GRID:
        z = z_threshold(r, 1.0, a)
        lhs = z ** a
        rhs = 4.0 - math.log(16.0) + 2.0 * math.log(r * z)
        bad.append(lhs < rhs - 1e-12 * abs(rhs))
    return not any(bad), f"violations {sum(bad)}"


@check("scalar")
def g_inv_linear_branch_and_continuity():
    from .special import g_breakpoint, g_inv
    ok, worst_gap = True, 0.0
    for lam0 in (0.1, 0.5, math.log(2.0), 1.0, 2.0, 5.0):
        x0, _ = g_breakpoint(lam0)
        worst_gap = max(worst_gap, abs(g_inv(lam0, x0 * (1 + 1e-12)) - g_inv(lam0, x0)))
        for x in np.linspace(x0, 20 * x0 + 5, 50)[1:]:
            ok &= g_inv(lam0, x) <= 2 * x / lam0 * (1 + 1e-12)
    return ok and worst_gap <= 1e-8, f"max jump at breakpoint {worst_gap:.2e}, linear-branch cap={ok}"


@check("scalar")
def rho_derivative_sign():
    from .special import rho, upsilon
    ok = True
    for lam, a, x in ((1.0, 1.0, 2.0), (0.5, 1.0, 5.0), (1.0, 2.0, 0.7), (2.0, 0.5, 3.0)):
        hstep = 1e-5
        fd = (rho(lam, a, x + hstep) - rho(lam, a, x - hstep)) / (2 * hstep)
        ok &= np.sign(fd) == np.sign(upsilon(lam * x) - a * x ** a)
    return bool(ok), "sign(rho') = sign(upsilon(lambda x) - alpha x^alpha)"


# ---------------------------------------------------------------- linalg

def _random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


@check("linalg")
def eig_consistency():
    from .linalg import HermitianMatrix, eig
    rng = np.random.default_rng(2024)
    sums, resid, unit = 0.0, 0.0, 0.0
    for d in (1, 2, 5, 12):
        a = _random_hermitian(rng, d)
        sp = eig(HermitianMatrix(a))
        lam, v = sp.eigenvalues, sp.eigenvectors
        fro = np.linalg.norm(a)
        sums = max(sums, abs(lam.sum() - np.trace(a).real) / (1 + abs(np.trace(a).real)),
                   abs((lam ** 2).sum() - fro ** 2) / fro ** 2)
        resid = max(resid, np.linalg.norm(a @ v - v * lam) / (1 + fro))
        unit = max(unit, np.linalg.norm(v.conj().T @ v - np.eye(d)))
    ok = sums <= 1e-9 and resid <= 1e-9 and unit <= 1e-10
    return ok, f"trace/Frobenius {sums:.1e}, residual {resid:.1e}, unitarity {unit:.1e}"


@check("linalg")
def intrinsic_dim_range_and_identity_map():
    from .linalg import HermitianMatrix, intrinsic_dim, matrix_fn
    rng = np.random.default_rng(7)
    ok, worst = True, 0.0
    for d in (1, 3, 6):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        s = HermitianMatrix(g @ g.conj().T)
        r = intrinsic_dim(s)
        ok &= 1 - 1e-12 <= r <= d + 1e-12
        err = np.max(np.abs(matrix_fn(lambda x: x, s).data - s.data)) / (1 + np.max(np.abs(s.data)))
        worst = max(worst, err)
    return ok and worst <= 1e-10, f"range ok={ok}, identity map error {worst:.2e}"


@check("linalg")
def psd_order_properties():
    from .linalg import HermitianMatrix, psd_leq
    rng = np.random.default_rng(11)
    mats = []
    for _ in range(6):
        g = rng.standard_normal((3, 3))
        mats.append(HermitianMatrix(g @ g.T))
    ok = all(psd_leq(a, a, 0.0) for a in mats)
    for a in mats:
        for b in mats:
            if psd_leq(a, b, 1e-12) and psd_leq(b, a, 1e-12):
                ok &= np.allclose(a.data, b.data, atol=1e-10)
            for c in mats:
                if psd_leq(a, b, 0.0) and psd_leq(b, c, 0.0):
                    ok &= psd_leq(a, c, 1e-12)
    acc = mats[0]
    for a in mats[1:]:
        nxt = acc + a
        ok &= psd_leq(acc, nxt, 1e-12)
        acc = nxt
    return bool(ok), "reflexive, antisymmetric, transitive on the corpus"


# ---------------------------------------------------------------- orlicz

@check("orlicz")
def weibull_quadrature_oracle():
    from .orlicz import LawSpec, law_orlicz_norm
    worst = 0.0
    for s in (0.5, 1.0, 3.0):
        for a in (0.5, 1.0, 2.0):
            got = law_orlicz_norm(LawSpec.weibull(s, a), a)
            worst = max(worst, abs(got / (s * 2 ** (1 / a)) - 1))
    return worst <= 1e-6, f"max relative error {worst:.2e}"


@check("orlicz")
def empirical_norm_homogeneity_and_squaring():
    from .orlicz import SampleSet, defining_mean, empirical_orlicz_norm
    rng = np.random.default_rng(5)
    v = rng.weibull(1.5, 2000)
    s = SampleSet(v)
    worst_h, worst_sq = 0.0, 0.0
    for a in (0.5, 1.0, 2.0):
        base = empirical_orlicz_norm(s, a)
        for c in (0.1, 3.0, 1e3):
            worst_h = max(worst_h, abs(empirical_orlicz_norm(s.scaled(c), a) / (c * base) - 1))
    for a in (2.0, 4.0):
        sq = empirical_orlicz_norm(SampleSet(v ** 2), a / 2)
        worst_sq = max(worst_sq, abs(sq / empirical_orlicz_norm(s, a) ** 2 - 1))
    ts = np.geomspace(0.1, 10, 200)
    means = [defining_mean(s, 1.0, t) for t in ts]
    mono = all(b <= a for a, b in zip(means, means[1:]))
    ok = worst_h <= 1e-9 and worst_sq <= 1e-8 and mono
    return ok, f"homogeneity {worst_h:.1e}, squaring {worst_sq:.1e}, defining mean nonincreasing={mono}"


@check("orlicz")
def second_moment_bound():
    from .orlicz import SampleSet, empirical_orlicz_norm
    rng = np.random.default_rng(13)
    ok = True
    for shape in (0.7, 1.0, 2.0):
        v = rng.weibull(shape, 20000)
        for a in (0.5, 1.0, 2.0):
            norm = empirical_orlicz_norm(SampleSet(v), a)
            ok &= np.mean(v ** 2) <= 2 * (2 / (a * math.e)) ** (2 / a) * norm ** 2
    return bool(ok), "mean v^2 <= 2 (2/(alpha e))^(2/alpha) ||v||^2"


# ---------------------------------------------------------------- bounds

def _tail_grid():
    from .bounds import TailParams
    for a in (1.0, 2.0):
        for sigma in (0.01, 0.3, 1.0, 5.0):
            for K in (0.1, 1.0):
                for x in (0.1, 1.0, 5.0, 50.0):
                    yield TailParams(alpha=a, sigma=sigma, bigU=3 * K, bigK=K, x=x, dim=2)


@check("bounds")
def mixed_dominated_and_envelopes():
    from .bounds import regime_classify, thm1_bennett, thm1_bernstein, thm1_mixed
    ok = True
    for p in _tail_grid():
        m = thm1_mixed(p).deviation
        ok &= m <= thm1_bennett(p).deviation and m <= thm1_bernstein(p).deviation
        ok &= regime_classify(p).envelope >= m * (1 - 1e-12)
    return bool(ok), "mixed <= both forms, regime envelope >= mixed"


@check("bounds")
def bernstein_increasing_in_x_monotone_in_sigma():
    from .bounds import TailParams, thm1_bernstein, thm1_monotone
    xs = np.geomspace(1e-3, 1e3, 60)
    vals = [thm1_bernstein(TailParams(alpha=1, sigma=1, bigU=2, bigK=1, x=x, dim=1)).deviation for x in xs]
    inc = all(b > a for a, b in zip(vals, vals[1:]))
    sigmas = np.geomspace(1e-6, 10, 40)
    mono = [thm1_monotone(TailParams(alpha=1, sigma=s, bigU=1, bigK=1, x=1, dim=1)).deviation for s in sigmas]
    nondec = all(b >= a * (1 - 1e-9) for a, b in zip(mono, mono[1:]))
    return inc and nondec, f"increasing in x={inc}, monotone in sigma={nondec}"


@check("bounds")
def bounded_exact_below_relaxed():
    from .bounds import thm2_bounded, thm1_bennett, TailParams
    from .linalg import HermitianMatrix
    ok = True
    for sigma2 in (0.01, 1.0, 10.0):
        for K in (0.1, 1.0, 3.0):
            for x in np.linspace(1.0, 30.0, 12):
                r = thm2_bounded(sigma2, K, 1.0, x)
                ok &= r.deviation <= r.details["relaxed"]
    d, x = 4, 2.0
    r = thm2_bounded(1.0, 1.0, HermitianMatrix(np.eye(d)), x)
    ambient = thm1_bennett(TailParams(alpha=1, sigma=1, bigU=1, bigK=1, x=x, dim=d)).failure_budget
    ok &= abs(r.failure_budget / ambient - math.e) <= 1e-12
    return bool(ok), "exact <= relaxed; budget ratio e at r = d"


@check("bounds")
def dimension_free_costs_more():
    from .bounds import TailParams, thm1_bernstein, thm3_unbounded
    ok = True
    for a in (1.0, 2.0):
        for sigma in (0.3, 1.0, 4.0):
            for x in (0.5, 2.0, 10.0):
                cov = np.diag([sigma ** 2, sigma ** 2 / 2])
                t3 = thm3_unbounded(TailParams(alpha=a, bigU=2, bigK=1, x=x, cov=cov)).bernstein.deviation
                t1 = thm1_bernstein(TailParams(alpha=a, sigma=sigma, bigU=2, bigK=1, x=x, dim=2)).deviation
                ok &= math.isfinite(t3) and t3 > t1
    return bool(ok), "dimension-free Bernstein exceeds the ambient form"


@check("bounds")
def large_alpha_matches_bounded_form():
    from .bounds import TailParams, thm1_bennett
    from .special import underline_log
    worst = 0.0
    for sigma in (0.5, 1.0, 2.0):
        for x in (1.0, 3.0, 10.0):
            p = TailParams(alpha=64, sigma=sigma, bigU=1, bigK=1, x=x, dim=1)
            ref = sigma * math.sqrt(2 * x) + 4 * x / underline_log(x / sigma ** 2)
            worst = max(worst, abs(thm1_bennett(p).deviation / ref - 1))
    return worst <= 0.10, f"max relative gap {worst:.3f}"


@check("bounds")
def tail_probability_at_threshold():
    from .bounds import tail_prob_bound, tail_threshold_tau
    ok = True
    for a in (0.25, 0.5, 1.0, 2.0, 4.0):
        for ratio in (1.0, 2.0, 10.0, 1e3):
            for x in (0.0, 0.5, 1.0, 5.0, 30.0):
                tau = tail_threshold_tau(1.0, ratio, a, x)
                ok &= tail_prob_bound(1.0, ratio, a, tau) <= math.exp(-x) * (1 + 1e-12)
    return bool(ok), "tail bound at tau <= e^{-x}"


# ---------------------------------------------------------------- montecarlo

@check("montecarlo")
def streams_agree_and_repeat():
    from .montecarlo.prng import LaneBank, ScalarStream
    bank = LaneBank(123, range(4))
    lanes = bank.normals(9)
    scalar = np.vstack([ScalarStream(123, i).normals(9) for i in range(4)])
    again = LaneBank(123, range(4)).normals(9)
    ok = np.allclose(lanes, scalar, rtol=1e-15, atol=0) and np.array_equal(lanes, again)
    distinct = len({ScalarStream(123, i).gen.next_int() for i in range(100)}) == 100
    return bool(ok and distinct), "lane bank = scalar stream, repeatable, distinct first outputs"


@check("montecarlo")
def small_soundness_sweep():
    from .montecarlo.experiments import SimulationConfig, report_from_statistics, simulate, soundness_specs
    bad = []
    for name, spec, tags in soundness_specs(n=50):
        stats = simulate(spec, 2000, 99)
        for tag in tags:
            if not report_from_statistics(SimulationConfig(spec, 2000, 99, 3.0, tag), stats).passed:
                bad.append(f"{name}/{tag}")
    return not bad, "red alerts: " + (", ".join(bad) if bad else "none")


@check("montecarlo")
def reports_independent_of_threads():
    from .montecarlo.experiments import SimulationConfig, run_experiment
    from .montecarlo.generators import MartingaleSpec
    spec = MartingaleSpec("gaussian_wigner", 30, 2.0, {"d": 2, "scale": 1.0})
    one = run_experiment(SimulationConfig(spec, 9000, 5, 2.0, "thm1-mixed", threads=1)).to_json()
    many = run_experiment(SimulationConfig(spec, 9000, 5, 2.0, "thm1-mixed", threads=4)).to_json()
    return one == many, "byte-identical across thread counts"


@check("montecarlo")
def generator_audits():
    from .montecarlo.experiments import audit_declarations, audit_supermartingale, soundness_specs
    bad = []
    for name, spec, _ in soundness_specs(n=20):
        if not audit_declarations(spec, 3, draws=4000)[0]:
            bad.append(name + ":declared U")
        if not audit_supermartingale(spec, 3, lanes=1000)[0]:
            bad.append(name + ":drift")
    return not bad, "failures: " + (", ".join(bad) if bad else "none")


def run_suites(names=None, out=print):
    names = list(SUITES) if names is None else list(names)
    failures = 0
    for suite in names:
        for fn in _REGISTRY[suite]:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crashing check is a failing check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            failures += not ok
            out(f"{'PASS' if ok else 'FAIL'} {suite}.{fn.__name__} ({time.perf_counter() - t0:.2f}s): {detail}")
    out(f"{failures} failure(s)")
    return failures
