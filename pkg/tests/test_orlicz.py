import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import optimize

from mtbounds.errors import DivergenceError, ValidationError
from mtbounds.orlicz import (LawSpec, SampleSet, certify_declared_norm, defining_mean, empirical_orlicz_norm,
                             law_expectation, law_orlicz_norm)


@pytest.mark.parametrize("s", [0.5, 1.0, 3.0])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_weibull_matching_shape_closed_form(s, alpha):
    # E exp((X/t)^a) = 1/(1 - (s/t)^a) for Weibull(s, a), so the norm is s 2^{1/a}
    assert law_orlicz_norm(LawSpec.weibull(s, alpha), alpha) == pytest.approx(s * 2 ** (1 / alpha), rel=1e-6)


def test_folded_gaussian_closed_form():
    # E exp(X^2/t^2) = (1 - 2 s^2/t^2)^{-1/2}
    assert law_orlicz_norm(LawSpec.folded_gaussian(1.5), 2.0) == pytest.approx(1.5 * math.sqrt(8 / 3), rel=1e-8)


@pytest.mark.parametrize("k", [1, 3, 9])
def test_chi_closed_form(k):
    c = 0.7
    expected = c * math.sqrt(2 / (1 - 2 ** (-2 / k)))
    assert law_orlicz_norm(LawSpec.chi(c, k), 2.0) == pytest.approx(expected, rel=1e-8)


def test_bounded_uniform_against_root_finder():
    b = 2.0
    ref = optimize.brentq(lambda t: t / b * math.expm1(b / t) - 2.0, 0.1, 100.0, xtol=1e-14)
    assert law_orlicz_norm(LawSpec.bounded_uniform(b), 1.0) == pytest.approx(ref, rel=1e-9)


def test_point_mass():
    assert law_orlicz_norm(LawSpec.point_mass(2.0), 1.0) == pytest.approx(2 / math.log(2))
    assert law_orlicz_norm(LawSpec.point_mass(0.0), 1.0) == 0.0


def test_divergent_norms():
    with pytest.raises(DivergenceError):
        law_orlicz_norm(LawSpec.weibull(1.0, 0.5), 1.0)
    with pytest.raises(DivergenceError):
        law_orlicz_norm(LawSpec.folded_gaussian(1.0), 3.0)


def test_law_expectation_at_norm_is_two():
    law = LawSpec.weibull(1.0, 1.5)
    t = law_orlicz_norm(law, 1.0)
    assert law_expectation(law, 1.0, t) == pytest.approx(2.0, rel=1e-10)


def test_law_moments():
    assert LawSpec.weibull(2.0, 1.0).mean() == pytest.approx(2.0)
    assert LawSpec.weibull(2.0, 1.0).second_moment() == pytest.approx(8.0)
    assert LawSpec.chi(1.0, 3).second_moment() == pytest.approx(3.0)
    assert LawSpec.chi(1.0, 1).mean() == pytest.approx(math.sqrt(2 / math.pi))


def test_law_validation_and_json():
    with pytest.raises(ValidationError):
        LawSpec("weibull", 1.0)
    with pytest.raises(ValidationError):
        LawSpec("cauchy", 1.0)
    law = LawSpec.chi(2.0, 4)
    assert LawSpec.from_json_obj(law.to_json_obj()) == law


def test_sample_set_validation():
    with pytest.raises(ValidationError):
        SampleSet([])
    with pytest.raises(ValidationError):
        SampleSet([-1.0])
    with pytest.raises(ValidationError):
        SampleSet([1.0, 2.0], [0.5, 0.6])
    s = SampleSet([1.0, 2.0], [0.25, 0.75])
    assert SampleSet.from_json_obj(s.to_json_obj()).values.tolist() == [1.0, 2.0]


def test_empirical_norm_point_mass_and_zero():
    assert empirical_orlicz_norm(SampleSet([3.0, 3.0]), 2.0) == pytest.approx(3 / math.sqrt(math.log(2)))
    assert empirical_orlicz_norm(SampleSet([0.0, 0.0]), 1.0) == 0.0


def test_empirical_norm_two_atoms_closed_form():
    # 0.5 e^{1/t} + 0.5 e^{2/t} = 2  =>  e^{1/t} = (-1 + sqrt(17))/2
    t = 1 / math.log((-1 + math.sqrt(17)) / 2)
    assert empirical_orlicz_norm(SampleSet([1.0, 2.0]), 1.0) == pytest.approx(t, rel=1e-12)


positive_samples = st.lists(st.floats(min_value=0.0, max_value=50.0), min_size=1, max_size=40).filter(
    lambda v: max(v) > 1e-6)


@settings(max_examples=80, deadline=None)
@given(positive_samples, st.sampled_from([0.5, 1.0, 2.0]), st.floats(min_value=1e-3, max_value=1e3))
def test_empirical_norm_homogeneous(values, alpha, c):
    s = SampleSet(values)
    assert empirical_orlicz_norm(s.scaled(c), alpha) == pytest.approx(c * empirical_orlicz_norm(s, alpha), rel=1e-9)


@settings(max_examples=80, deadline=None)
@given(positive_samples, st.sampled_from([0.5, 1.0, 2.0]))
def test_empirical_norm_solves_defining_equation(values, alpha):
    s = SampleSet(values)
    t = empirical_orlicz_norm(s, alpha)
    assert defining_mean(s, alpha, t) == pytest.approx(1.0, rel=1e-8)
    assert certify_declared_norm(s, t * 1.001, alpha, 0.0)


@settings(max_examples=50, deadline=None)
@given(positive_samples, st.sampled_from([2.0, 4.0]))
def test_squaring_identity(values, alpha):
    v = np.asarray(values)
    sq = empirical_orlicz_norm(SampleSet(v ** 2), alpha / 2)
    assert sq == pytest.approx(empirical_orlicz_norm(SampleSet(v), alpha) ** 2, rel=1e-8)


@settings(max_examples=50, deadline=None)
@given(positive_samples, st.sampled_from([0.5, 1.0, 2.0]))
def test_second_moment_bound(values, alpha):
    v = np.asarray(values)
    norm = empirical_orlicz_norm(SampleSet(v), alpha)
    assert np.mean(v ** 2) <= 2 * (2 / (alpha * math.e)) ** (2 / alpha) * norm ** 2 * (1 + 1e-9)


def test_empirical_weibull_converges_to_law():
    rng = np.random.default_rng(12345)
    v = 1.3 * rng.weibull(2.0, 200_000)
    est = empirical_orlicz_norm(SampleSet(v), 1.0)
    assert est == pytest.approx(law_orlicz_norm(LawSpec.weibull(1.3, 2.0), 1.0), rel=0.02)
