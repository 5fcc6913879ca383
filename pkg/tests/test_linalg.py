import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mtbounds.errors import DomainError, ValidationError
from mtbounds.linalg import (HermitianMatrix, eig, eigvalsh, intrinsic_dim, lambda_max, lambda_min, matrix_fn,
                             op_norm, psd_leq, trace)


def random_hermitian(rng, d, complex_=True):
    g = rng.standard_normal((d, d)) + (1j * rng.standard_normal((d, d)) if complex_ else 0)
    return (g + g.conj().T) / 2


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
dims = st.integers(min_value=1, max_value=8)


@settings(max_examples=60, deadline=None)
@given(seeds, dims)
def test_eig_decomposes(seed, d):
    a = random_hermitian(np.random.default_rng(seed), d)
    sp = eig(HermitianMatrix(a))
    lam, v = sp.eigenvalues, sp.eigenvectors
    assert np.all(np.diff(lam) >= 0)
    scale = 1 + np.linalg.norm(a)
    assert np.linalg.norm(a @ v - v * lam) <= 1e-10 * scale
    assert np.linalg.norm(v.conj().T @ v - np.eye(d)) <= 1e-10
    assert lam.sum() == pytest.approx(np.trace(a).real, abs=1e-10 * scale)


@settings(max_examples=40, deadline=None)
@given(seeds, dims)
def test_eigvalsh_matches_numpy(seed, d):
    # independent oracle: LAPACK through numpy
    a = random_hermitian(np.random.default_rng(seed), d)
    np.testing.assert_allclose(eigvalsh(HermitianMatrix(a)), np.linalg.eigvalsh(a), atol=1e-10 * (1 + np.abs(a).max()))


def test_known_spectra():
    pauli_y = HermitianMatrix([[0, -1j], [1j, 0]])
    np.testing.assert_allclose(eigvalsh(pauli_y), [-1, 1], atol=1e-14)
    assert lambda_max(HermitianMatrix.diag([3, -5, 1])) == pytest.approx(3)
    assert lambda_min(HermitianMatrix.diag([3, -5, 1])) == pytest.approx(-5)
    assert op_norm(HermitianMatrix.diag([3, -5, 1])) == pytest.approx(5)
    assert trace(HermitianMatrix.diag([3, -5, 1])) == pytest.approx(-1)
    assert lambda_max(HermitianMatrix(2.5)) == 2.5


def test_repeated_eigenvalues_have_orthonormal_vectors():
    sp = eig(HermitianMatrix.identity(4) * 2.0)
    np.testing.assert_allclose(sp.eigenvalues, [2, 2, 2, 2])
    np.testing.assert_allclose(sp.eigenvectors.conj().T @ sp.eigenvectors, np.eye(4), atol=1e-12)


def test_hermitian_validation():
    with pytest.raises(ValidationError):
        HermitianMatrix([[0, 1], [0, 0]])
    with pytest.raises(ValidationError):
        HermitianMatrix(np.ones((2, 3)))
    with pytest.raises(ValidationError):
        HermitianMatrix([[np.nan]])
    # tiny asymmetry within tolerance is symmetrized
    a = HermitianMatrix([[1.0, 1e-14], [0.0, 1.0]])
    assert np.array_equal(a.data, a.data.conj().T)


def test_json_round_trip():
    a = HermitianMatrix([[1, 2 - 1j], [2 + 1j, -3]])
    obj = json.loads(a.to_json())
    assert set(obj) == {"d", "re", "im"}
    assert HermitianMatrix.from_json_obj(obj) == a
    real = HermitianMatrix.diag([1, 2])
    assert "im" not in real.to_json_obj()
    with pytest.raises(ValidationError):
        HermitianMatrix.from_json_obj({"d": 3, "re": [[1, 0], [0, 1]]})


def test_arithmetic_preserves_type():
    a = HermitianMatrix.diag([1, 2])
    b = a + a - HermitianMatrix.identity(2)
    assert isinstance(b, HermitianMatrix)
    np.testing.assert_allclose(b.data, np.diag([1, 3]))
    assert (2 * a) == HermitianMatrix.diag([2, 4])


@settings(max_examples=30, deadline=None)
@given(seeds, dims)
def test_matrix_fn_exp_and_square(seed, d):
    a = random_hermitian(np.random.default_rng(seed), d)
    sq = matrix_fn(lambda t: t * t, HermitianMatrix(a))
    np.testing.assert_allclose(sq.data, a @ a, atol=1e-9 * (1 + np.abs(a).max() ** 2))


def test_matrix_fn_domain():
    with pytest.raises(DomainError):
        matrix_fn(math.log, HermitianMatrix.diag([-1.0, 1.0]))


@settings(max_examples=30, deadline=None)
@given(seeds, dims)
def test_intrinsic_dim_range(seed, d):
    g = np.random.default_rng(seed).standard_normal((d, d))
    r = intrinsic_dim(HermitianMatrix(g @ g.T + 1e-3 * np.eye(d)))
    assert 1 - 1e-12 <= r <= d + 1e-12


def test_intrinsic_dim_examples():
    assert intrinsic_dim(HermitianMatrix.identity(5)) == pytest.approx(5)
    assert intrinsic_dim(HermitianMatrix.diag([1] + [1e-3] * 31)) == pytest.approx(1.031)
    with pytest.raises(DomainError):
        intrinsic_dim(HermitianMatrix.diag([1, -1]))
    with pytest.raises(DomainError):
        intrinsic_dim(HermitianMatrix.diag([0, 0]))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_psd_order(seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((3, 3))
    a = HermitianMatrix(g @ g.T)
    h = rng.standard_normal((3, 3))
    b = a + HermitianMatrix(h @ h.T)
    assert psd_leq(a, a)
    assert psd_leq(a, b, 1e-12)
    assert psd_leq(HermitianMatrix.diag([0, 0, 0]), a, 1e-12)


def test_psd_leq_rejects_mismatch():
    with pytest.raises(ValidationError):
        psd_leq(HermitianMatrix.identity(2), HermitianMatrix.identity(3))
    assert not psd_leq(HermitianMatrix.diag([1, 0]), HermitianMatrix.diag([0, 1]))
