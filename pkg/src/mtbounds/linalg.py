"""Dense Hermitian matrices: spectral decomposition, spectral functions,
PSD order and effective rank.

The eigensolver is a cyclic Jacobi iteration on the real symmetric 2d x 2d
embedding [[Re A, -Im A], [Im A, Re A]].  Every eigenvalue of A shows up
twice there; the complex eigenvectors are recovered cluster by cluster.
"""
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, ValidationError

HERMITIAN_RTOL = 1e-12
JACOBI_OFF_RTOL = 1e-13
JACOBI_MAX_SWEEPS = 30


class HermitianMatrix:
    """Immutable d x d complex Hermitian matrix.

    The Hermitian check is max|A - A^*| <= 1e-12 (1 + max|A|); inputs that
    pass are symmetrized exactly so downstream code sees A == A^*.
    """

    __slots__ = ("_data",)

    def __init__(self, entries):
        a = np.array(entries, dtype=complex)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValidationError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValidationError("matrix has non-finite entries")
        scale = float(np.max(np.abs(a)))
        asym = float(np.max(np.abs(a - a.conj().T)))
        if asym > HERMITIAN_RTOL * (1.0 + scale):
            raise ValidationError(f"matrix is not Hermitian (max asymmetry {asym:.3e})")
        a = 0.5 * (a + a.conj().T)
        a.setflags(write=False)
        self._data = a

    @property
    def data(self):
        return self._data

    @property
    def dim(self):
        return self._data.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self._data if dtype is None else self._data.astype(dtype)

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        return hash(self._data.tobytes())

    def __add__(self, other):
        return HermitianMatrix(self._data + as_array(other))

    def __sub__(self, other):
        return HermitianMatrix(self._data - as_array(other))

    def __mul__(self, c):
        c = float(c)
        return HermitianMatrix(self._data * c)

    __rmul__ = __mul__

    def is_real(self):
        return bool(np.all(self._data.imag == 0))

    @classmethod
    def identity(cls, d):
        return cls(np.eye(d))

    @classmethod
    def diag(cls, values):
        return cls(np.diag(np.asarray(values, dtype=float)))

    def to_json_obj(self):
        obj = {"d": self.dim, "re": self._data.real.tolist()}
        if not self.is_real():
            obj["im"] = self._data.imag.tolist()
        return obj

    @classmethod
    def from_json_obj(cls, obj):
        """Parse the {"d", "re", "im"} encoding; a missing "im" means real."""
        if not isinstance(obj, dict) or "re" not in obj:
            raise ValidationError('matrix JSON needs at least the "re" field')
        try:
            re = np.array(obj["re"], dtype=float)
            im = np.array(obj["im"], dtype=float) if obj.get("im") is not None else np.zeros_like(re)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad matrix entries: {exc}") from None
        if re.ndim != 2 or re.shape != im.shape:
            raise ValidationError("re/im must be square arrays of equal shape")
        d = obj.get("d", re.shape[0])
        if int(d) != re.shape[0]:
            raise ValidationError(f"declared d={d} does not match {re.shape[0]} rows")
        return cls(re + 1j * im)

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


def as_array(A):
    if isinstance(A, HermitianMatrix):
        return A.data
    return np.asarray(A, dtype=complex)


def as_hermitian(A):
    return A if isinstance(A, HermitianMatrix) else HermitianMatrix(A)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def real_embedding(a):
    """[[Re a, -Im a], [Im a, Re a]] as a float array."""
    re, im = a.real, a.imag
    return np.block([[re, -im], [im, re]])


def jacobi_symmetric(s, off_rtol=JACOBI_OFF_RTOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigen-decomposition of a real symmetric matrix.

    Returns (eigenvalues, eigenvectors) unsorted.  Stops when the
    off-diagonal Frobenius norm drops to off_rtol*||s||_F or after
    max_sweeps sweeps.
    """
    a = np.array(s, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    norm_f = float(np.linalg.norm(a))
    threshold = off_rtol * norm_f

    mask = ~np.eye(n, dtype=bool)

    def off_norm():
        # summing the off-diagonal squares directly; ||a||^2 - ||diag||^2
        # cancels and cannot resolve the 1e-13 target
        return float(np.sqrt(np.sum(a[mask] ** 2)))

    off = off_norm()
    sweeps = 0
    while off > threshold and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - sn * col_q
                a[:, q] = sn * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - sn * row_q
                a[q, :] = sn * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - sn * vq
                v[:, q] = sn * vp + c * vq
        sweeps += 1
        off = off_norm()
    # the 30-sweep cap is the documented stopping rule; only a clearly
    # unconverged state is an error
    if off > 1e-8 * max(norm_f, 1e-300):
        raise ConvergenceError(f"Jacobi stalled: off-diagonal norm {off:.3e} after {sweeps} sweeps")
    return np.diag(a).copy(), v


def _normalize_phase(vec):
    """Make the largest-magnitude component real and positive."""
    mags = np.abs(vec)
    k = int(np.argmax(np.round(mags, 12)))
    ph = vec[k] / mags[k]
    return vec / ph


def eig(A):
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues ascend; eigenvectors are unit columns with their
    largest-magnitude entry real and positive.
    """
    H = as_hermitian(A)
    a = H.data
    d = H.dim
    vals2, vecs2 = jacobi_symmetric(real_embedding(a))
    order = np.argsort(vals2, kind="stable")
    vals2 = vals2[order]
    vecs2 = vecs2[:, order]
    complex_cands = vecs2[:d, :] + 1j * vecs2[d:, :]

    scale = 1.0 + float(np.linalg.norm(a))
    gap_tol = 1e-10 * scale
    vectors = []
    start = 0
    while start < 2 * d:
        stop = start + 1
        while stop < 2 * d and vals2[stop] - vals2[stop - 1] <= gap_tol:
            stop += 1
        width = stop - start
        need = width // 2 if width % 2 == 0 else (width + 1) // 2
        cands = [complex_cands[:, j] for j in range(start, stop)]
        basis = vectors  # orthogonalize against everything accepted so far
        for _ in range(need):
            best, best_norm = None, -1.0
            for c in cands:
                r = c.copy()
                for b in basis:
                    r = r - np.vdot(b, r) * b
                for b in basis:  # second pass for stability
                    r = r - np.vdot(b, r) * b
                nr = float(np.linalg.norm(r))
                if nr > best_norm:
                    best, best_norm = r, nr
            if best_norm < 1e-6:
                break
            basis.append(best / best_norm)
        start = stop
    if len(vectors) != d:
        raise ConvergenceError(f"recovered {len(vectors)} eigenvectors, expected {d}")
    V = np.column_stack([_normalize_phase(v) for v in vectors])
    lams = np.real(np.einsum("ij,ik,kj->j", V.conj(), a, V))
    order = np.argsort(lams, kind="stable")
    return Spectrum(eigenvalues=lams[order], eigenvectors=V[:, order])


def eigvalsh(A):
    return eig(A).eigenvalues


def lambda_max(A):
    return float(eig(A).eigenvalues[-1])


def lambda_min(A):
    return float(eig(A).eigenvalues[0])


def op_norm(A):
    return float(np.max(np.abs(eig(A).eigenvalues)))


def trace(A):
    """Sum of eigenvalues, cross-checked against the diagonal sum."""
    H = as_hermitian(A)
    lam_sum = float(np.sum(eig(H).eigenvalues))
    diag_sum = float(np.real(np.trace(H.data)))
    if abs(lam_sum - diag_sum) > 1e-9 * (1.0 + float(np.linalg.norm(H.data))):
        raise ConvergenceError("trace cross-check failed")
    return diag_sum


def matrix_fn(f, A):
    """f(A) = V f(Lambda) V^* for a scalar function f."""
    spec = eig(A)
    try:
        fvals = np.array([float(f(float(lam))) for lam in spec.eigenvalues])
    except (ValueError, ArithmeticError) as exc:
        raise DomainError(f"function not defined on the spectrum: {exc}") from None
    if not np.all(np.isfinite(fvals)):
        raise DomainError("function is not finite on the spectrum")
    V = spec.eigenvectors
    out = (V * fvals) @ V.conj().T
    return HermitianMatrix(0.5 * (out + out.conj().T))


def psd_leq(A, B, slack=0.0):
    """True iff lambda_min(B - A) >= -slack."""
    a, b = as_array(A), as_array(B)
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch {a.shape} vs {b.shape}")
    if slack < 0:
        raise DomainError("slack must be >= 0")
    return lambda_min(HermitianMatrix(b - a)) >= -slack


def intrinsic_dim(S):
    """Effective rank tr(S)/||S|| of a nonzero PSD matrix."""
    H = as_hermitian(S)
    lams = eig(H).eigenvalues
    if lams[0] < -1e-10 * max(1.0, float(lams[-1])):
        raise DomainError("intrinsic_dim requires a PSD matrix")
    top = float(np.max(np.abs(lams)))
    if top == 0.0:
        raise DomainError("intrinsic_dim of the zero matrix is undefined")
    r = float(np.real(np.trace(H.data))) / top
    return min(max(r, 1.0), float(H.dim))
