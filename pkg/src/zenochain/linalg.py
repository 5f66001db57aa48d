"""Real-symmetric tridiagonal linear algebra.

Eigendecomposition, spectral time evolution, and closed-form tridiagonal
inverses/determinants. Every Hamiltonian in this package is real symmetric,
so eigenvectors are kept real and time evolution only multiplies them by
complex phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalFailureError, SingularMatrixError, ValidationError

# Components below this magnitude do not fix an eigenvector's sign.
PHASE_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class SymTridiagMatrix:
    """Real symmetric tridiagonal matrix stored as diagonal + off-diagonal.

    ``diag`` has length N, ``offdiag`` length N-1; entry ``offdiag[i]``
    couples sites i and i+1 (0-based).
    """

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self) -> None:
        diag = np.asarray(self.diag, dtype=float)
        offdiag = np.asarray(self.offdiag, dtype=float)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)
        if diag.ndim != 1 or diag.size < 1:
            raise ValidationError("diag: expected a 1-d array with at least one entry")
        if offdiag.ndim != 1 or offdiag.size != diag.size - 1:
            raise ValidationError("offdiag: expected length size-1")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(offdiag))):
            raise ValidationError("matrix entries must be finite")

    @property
    def size(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        idx = np.arange(self.size - 1)
        a[idx, idx + 1] = self.offdiag
        a[idx + 1, idx] = self.offdiag
        return a

    def matvec(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.size,):
            raise ValidationError(f"vector length {v.shape} does not match size {self.size}")
        out = self.diag * v
        out[:-1] = out[:-1] + self.offdiag * v[1:]
        out[1:] = out[1:] + self.offdiag * v[:-1]
        return out

    def max_abs_entry(self) -> float:
        m = float(np.max(np.abs(self.diag)))
        if self.offdiag.size:
            m = max(m, float(np.max(np.abs(self.offdiag))))
        return m


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal real eigenvectors.

    ``eigenvectors[:, i]`` belongs to ``eigenvalues[i]``. Each column's sign
    is fixed so that its first component with magnitude above ``PHASE_EPS``
    is positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.size


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Flip eigenvector signs to the canonical convention, in place."""
    lead = np.argmax(np.abs(vectors) > PHASE_EPS, axis=0)
    signs = np.sign(vectors[lead, np.arange(vectors.shape[1])])
    signs[signs == 0.0] = 1.0
    vectors *= signs
    return vectors


def eig_sym_tridiag(m: SymTridiagMatrix) -> SpectralDecomposition:
    """Full eigendecomposition of a symmetric tridiagonal matrix."""
    if m.size == 1:
        return SpectralDecomposition(m.diag.copy(), np.ones((1, 1)))
    try:
        w, v = scipy.linalg.eigh_tridiagonal(m.diag, m.offdiag)
    except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
        raise NumericalFailureError(
            f"tridiagonal eigensolver failed to converge on a {m.size}x{m.size} matrix"
        ) from exc
    return SpectralDecomposition(w, _fix_phases(v))


def eig_sym_dense(a: np.ndarray) -> SpectralDecomposition:
    """Eigendecomposition of a dense real symmetric matrix.

    Used for projector-derived matrices such as effective Hamiltonians.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > 1e-12 * scale:
        raise ValidationError("matrix is not symmetric")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(
            f"dense eigensolver failed to converge on a {a.shape[0]}x{a.shape[1]} matrix"
        ) from exc
    return SpectralDecomposition(w, _fix_phases(v))


def _check_state(d: SpectralDecomposition, psi0: np.ndarray) -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (d.size,):
        raise ValidationError(
            f"state dimension {psi0.shape} does not match decomposition size {d.size}"
        )
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise ValidationError("psi0 must have unit norm within 1e-12")
    return psi0


def evolve(d: SpectralDecomposition, psi0: np.ndarray, t: float) -> np.ndarray:
    """psi(t) = sum_n exp(-i eta_n t) (v_n . psi0) v_n."""
    psi0 = _check_state(d, psi0)
    if t == 0.0:
        return psi0.copy()
    amps = d.eigenvectors.T @ psi0
    return d.eigenvectors @ (np.exp(-1j * d.eigenvalues * t) * amps)


def evolve_grid(d: SpectralDecomposition, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
    """States at many times at once; column j is psi(times[j])."""
    psi0 = _check_state(d, psi0)
    times = np.asarray(times, dtype=float)
    amps = d.eigenvectors.T @ psi0
    phases = np.exp(-1j * np.outer(d.eigenvalues, times))
    return d.eigenvectors @ (phases * amps[:, None])


def _continuants(m: SymTridiagMatrix) -> np.ndarray:
    """Leading principal minors theta[0..N] with theta[0] = 1."""
    n = m.size
    a, b = m.diag, m.offdiag
    theta = np.empty(n + 1)
    theta[0] = 1.0
    theta[1] = a[0]
    for i in range(2, n + 1):
        theta[i] = a[i - 1] * theta[i - 1] - b[i - 2] ** 2 * theta[i - 2]
    return theta


def det_tridiag(m: SymTridiagMatrix) -> float:
    """Determinant via the three-term continuant recursion."""
    return float(_continuants(m)[-1])


def invert_tridiag(m: SymTridiagMatrix) -> np.ndarray:
    """Closed-form inverse of a symmetric tridiagonal matrix.

    Element (i, j), i <= j, equals
    (-1)^(i+j) b_i...b_{j-1} theta_{i-1} phi_{j+1} / theta_N
    with theta the forward and phi the backward continuants.

    Raises SingularMatrixError when |det| < 1e-12 * (max|entry|)^N; an
    unmodified odd chain's interior block lands here through its exact zero
    mode.
    """
    n = m.size
    a, b = m.diag, m.offdiag
    theta = _continuants(m)
    det = theta[-1]

    scale = m.max_abs_entry()
    singular = det == 0.0 or scale == 0.0
    if not singular:
        # compare in logs so the threshold never overflows for large N
        log_thresh = np.log(1e-12) + n * np.log(scale)
        singular = np.log(abs(det)) < log_thresh
    if singular:
        raise SingularMatrixError(
            f"tridiagonal matrix of size {n}x{n} is singular (det={det:.3e})"
        )

    phi = np.empty(n + 2)
    phi[n + 1] = 1.0
    phi[n] = a[n - 1]
    for i in range(n - 1, 0, -1):
        phi[i] = a[i - 1] * phi[i + 1] - b[i - 1] ** 2 * phi[i + 2]

    inv = np.empty((n, n))
    for i in range(n):
        prod = theta[i] / det
        inv[i, i] = prod * phi[i + 2]
        for j in range(i + 1, n):
            prod *= -b[j - 1]
            inv[i, j] = prod * phi[j + 2]
            inv[j, i] = inv[i, j]
    return inv
