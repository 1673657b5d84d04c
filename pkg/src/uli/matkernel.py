"""Dense complex linear algebra kernels.

Plain ``complex128`` numpy arrays are the universal carrier for states and
operators; this module wraps the numpy factorizations with the conventions
the rest of the toolkit relies on: a deterministic SVD phase convention,
exactly Haar-distributed unitaries, a size-capped Kronecker product, and
nullspace dimensions of real linear systems.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_DECISION_TOL, KRON_ENTRY_CAP
from .errors import ConvergenceFailure, DimensionMismatch, DimensionOverflow


def as_complex_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a 2-d complex128 array, rejecting empty or non-finite input."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if m.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def rect_diag(values, rows: int, cols: int) -> np.ndarray:
    """Rectangular rows x cols matrix with ``values`` on the main diagonal."""
    v = np.asarray(values, dtype=np.complex128).ravel()
    out = np.zeros((rows, cols), dtype=np.complex128)
    k = min(v.size, rows, cols)
    out[np.arange(k), np.arange(k)] = v[:k]
    return out


def unitarity_defect(u) -> float:
    """Max-entry deviation of ``u.conj().T @ u`` from the identity."""
    m = as_complex_matrix(u, "u")
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got shape {m.shape}")
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


@dataclass(frozen=True)
class SvdResult:
    """Factorization ``input = u @ rect_diag(sigma) @ v.conj().T``.

    ``u`` is rows x rows unitary, ``v`` is cols x cols unitary, ``sigma`` holds
    the min(rows, cols) singular values sorted descending.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        rows, cols = self.u.shape[0], self.v.shape[0]
        return self.u @ rect_diag(self.sigma, rows, cols) @ self.v.conj().T


def _normalize_phases(u: np.ndarray, vh: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Rotate each left singular vector so its first largest-modulus component
    # is real positive; compensate in the paired row of vh so the product is
    # unchanged. Unpaired columns/rows (beyond min(m, n)) multiply zero
    # singular values and are phase-fixed independently.
    u = u.copy()
    vh = vh.copy()
    paired = min(u.shape[0], vh.shape[0])
    for k in range(u.shape[1]):
        col = u[:, k]
        pivot = col[np.argmax(np.abs(col))]
        phase = pivot / abs(pivot)
        u[:, k] = col * np.conj(phase)
        if k < paired:
            vh[k, :] = vh[k, :] * phase
    for k in range(paired, vh.shape[0]):
        row = vh[k, :]
        pivot = row[np.argmax(np.abs(row))]
        phase = pivot / abs(pivot)
        vh[k, :] = row * np.conj(phase)
    return u, vh


def svd(m, *, phase_normalize: bool = True) -> SvdResult:
    """Full singular value decomposition with a deterministic phase convention.

    The phase convention (largest-modulus pivot of each left singular vector
    made real positive) keeps repeated runs on identical input bit-identical,
    which golden-file tests depend on.
    """
    a = as_complex_matrix(m)
    try:
        u, sigma, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    if phase_normalize:
        u, vh = _normalize_phases(u, vh)
    return SvdResult(u=u, sigma=sigma, v=vh.conj().T)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an n x n unitary from the Haar measure.

    Complex Ginibre matrix, QR, then the columns of Q are rotated by the
    inverse phases of R's diagonal. Left invariance of the Ginibre ensemble
    makes the result exactly Haar distributed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    mag = np.abs(d)
    # zero diagonal entries occur with probability zero; keep those phases at 1
    phase = np.where(mag > 0, d / np.where(mag > 0, mag, 1.0), 1.0)
    return q * phase.conj()


def kron(a, b, *, entry_cap: int = KRON_ENTRY_CAP) -> np.ndarray:
    """Kronecker product with ``a`` as the major factor, refused above the cap."""
    ma = as_complex_matrix(a, "a")
    mb = as_complex_matrix(b, "b")
    rows = ma.shape[0] * mb.shape[0]
    cols = ma.shape[1] * mb.shape[1]
    if rows * cols > entry_cap:
        raise DimensionOverflow(
            f"Kronecker product would hold {rows * cols} entries, cap is {entry_cap}"
        )
    return np.kron(ma, mb)


def real_nullspace_dimension(coeffs, tol: float = DEFAULT_DECISION_TOL) -> int:
    """Dimension of the nullspace of a real coefficient matrix.

    Rank counts singular values at or above ``tol`` times the largest one
    (absolute ``tol`` when the matrix is zero); the nullspace dimension is the
    column count minus the rank. Using the column count rather than the number
    of small singular values keeps wide systems (more unknowns than equations)
    correct.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 2 or c.size == 0:
        raise ValueError("coeffs must be a non-empty 2-d real array")
    if not np.all(np.isfinite(c)):
        raise ValueError("coeffs contains non-finite entries")
    try:
        sigma = np.linalg.svd(c, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    smax = float(sigma[0]) if sigma.size else 0.0
    cutoff = tol * smax if smax > 0 else tol
    rank = int(np.count_nonzero(sigma >= cutoff))
    return c.shape[1] - rank
