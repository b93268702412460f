"""
Dense complex small-matrix helpers.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
Hermitian eigensolver is a cyclic complex Jacobi iteration, which is more than
fast enough for the dimensions used here (never above 16) and gives
deterministic, well-ordered eigenvectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NoConvergenceError, NotHermitianError

MAX_DIM = 16
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d array, got shape {m.shape}")
    return m


def adjoint(m) -> np.ndarray:
    return np.conj(as_matrix(m)).T


def ket(v) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape(-1)


def projector(v) -> np.ndarray:
    """|v><v| for a (not necessarily normalized) vector."""
    v = ket(v)
    return np.outer(v, np.conj(v))


def hermiticity_error(m) -> float:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return np.inf
    return float(np.max(np.abs(m - np.conj(m).T), initial=0.0))


@dataclass(frozen=True)
class HermitianEigenResult:
    """Eigenvalues sorted descending and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ np.conj(v).T


_NEGLIGIBLE = 1e-250


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    # annihilate a[p, q] in place: J = diag(1, e^{-i phi}) @ [[c, s], [-s, c]]
    apq = a[p, q]
    r = abs(apq)
    alpha = a[p, p].real
    beta = a[q, q].real
    # entries this small are below any meaningful threshold; dividing by them
    # only produces overflow or nan phases
    if r < max(_NEGLIGIBLE, 1e-20 * (abs(alpha) + abs(beta))):
        a[p, q] = 0.0
        a[q, p] = 0.0
        return
    phase = apq / r
    tau = (beta - alpha) / (2.0 * r)
    t = np.copysign(1.0, tau) / (abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    pc = np.conj(phase)
    j = np.array([[c, s], [-s * pc, c * pc]], dtype=complex)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ j
    a[idx, :] = np.conj(j).T @ a[idx, :]
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = alpha - t * r
    a[q, q] = beta + t * r
    v[:, idx] = v[:, idx] @ j


def _fix_phase(vecs: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        nz = np.flatnonzero(np.abs(col) > tol)
        if nz.size:
            lead = col[nz[0]]
            out[:, k] = col * (abs(lead) / lead)
    return out


def hermitian_eigen(m, tol: float = 1e-12) -> HermitianEigenResult:
    """
    Eigendecomposition of a small Hermitian matrix by cyclic complex Jacobi.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix, dimension at most 16.
    tol : float
        Hermiticity tolerance on ``max|M - M^dagger|``.

    Returns
    -------
    HermitianEigenResult
        Eigenvalues in descending order. Each eigenvector has its first
        nonzero entry made real positive so identical inputs always give
        identical output.

    Raises
    ------
    NotHermitianError
        If the input is not Hermitian within ``tol``.
    NoConvergenceError
        If the off-diagonal norm is still above threshold after 100 sweeps.
    """
    m = as_matrix(m)
    n, n2 = m.shape
    if n != n2:
        raise DimensionMismatchError(f"hermitian_eigen needs a square matrix, got {m.shape}")
    if n > MAX_DIM:
        raise DimensionMismatchError(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
    err = hermiticity_error(m)
    if err > tol:
        raise NotHermitianError(f"max|M - M^dagger| = {err:.3e} exceeds tol {tol:.1e}")

    a = 0.5 * (m + np.conj(m).T)
    v = np.eye(n, dtype=complex)
    scale = max(float(np.sqrt(np.sum(np.abs(a) ** 2))), 1.0)
    threshold = OFFDIAG_TOL * scale
    for _ in range(MAX_SWEEPS + 1):
        if _offdiag_norm(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    else:
        raise NoConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    w = np.real(np.diag(a)).copy()
    order = np.argsort(-w, kind="stable")
    return HermitianEigenResult(eigenvalues=w[order], eigenvectors=_fix_phase(v[:, order]))


def trace_norm(m) -> float:
    """
    Sum of singular values, ``Tr sqrt(M^dagger M)``.

    Hermitian input goes through the Jacobi solver (sum of absolute
    eigenvalues); anything else falls back to an SVD.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"trace_norm needs a square matrix, got {m.shape}")
    if m.size == 0:
        return 0.0
    scale = max(float(np.max(np.abs(m))), 1.0)
    if hermiticity_error(m) <= 1e-12 * scale:
        return float(np.sum(np.abs(hermitian_eigen(m, tol=1e-12 * scale).eigenvalues)))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def kron(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    m, n = a.shape
    p, q = b.shape
    # out[i*p + k, j*q + l] = a[i, j] * b[k, l]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(m * p, n * q)


def partial_trace(m, dim_a: int, dim_b: int, keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite operator on ``C^dim_a (x) C^dim_b``."""
    m = as_matrix(m)
    if m.shape != (dim_a * dim_b, dim_a * dim_b):
        raise DimensionMismatchError(
            f"matrix shape {m.shape} does not match dim_a*dim_b = {dim_a * dim_b}"
        )
    t = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ikjk->ij", t)
    if keep == "B":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
