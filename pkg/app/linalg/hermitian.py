"""Dense Hermitian linear algebra: eigendecomposition, inertia, Cholesky and pencils (F, M)."""

import math
from typing import Optional

import numpy as np
from scipy.linalg import solve_triangular

from app.constants import CHOLESKY_PIVOT_TOL, HERMITIAN_TOL, EigenSolver
from app.exceptions import NotHermitianError, NotPositiveDefiniteError
from app.linalg.jacobi import jacobi_eigh
from app.models.linalg import EigenDecomposition, Inertia
from app.utils.settings import settings


def as_hermitian(H: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate a Hermitian matrix and return its exactly Hermitian part.

    Args:
        H: Square matrix.
        tol: Absolute tolerance on ``|H[i, j] - conj(H[j, i])|``.

    Returns:
        ``(H + H*) / 2`` as float (real input) or complex array.

    Raises:
        NotHermitianError: If the largest asymmetry exceeds ``tol``.
    """
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    if not np.iscomplexobj(H):
        H = H.astype(float, copy=False)
    asymmetry = float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0
    if asymmetry > tol:
        raise NotHermitianError(asymmetry, tol)
    return 0.5 * (H + H.conj().T)


def _solver(solver: Optional[str]) -> EigenSolver:
    return EigenSolver(solver or settings.EIGEN_SOLVER)


def _sorted(values: np.ndarray, vectors: np.ndarray) -> EigenDecomposition:
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(eigenvalues=values[order], eigenvectors=vectors[:, order])


def hermitian_eigen(H: np.ndarray, solver: Optional[str] = None) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Args:
        H: Hermitian matrix.
        solver: ``"lapack"`` or ``"jacobi"``; defaults to the EIGEN_SOLVER setting.
    """
    H = as_hermitian(H)
    if H.shape[0] == 0:
        return EigenDecomposition(eigenvalues=np.zeros(0), eigenvectors=np.zeros((0, 0)))
    if _solver(solver) is EigenSolver.JACOBI:
        values, vectors = jacobi_eigh(H)
        return _sorted(values, vectors)
    values, vectors = np.linalg.eigh(H)
    return _sorted(values, vectors)


def hermitian_eigenvalues(H: np.ndarray, solver: Optional[str] = None) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    H = as_hermitian(H)
    if _solver(solver) is EigenSolver.JACOBI:
        return np.sort(jacobi_eigh(H)[0], kind="stable")
    return np.linalg.eigvalsh(H)


def spectral_scale(eigenvalues: np.ndarray) -> float:
    """Scale ``max(1, spectral radius)`` used by every relative zero band."""
    if eigenvalues.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(eigenvalues))))


def classify_spectrum(eigenvalues: np.ndarray, zero_tol: float) -> Inertia:
    """Count eigenvalues below, inside and above the band ``±zero_tol * spectral_scale``."""
    if zero_tol <= 0:
        raise ValueError(f"zero_tol must be positive, got {zero_tol}")
    band = zero_tol * spectral_scale(eigenvalues)
    negative = int(np.count_nonzero(eigenvalues < -band))
    positive = int(np.count_nonzero(eigenvalues > band))
    zero = int(eigenvalues.size) - negative - positive
    return Inertia(negative=negative, zero=zero, positive=positive)


def inertia(H: np.ndarray, zero_tol: Optional[float] = None) -> Inertia:
    """Inertia of a Hermitian matrix.

    Args:
        H: Hermitian matrix.
        zero_tol: Relative zero band; defaults to the INERTIA_ZERO_TOL setting.
    """
    zero_tol = settings.INERTIA_ZERO_TOL if zero_tol is None else zero_tol
    if zero_tol <= 0:
        raise ValueError(f"zero_tol must be positive, got {zero_tol}")
    return classify_spectrum(hermitian_eigenvalues(H), zero_tol)


def cholesky(M: np.ndarray) -> np.ndarray:
    """Lower-triangular Cholesky factor with ``L @ L* == M``.

    Raises:
        NotPositiveDefiniteError: At the first pivot not exceeding ``1e-12 * ||M||_F``.
    """
    M = as_hermitian(M)
    n = M.shape[0]
    threshold = CHOLESKY_PIVOT_TOL * float(np.linalg.norm(M))
    L = np.zeros_like(M)
    for j in range(n):
        row = L[j, :j]
        pivot = float((M[j, j] - np.vdot(row, row)).real)
        if pivot <= threshold:
            raise NotPositiveDefiniteError(j, pivot)
        ljj = math.sqrt(pivot)
        L[j, j] = ljj
        if j + 1 < n:
            L[j + 1 :, j] = (M[j + 1 :, j] - L[j + 1 :, :j] @ row.conj()) / ljj
    return L


def is_positive_definite(M: np.ndarray) -> bool:
    """Whether ``cholesky`` succeeds."""
    try:
        cholesky(M)
    except NotPositiveDefiniteError:
        return False
    return True


def _reduce_pencil(F: np.ndarray, M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    F = as_hermitian(F)
    L = cholesky(M)
    W = solve_triangular(L, F, lower=True)
    C = solve_triangular(L, W.conj().T, lower=True)
    return 0.5 * (C + C.conj().T), L


def generalized_eigen(
    F: np.ndarray, M: np.ndarray, solver: Optional[str] = None
) -> EigenDecomposition:
    """Eigenpairs of the pencil ``F x = mu M x`` through ``L^-1 F L^-*``.

    Eigenvectors are returned M-orthonormal.

    Raises:
        NotPositiveDefiniteError: If M is not positive definite.
    """
    C, L = _reduce_pencil(F, M)
    standard = hermitian_eigen(C, solver)
    vectors = solve_triangular(L, standard.eigenvectors, lower=True, trans="C")
    return EigenDecomposition(eigenvalues=standard.eigenvalues, eigenvectors=vectors)


def generalized_eigenvalues(
    F: np.ndarray, M: np.ndarray, solver: Optional[str] = None
) -> np.ndarray:
    """Ascending eigenvalues of the pencil (F, M)."""
    C, _ = _reduce_pencil(F, M)
    return hermitian_eigenvalues(C, solver)
