"""Evaluation of the unitary boundary matrix U(lambda)."""

import numpy as np

from app.constants import UNITARY_TOL, BoundaryForm
from app.exceptions import NotUnitaryError
from app.linalg import as_hermitian
from app.models.boundary import UnitaryBoundary


def unitary_deviation(U: np.ndarray) -> float:
    """Frobenius norm of U*U - I."""
    U = np.asarray(U)
    return float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0])))


def check_unitary(U: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    """Return U as a complex array after checking unitarity.

    Raises:
        NotUnitaryError: If ``||U*U - I|| > tol``.
    """
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {U.shape}")
    deviation = unitary_deviation(U)
    if deviation > tol:
        raise NotUnitaryError(deviation)
    return U


def generator(bc: UnitaryBoundary, lam: float) -> np.ndarray:
    """Hermitian generator theta0 + lambda * theta1 of a generated boundary."""
    theta = as_hermitian(bc.theta0)
    if bc.theta1 is not None:
        theta = theta + lam * as_hermitian(bc.theta1)
    return theta


def evaluate_U(bc: UnitaryBoundary, lam: float) -> np.ndarray:
    """Evaluate U(lambda).

    The generated form diagonalizes its Hermitian generator and exponentiates ``i`` times
    the eigenvalues, so the result is unitary up to rounding.

    Args:
        bc: Boundary parametrization.
        lam: Spectral parameter.

    Returns:
        Complex unitary matrix of size 2n.

    Raises:
        NotHermitianError: A generator is not Hermitian.
        NotUnitaryError: The constant matrix is not unitary.
    """
    if bc.form is BoundaryForm.CONSTANT:
        return check_unitary(bc.u0)
    values, vectors = np.linalg.eigh(generator(bc, lam))
    U = (vectors * np.exp(1j * values)) @ vectors.conj().T
    return check_unitary(U)
