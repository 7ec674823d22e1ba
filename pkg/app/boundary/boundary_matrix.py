"""Boundary matrix A(lambda), boundary pairs and the kernel of U - 1."""

from typing import Optional, Sequence

import numpy as np
from scipy.linalg import schur

from app.constants import DERIVATIVE_STEP_SCALE, KERNEL_RESIDUAL_TOL, RESIDUE_FACTOR
from app.exceptions import RankChangeError
from app.boundary.unitary import check_unitary, evaluate_U
from app.models.boundary import BoundaryMatrix, ConstraintData, RankConstancyReport, UnitaryBoundary
from app.utils.logger import logger
from app.utils.settings import settings


def residue_weight(u: complex) -> complex:
    """Weight of the eigenprojector of eigenvalue u in A.

    For ``u = exp(i t)`` this is ``-cot(t / 2)``; ``residue_weight(1j) == -1``.
    """
    return RESIDUE_FACTOR * (u + 1) / (u - 1)


def unitary_eigen(U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and an orthonormal eigenbasis of a unitary matrix.

    A complex Schur form of a normal matrix is diagonal, so the Schur vectors are
    orthonormal eigenvectors even for repeated eigenvalues.
    """
    T, Z = schur(check_unitary(U), output="complex")
    return np.diag(T).copy(), Z


def _one_tol(one_tol: Optional[float]) -> float:
    one_tol = settings.ONE_TOL if one_tol is None else one_tol
    if one_tol <= 0:
        raise ValueError(f"one_tol must be positive, got {one_tol}")
    return one_tol


def _ambiguous(distances: np.ndarray, one_tol: float) -> bool:
    return bool(np.any((distances > 0.5 * one_tol) & (distances <= 2.0 * one_tol)))


def boundary_matrix(U: np.ndarray, one_tol: Optional[float] = None) -> BoundaryMatrix:
    """Boundary matrix A = sum over eigenvalues u != 1 of c(u) P_u.

    Args:
        U: Unitary matrix.
        one_tol: Eigenvalues with ``|u - 1| <= one_tol`` count as 1; defaults to ONE_TOL.

    Returns:
        BoundaryMatrix with the ambiguity flag set when an eigenvalue lies within a factor of two
        of the band edge.
    """
    one_tol = _one_tol(one_tol)
    values, Z = unitary_eigen(U)
    distances = np.abs(values - 1.0)
    keep = distances > one_tol
    weights = np.zeros(values.size)
    weights[keep] = np.real(residue_weight(values[keep]))
    A = (Z * weights) @ Z.conj().T
    A = 0.5 * (A + A.conj().T)
    ambiguous = _ambiguous(distances, one_tol)
    if ambiguous:
        logger.warning(
            f"Eigenvalue of U near 1 is ambiguous at one_tol={one_tol:.1e}: "
            f"|u - 1| = {distances.min():.3e}"
        )
    return BoundaryMatrix(
        A=A, one_eigenvalue_tol=one_tol, unitary_eigenvalues=values, ambiguous=ambiguous
    )


def boundary_pair(U: np.ndarray, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Admissible boundary pair Y = (U - 1) X, Z = -i (U + 1) X.

    The pair satisfies ``(U - 1) Z + i (U + 1) Y = 0``.
    """
    U = np.asarray(U, dtype=complex)
    X = np.asarray(X, dtype=complex)
    if X.shape != (U.shape[0],):
        raise ValueError(f"X must have length {U.shape[0]}, got shape {X.shape}")
    identity = np.eye(U.shape[0])
    return (U - identity) @ X, -1j * ((U + identity) @ X)


def constraint_data(U: np.ndarray, one_tol: Optional[float] = None) -> ConstraintData:
    """Orthonormal basis of the eigenspace of U for eigenvalues within one_tol of 1."""
    one_tol = _one_tol(one_tol)
    values, Z = unitary_eigen(U)
    distances = np.abs(values - 1.0)
    kernel = Z[:, distances <= one_tol]
    ambiguous = _ambiguous(distances, one_tol)
    if ambiguous:
        logger.warning(f"Kernel of U - 1 is ambiguous at one_tol={one_tol:.1e}")
    residual = np.linalg.norm((np.asarray(U) - np.eye(U.shape[0])) @ kernel, axis=0)
    if kernel.size and residual.max() > max(KERNEL_RESIDUAL_TOL, 2.0 * one_tol):
        logger.warning(f"Kernel basis of U - 1 has residual {residual.max():.3e}")
    return ConstraintData(
        kernel_basis=kernel,
        codimension=int(values.size - kernel.shape[1]),
        ambiguous=ambiguous,
    )


def kernels_equal(first: ConstraintData, second: ConstraintData, tol: float = 1e-8) -> bool:
    """Whether two kernel bases span the same subspace."""
    if first.kernel_dimension != second.kernel_dimension:
        return False
    return float(np.linalg.norm(first.projector() - second.projector())) <= tol


def rank_constancy_check(
    bc: UnitaryBoundary,
    lambda_grid: Sequence[float],
    one_tol: Optional[float] = None,
) -> RankConstancyReport:
    """Sample rank(U(lambda) - 1) and ker(U(lambda) - 1) on a grid.

    Returns:
        Report whose ``constant`` is true iff every sampled rank agrees.
    """
    one_tol = _one_tol(one_tol)
    grid = [float(lam) for lam in lambda_grid]
    constraints = [constraint_data(evaluate_U(bc, lam), one_tol) for lam in grid]
    ranks = [constraint.codimension for constraint in constraints]
    constant = len(set(ranks)) <= 1
    kernel_constant = constant and all(kernels_equal(constraints[0], c) for c in constraints[1:])
    if not constant:
        logger.warning(f"rank(U - 1) is not constant on the grid: ranks {sorted(set(ranks))}")
    return RankConstancyReport(
        constant=constant, lambda_grid=grid, ranks=ranks, kernel_constant=kernel_constant
    )


def boundary_matrix_derivative(
    bc: UnitaryBoundary,
    lam: float,
    h: Optional[float] = None,
    one_tol: Optional[float] = None,
) -> np.ndarray:
    """Central difference (A(lambda + h) - A(lambda - h)) / (2h).

    Args:
        bc: Boundary parametrization.
        lam: Spectral parameter.
        h: Step; defaults to ``1e-5 * (1 + |lambda|)``.
        one_tol: Eigenvalue-one tolerance.

    Raises:
        RankChangeError: rank(U - 1) differs among lambda - h, lambda, lambda + h.
    """
    if bc.is_constant:
        return np.zeros((bc.size, bc.size))
    h = DERIVATIVE_STEP_SCALE * (1.0 + abs(lam)) if h is None else h
    one_tol = _one_tol(one_tol)
    stencil = (lam - h, lam, lam + h)
    ranks = tuple(constraint_data(evaluate_U(bc, point), one_tol).codimension for point in stencil)
    if len(set(ranks)) > 1:
        raise RankChangeError(lam - h, lam + h, ranks)
    A_plus = boundary_matrix(evaluate_U(bc, lam + h), one_tol).A
    A_minus = boundary_matrix(evaluate_U(bc, lam - h), one_tol).A
    derivative = (A_plus - A_minus) / (2.0 * h)
    return 0.5 * (derivative + derivative.conj().T)
