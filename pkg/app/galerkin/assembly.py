"""Assembly of the form matrix, its lambda-derivative and the mass matrix."""

from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.linalg import null_space

from app.exceptions import NonPositiveLeadingCoefficientError
from app.galerkin.basis import HermiteBasis
from app.models.boundary import BoundaryMatrix, ConstraintData
from app.models.galerkin import AssembledForm

# Coefficient p_k(., lambda) at fixed lambda, evaluated on an array of x; None means zero.
Coefficient = Optional[Callable[[np.ndarray], Union[np.ndarray, float]]]

_REAL_PART_TOL = 1e-14


def _real_if_close(matrix: np.ndarray) -> np.ndarray:
    matrix = np.asarray(matrix)
    if np.iscomplexobj(matrix):
        scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
        if not matrix.size or float(np.max(np.abs(matrix.imag))) <= _REAL_PART_TOL * scale:
            return matrix.real.copy()
    return matrix


def _sample(coefficient: Callable, x: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(coefficient(x), dtype=float), x.shape)


def _scatter(basis: HermiteBasis, local: np.ndarray) -> np.ndarray:
    rows = basis.element_dofs[:, :, None]
    cols = basis.element_dofs[:, None, :]
    matrix = np.zeros((basis.dofs, basis.dofs))
    np.add.at(matrix, (rows, cols), local)
    return 0.5 * (matrix + matrix.T)


def assemble_matrix(basis: HermiteBasis, coefficients: Sequence[Coefficient]) -> np.ndarray:
    """Matrix of ``sum_k int p_k phi_i^(n-k) phi_j^(n-k) dx`` by Gauss-Legendre quadrature.

    Args:
        basis: Element space.
        coefficients: ``p_0 .. p_n`` at a fixed lambda.
    """
    n = basis.n
    if len(coefficients) != n + 1:
        raise ValueError(f"expected {n + 1} coefficients, got {len(coefficients)}")
    x = basis.quadrature_points
    w = basis.quadrature_weights
    local = np.zeros((basis.elements, basis.local_size, basis.local_size))
    for k, coefficient in enumerate(coefficients):
        if coefficient is None:
            continue
        values = _sample(coefficient, x)
        if not np.any(values):
            continue
        table = basis.derivative_table(n - k)
        local += np.einsum("eq,q,iq,jq->eij", values, w, table, table)
    return _scatter(basis, local)


def mass_matrix(basis: HermiteBasis) -> np.ndarray:
    """L2 Gram matrix of the basis."""
    return assemble_matrix(basis, [None] * basis.n + [lambda x: 1.0])


def check_leading_coefficient(
    basis: HermiteBasis, p0: Callable, lam: Optional[float] = None
) -> None:
    """Require p0 > 0 at every quadrature point.

    Raises:
        NonPositiveLeadingCoefficientError: At the point with the smallest value.
    """
    values = _sample(p0, basis.quadrature_points)
    index = np.unravel_index(int(np.argmin(values)), values.shape)
    if values[index] <= 0:
        raise NonPositiveLeadingCoefficientError(
            float(basis.quadrature_points[index]), lam, float(values[index])
        )


def add_boundary_term(basis: HermiteBasis, F: np.ndarray, A: np.ndarray) -> np.ndarray:
    """Add ``T* A T`` for the trace map T; A acts on the trace dofs only."""
    A = _real_if_close(A)
    if np.iscomplexobj(A):
        F = F.astype(complex)
    else:
        F = F.copy()
    trace = basis.trace_dofs
    F[np.ix_(trace, trace)] += A
    return F


def reduction_map(
    basis: HermiteBasis, constraint: Optional[ConstraintData]
) -> Optional[np.ndarray]:
    """Orthonormal basis of ``{c : K* T c = 0}`` for the kernel basis K of U - 1.

    Interior dofs keep unit columns; the trace dofs are restricted to the null space of K*.
    Returns None when the kernel is trivial.
    """
    if constraint is None or constraint.kernel_dimension == 0:
        return None
    K = constraint.kernel_basis
    trace_space = _real_if_close(null_space(K.conj().T))
    trace = basis.trace_dofs
    interior = np.setdiff1d(np.arange(basis.dofs), trace)
    Q = np.zeros((basis.dofs, interior.size + trace_space.shape[1]), dtype=trace_space.dtype)
    Q[interior, np.arange(interior.size)] = 1.0
    Q[np.ix_(trace, np.arange(interior.size, Q.shape[1]))] = trace_space
    return Q


def reduce_matrix(matrix: np.ndarray, Q: Optional[np.ndarray]) -> np.ndarray:
    """Restriction ``Q* matrix Q``, Hermitian part."""
    if Q is None:
        return matrix
    reduced = Q.conj().T @ matrix @ Q
    return 0.5 * (reduced + reduced.conj().T)


def assemble_form(
    basis: HermiteBasis,
    coefficients: Sequence[Coefficient],
    boundary: Union[BoundaryMatrix, np.ndarray],
    constraint: Optional[ConstraintData] = None,
    lam: Optional[float] = None,
    mass: Optional[np.ndarray] = None,
    reduction: Optional[np.ndarray] = None,
) -> AssembledForm:
    """Assemble the pencil (F, M) of ``sum_k int p_k |y^(n-k)|^2 dx + <A y^, y^>``.

    Args:
        basis: Element space.
        coefficients: ``p_0 .. p_n`` at the spectral parameter.
        boundary: Boundary matrix A.
        constraint: Kernel of U - 1; the trace is restricted to its orthogonal complement.
        lam: Spectral parameter, used in error messages.
        mass: Precomputed full mass matrix.
        reduction: Precomputed reduction map; overrides ``constraint``.

    Raises:
        NonPositiveLeadingCoefficientError: p_0 is not positive somewhere.
    """
    if coefficients[0] is None:
        raise NonPositiveLeadingCoefficientError(basis.a, lam, 0.0)
    check_leading_coefficient(basis, coefficients[0], lam)
    A = boundary.A if isinstance(boundary, BoundaryMatrix) else np.asarray(boundary)
    F = add_boundary_term(basis, assemble_matrix(basis, coefficients), A)
    M = mass_matrix(basis) if mass is None else mass
    Q = reduction if reduction is not None else reduction_map(basis, constraint)
    return AssembledForm(
        F=reduce_matrix(F, Q),
        M=reduce_matrix(M, Q),
        constraint_reduced=Q is not None,
        reduction_map=Q,
        lam=lam,
    )


def assemble_form_derivative(
    basis: HermiteBasis,
    coefficient_derivatives: Sequence[Coefficient],
    A_prime: np.ndarray,
    reduction: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Matrix of ``sum_k int d/dlambda p_k |y^(n-k)|^2 dx + <A' y^, y^>`` on the reduced space."""
    F_prime = add_boundary_term(basis, assemble_matrix(basis, coefficient_derivatives), A_prime)
    return reduce_matrix(F_prime, reduction)
