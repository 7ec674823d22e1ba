"""Dense Hermitian linear algebra."""

from app.linalg.hermitian import (
    as_hermitian,
    cholesky,
    classify_spectrum,
    generalized_eigen,
    generalized_eigenvalues,
    hermitian_eigen,
    hermitian_eigenvalues,
    inertia,
    is_positive_definite,
    spectral_scale,
)
from app.linalg.jacobi import jacobi_eigh

__all__ = [
    "as_hermitian",
    "cholesky",
    "classify_spectrum",
    "generalized_eigen",
    "generalized_eigenvalues",
    "hermitian_eigen",
    "hermitian_eigenvalues",
    "inertia",
    "is_positive_definite",
    "jacobi_eigh",
    "spectral_scale",
]
