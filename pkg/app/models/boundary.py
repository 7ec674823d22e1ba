"""Boundary parametrization records."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.constants import BoundaryForm
from app.models.matrix_types import Matrix


class UnitaryBoundary(BaseModel):
    """Unitary boundary matrix U(lambda) of size 2n.

    The ``constant`` form holds a fixed matrix U0. The ``generated`` form holds Hermitian
    generators with ``U(lambda) = exp(i (theta0 + lambda * theta1))``; ``theta1`` defaults to zero.
    Unitarity and hermiticity are enforced when U is evaluated.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    form: BoundaryForm = Field(..., description="constant or generated")
    u0: Optional[Matrix] = Field(default=None, description="Fixed unitary matrix (constant form)")
    theta0: Optional[Matrix] = Field(default=None, description="Hermitian generator offset")
    theta1: Optional[Matrix] = Field(
        default=None, description="Hermitian generator slope in lambda"
    )

    @model_validator(mode="after")
    def _check_form(self) -> "UnitaryBoundary":
        if self.form is BoundaryForm.CONSTANT:
            if self.u0 is None:
                raise ValueError("constant boundary needs u0")
            size = self.u0.shape[0]
        else:
            if self.theta0 is None:
                raise ValueError("generated boundary needs theta0")
            size = self.theta0.shape[0]
            if self.theta1 is not None and self.theta1.shape != self.theta0.shape:
                raise ValueError(
                    f"theta1 shape {self.theta1.shape} differs from "
                    f"theta0 shape {self.theta0.shape}"
                )
        if size % 2:
            raise ValueError(f"boundary matrix size must be even, got {size}")
        return self

    @classmethod
    def constant(cls, u0: np.ndarray) -> "UnitaryBoundary":
        """Boundary with a lambda-independent U."""
        return cls(form=BoundaryForm.CONSTANT, u0=u0)

    @classmethod
    def generated(
        cls, theta0: np.ndarray, theta1: Optional[np.ndarray] = None
    ) -> "UnitaryBoundary":
        """Boundary ``exp(i (theta0 + lambda * theta1))``."""
        return cls(form=BoundaryForm.GENERATED, theta0=theta0, theta1=theta1)

    @property
    def size(self) -> int:
        """Matrix size 2n."""
        matrix = self.u0 if self.form is BoundaryForm.CONSTANT else self.theta0
        return int(matrix.shape[0])

    @property
    def is_constant(self) -> bool:
        """Whether U does not depend on lambda."""
        if self.form is BoundaryForm.CONSTANT:
            return True
        return self.theta1 is None or not np.any(self.theta1)


class BoundaryMatrix(BaseModel):
    """Hermitian boundary matrix A of the quadratic form ``<A y^, y^>``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    A: np.ndarray = Field(..., description="Hermitian matrix of size 2n")
    one_eigenvalue_tol: float = Field(
        ..., gt=0, description="Eigenvalues of U this close to 1 count as 1"
    )
    unitary_eigenvalues: np.ndarray = Field(..., description="Eigenvalues of U")
    ambiguous: bool = Field(
        default=False, description="Some eigenvalue of U sits near the one_tol band edge"
    )


class ConstraintData(BaseModel):
    """Orthonormal basis of ker(U - 1) restricting the boundary trace."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kernel_basis: np.ndarray = Field(..., description="Columns spanning ker(U - 1)")
    codimension: int = Field(..., ge=0, description="rank(U - 1)")
    ambiguous: bool = Field(
        default=False, description="Some eigenvalue of U sits near the one_tol band edge"
    )

    @property
    def kernel_dimension(self) -> int:
        """dim ker(U - 1)."""
        return int(self.kernel_basis.shape[1])

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto ker(U - 1)."""
        K = self.kernel_basis
        return K @ K.conj().T


class RankConstancyReport(BaseModel):
    """rank(U(lambda) - 1) sampled on a grid."""

    model_config = ConfigDict(frozen=True)

    constant: bool = Field(..., description="Whether every sampled rank agrees")
    lambda_grid: list[float] = Field(default_factory=list)
    ranks: list[int] = Field(default_factory=list)
    kernel_constant: bool = Field(
        default=True, description="Whether ker(U(lambda) - 1) is the same subspace on the grid"
    )
