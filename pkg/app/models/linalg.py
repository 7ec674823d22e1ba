"""Linear algebra result models."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Inertia(BaseModel):
    """Negative, zero and positive eigenvalue counts of a Hermitian matrix or pencil."""

    model_config = ConfigDict(frozen=True)

    negative: int = Field(..., ge=0, description="Eigenvalues below the zero band")
    zero: int = Field(..., ge=0, description="Eigenvalues inside the zero band")
    positive: int = Field(..., ge=0, description="Eigenvalues above the zero band")

    @property
    def dim(self) -> int:
        """Total count."""
        return self.negative + self.zero + self.positive

    def as_tuple(self) -> tuple[int, int, int]:
        """Return (negative, zero, positive)."""
        return self.negative, self.zero, self.positive


class EigenDecomposition(BaseModel):
    """Ascending eigenvalues with eigenvectors as columns.

    For standard problems the columns are orthonormal; for pencils (F, M) they are
    orthonormal in the M inner product.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: np.ndarray = Field(..., description="Real eigenvalues, non-decreasing")
    eigenvectors: np.ndarray = Field(..., description="Eigenvectors as columns")

    @model_validator(mode="after")
    def _check_shapes(self) -> "EigenDecomposition":
        if self.eigenvalues.ndim != 1:
            raise ValueError("eigenvalues must be a vector")
        if self.eigenvectors.shape != (self.eigenvalues.size, self.eigenvalues.size):
            raise ValueError("eigenvectors must be a square matrix matching the eigenvalues")
        return self

    @property
    def dim(self) -> int:
        """Matrix dimension."""
        return int(self.eigenvalues.size)
