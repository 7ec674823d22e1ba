"""Pencil metadata, branch tables and located eigenvalues."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.constants import Provenance


class PencilMetadata(BaseModel):
    """Static facts about a pencil model."""

    model_config = ConfigDict(frozen=True)

    dimension: int = Field(..., ge=1, description="Size of F(lambda) and M")
    provenance: Provenance = Field(..., description="abstract or differential")
    rank_constant: bool = Field(
        default=True, description="rank(U(lambda) - 1) constant on the sample grid"
    )
    kernel_constant: bool = Field(
        default=True, description="ker(U(lambda) - 1) constant on the sample grid"
    )
    notes: list[str] = Field(default_factory=list)


class BranchTable(BaseModel):
    """Sorted eigenvalue branches Lambda_m(lambda_j).

    ``branches[m - 1, j]`` is the m-th smallest eigenvalue of the pencil at ``lambda_grid[j]``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda_grid: np.ndarray = Field(..., description="Strictly ascending grid")
    branches: np.ndarray = Field(..., description="Array of shape (m_max, len(lambda_grid))")
    continuity: np.ndarray = Field(
        ..., description="Largest jump between neighbouring grid points per branch"
    )

    @model_validator(mode="after")
    def _check_table(self) -> "BranchTable":
        if self.lambda_grid.size > 1 and np.any(np.diff(self.lambda_grid) <= 0):
            raise ValueError("lambda_grid must be strictly ascending")
        if self.branches.shape[1] != self.lambda_grid.size:
            raise ValueError("branches must have one column per grid point")
        if self.branches.shape[0] > 1 and np.any(np.diff(self.branches, axis=0) < 0):
            raise ValueError("branches must be non-decreasing in m")
        return self

    @property
    def m_max(self) -> int:
        return int(self.branches.shape[0])


class LocatedEigenvalue(BaseModel):
    """Eigenvalue lambda0 of the pencil with its numerical kernel."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda0: float = Field(..., description="Refined root position")
    multiplicity: int = Field(..., ge=1)
    branch_indices: list[int] = Field(
        ..., description="1-based indices m of the vanishing branches"
    )
    eigenvectors: np.ndarray = Field(
        ..., description="M-orthonormal basis of the numerical kernel of F(lambda0)"
    )
    zero_band: float = Field(
        ..., gt=0, description="Band |Lambda_m| <= zero_band that defined the kernel"
    )
    width: float = Field(default=0.0, ge=0, description="Final bracket width of the refinement")
    converged: bool = Field(default=True, description="False when the bisection budget ran out")
    tangential: bool = Field(
        default=False, description="Found as a branch touching zero without a sign change"
    )
    near_endpoint: Optional[str] = Field(
        default=None,
        description="'lower' or 'upper' when within cluster_tol of an interval endpoint",
    )

    @model_validator(mode="after")
    def _check_multiplicity(self) -> "LocatedEigenvalue":
        if self.multiplicity != len(self.branch_indices):
            raise ValueError("multiplicity must equal the number of vanishing branches")
        if self.eigenvectors.ndim != 2 or self.eigenvectors.shape[1] != self.multiplicity:
            raise ValueError("eigenvectors must have one column per vanishing branch")
        return self
