"""Discretized form records."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class AssembledForm(BaseModel):
    """Form matrix F and mass matrix M on the (possibly constrained) Galerkin space."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    F: np.ndarray = Field(..., description="Hermitian form matrix")
    M: np.ndarray = Field(..., description="Positive definite mass matrix")
    constraint_reduced: bool = Field(
        default=False, description="Whether the trace constraint was applied"
    )
    reduction_map: Optional[np.ndarray] = Field(
        default=None, description="Columns spanning the constrained coefficient subspace"
    )
    lam: Optional[float] = Field(default=None, description="Spectral parameter of the assembly")

    @property
    def dimension(self) -> int:
        """Size of the pencil."""
        return int(self.F.shape[0])

    def expand(self, reduced: np.ndarray) -> np.ndarray:
        """Map reduced coordinates back to full coefficient vectors."""
        if self.reduction_map is None:
            return np.asarray(reduced)
        return self.reduction_map @ reduced
