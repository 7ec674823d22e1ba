"""Records produced by differential problem diagnostics."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.constants import HypothesisName


class HypothesisCheck(BaseModel):
    """Sampled check of one hypothesis of the counting rules."""

    model_config = ConfigDict(frozen=True)

    name: HypothesisName
    holds: bool
    detail: str = ""
    lambda_value: Optional[float] = None


class QuasiDerivativeTrace(BaseModel):
    """Quasi-derivatives at both endpoints and the boundary vectors built from them.

    ``at_a[m]`` and ``at_b[m]`` hold y^[n+m] for m = 0..n. ``y_vee`` lists
    y^[2n-1](a) .. y^[n](a) followed by the negated values at b in the same order.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    at_a: np.ndarray
    at_b: np.ndarray
    y_hat: np.ndarray = Field(..., description="y(a) .. y^(n-1)(a), y(b) .. y^(n-1)(b)")
    y_vee: np.ndarray
    bc_residual: float = Field(..., ge=0, description="Norm of (U - 1) y_vee + i (U + 1) y_hat")


class FormIdentityResult(BaseModel):
    """Both sides of <S y, y> = sum_k int p_k |y^(n-k)|^2 + <A y^, y^>."""

    model_config = ConfigDict(frozen=True)

    lhs: float
    rhs: float
    residual: float
    applicable: bool = Field(
        default=True, description="False when y violates the boundary conditions"
    )
    bc_residual: float = 0.0


class ConvergenceLevel(BaseModel):
    """Roots located at one mesh size."""

    model_config = ConfigDict(frozen=True)

    mesh: int
    roots: list[float]


class ConvergenceStudy(BaseModel):
    """Roots under mesh doubling with Richardson extrapolation."""

    model_config = ConfigDict(frozen=True)

    levels: list[ConvergenceLevel]
    order: float = Field(..., description="Theoretical convergence order of the roots")
    extrapolated: list[float] = Field(default_factory=list)
    error_ratios: list[list[float]] = Field(
        default_factory=list, description="Per level pair, |r_h - r*| / |r_h/2 - r*| for each root"
    )
