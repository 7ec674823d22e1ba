"""Differential operator-function problems.

S(lambda) y = sum_k (-1)^(n-k) (p_k(x, lambda) y^(n-k))^(n-k) on [a, b] with the boundary
conditions (U(lambda) - 1) y_vee + i (U(lambda) + 1) y_hat = 0.
"""

import math
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.constants import POSITIVITY_GRID
from app.diffop.expression import CoefficientExpression, as_expression
from app.exceptions import NonPositiveLeadingCoefficientError
from app.models.boundary import UnitaryBoundary
from app.utils.settings import settings


class DifferentialProblem(BaseModel):
    """Order-2n problem with coefficients p_0 .. p_n and a unitary boundary matrix."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., ge=1, description="Order parameter; the operator has order 2n")
    interval: tuple[float, float] = Field(..., description="Space interval [a, b]")
    lambda_interval: tuple[float, float] = Field(
        ..., description="Finite open parameter interval (sigma, tau)"
    )
    coefficients: list[CoefficientExpression] = Field(..., description="p_0 .. p_n")
    coefficient_derivatives: Optional[list[CoefficientExpression]] = Field(
        default=None, description="d/dlambda p_0 .. p_n, needed by the negative-type check"
    )
    boundary: UnitaryBoundary
    mesh: int = Field(default_factory=lambda: settings.MESH, ge=2, description="Element count")
    degree: Optional[int] = Field(default=None, description="Element degree; defaults to 2n + 1")
    one_tol: float = Field(default_factory=lambda: settings.ONE_TOL, gt=0)

    @field_validator("coefficients", "coefficient_derivatives", mode="before")
    @classmethod
    def _parse(cls, value: Any) -> Any:
        if value is None or not isinstance(value, (list, tuple)):
            return value
        return [as_expression(item) for item in value]

    @model_validator(mode="after")
    def _check_problem(self) -> "DifferentialProblem":
        a, b = self.interval
        if not a < b:
            raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
        sigma, tau = self.lambda_interval
        if not (math.isfinite(sigma) and math.isfinite(tau) and sigma < tau):
            raise ValueError(
                f"lambda_interval must be finite with sigma < tau, got ({sigma}, {tau})"
            )
        if len(self.coefficients) != self.n + 1:
            raise ValueError(
                f"expected {self.n + 1} coefficients p_0 .. p_{self.n}, "
                f"got {len(self.coefficients)}"
            )
        derivatives = self.coefficient_derivatives
        if derivatives is not None and len(derivatives) != self.n + 1:
            raise ValueError(
                f"expected {self.n + 1} coefficient derivatives, got {len(derivatives)}"
            )
        if self.boundary.size != 2 * self.n:
            raise ValueError(
                f"boundary matrix must be {2 * self.n}x{2 * self.n}, "
                f"got size {self.boundary.size}"
            )
        if self.degree is not None and self.degree < 2 * self.n - 1:
            raise ValueError(f"degree must be at least {2 * self.n - 1}, got {self.degree}")
        return self

    @property
    def element_degree(self) -> int:
        return 2 * self.n + 1 if self.degree is None else self.degree

    @property
    def has_derivatives(self) -> bool:
        return self.coefficient_derivatives is not None

    def sample_lambdas(self, count: int) -> np.ndarray:
        """count points strictly inside (sigma, tau)."""
        sigma, tau = self.lambda_interval
        return np.linspace(sigma, tau, count + 2)[1:-1]

    def sample_points(self, count: int) -> np.ndarray:
        """count points covering [a, b]."""
        return np.linspace(self.interval[0], self.interval[1], count)


def check_positivity(problem: DifferentialProblem, points: int = POSITIVITY_GRID) -> None:
    """Require p_0 > 0 on a points x points grid of [a, b] x (sigma, tau).

    Raises:
        NonPositiveLeadingCoefficientError: At the sample with the smallest value.
        ExpressionEvaluationError: p_0 is undefined somewhere on the grid.
    """
    x = problem.sample_points(points)
    lam = problem.sample_lambdas(points)
    values = problem.coefficients[0].evaluate(x[:, None], lam[None, :])
    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    if values[i, j] <= 0:
        raise NonPositiveLeadingCoefficientError(float(x[i]), float(lam[j]), float(values[i, j]))
