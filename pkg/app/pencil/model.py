"""Evaluatable operator-function models lambda -> (F(lambda), M)."""

import math
from typing import Callable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.constants import Provenance
from app.exceptions import ParameterOutOfRangeError
from app.linalg import as_hermitian
from app.models.pencil import PencilMetadata

FormEvaluator = Callable[[float], tuple[np.ndarray, np.ndarray]]
DerivativeEvaluator = Callable[[float], np.ndarray]


class PencilModel(BaseModel):
    """Hermitian pencil (F(lambda), M) on the open interval (sigma, tau).

    ``eval_form`` returns the pair at a parameter value; ``eval_form_derivative`` returns
    F'(lambda) when available. Models are immutable and safe to evaluate concurrently.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda_interval: tuple[float, float] = Field(..., description="Open interval (sigma, tau)")
    eval_form: FormEvaluator
    eval_form_derivative: Optional[DerivativeEvaluator] = None
    metadata: PencilMetadata

    @model_validator(mode="after")
    def _check_interval(self) -> "PencilModel":
        sigma, tau = self.lambda_interval
        if not sigma < tau:
            raise ValueError(f"lambda_interval must satisfy sigma < tau, got ({sigma}, {tau})")
        return self

    @property
    def dimension(self) -> int:
        return self.metadata.dimension

    @property
    def has_derivative(self) -> bool:
        return self.eval_form_derivative is not None

    def contains(self, lam: float) -> bool:
        """Whether lambda lies in the open parameter interval."""
        sigma, tau = self.lambda_interval
        return sigma < lam < tau

    def _require(self, lam: float) -> None:
        if not self.contains(lam):
            raise ParameterOutOfRangeError(
                f"lambda={lam:.17g} is outside the open interval {self.lambda_interval}"
            )

    def form(self, lam: float) -> tuple[np.ndarray, np.ndarray]:
        """Validated pair (F(lambda), M)."""
        self._require(lam)
        F, M = self.eval_form(lam)
        F = as_hermitian(F)
        expected = (self.dimension, self.dimension) if self.metadata.rank_constant else F.shape
        if F.shape != expected or np.shape(M) != F.shape:
            raise ValueError(
                f"pencil at lambda={lam:.6g} has shapes {F.shape} and {np.shape(M)}, "
                f"expected dimension {self.dimension}"
            )
        return F, M

    def derivative(self, lam: float) -> np.ndarray:
        """Validated F'(lambda)."""
        if self.eval_form_derivative is None:
            raise ValueError("model has no form derivative")
        self._require(lam)
        return as_hermitian(self.eval_form_derivative(lam))


def _horner(coefficients: Sequence[np.ndarray], lam: float) -> np.ndarray:
    value = np.array(coefficients[-1], copy=True)
    for coefficient in reversed(coefficients[:-1]):
        value = value * lam + coefficient
    return value


def polynomial_model(
    coefficients: Sequence[np.ndarray],
    lambda_interval: tuple[float, float] = (-math.inf, math.inf),
    mass: Optional[np.ndarray] = None,
    notes: Optional[list[str]] = None,
) -> PencilModel:
    """Pencil ``F(lambda) = sum_k C_k lambda^k`` with constant mass M (identity by default).

    The derivative ``sum_k k C_k lambda^(k-1)`` is evaluated exactly.

    Args:
        coefficients: Hermitian matrices C_0, C_1, ... of equal size.
        lambda_interval: Open parameter interval.
        mass: Positive definite mass matrix.
        notes: Free-form provenance notes.
    """
    if not coefficients:
        raise ValueError("a polynomial pencil needs at least one coefficient")
    matrices = [as_hermitian(c) for c in coefficients]
    size = matrices[0].shape[0]
    if any(m.shape != (size, size) for m in matrices):
        raise ValueError("all coefficient matrices must have the same size")
    M = np.eye(size) if mass is None else as_hermitian(mass)
    if M.shape != (size, size):
        raise ValueError(f"mass matrix must be {size}x{size}, got {M.shape}")
    derivative_terms = [k * matrices[k] for k in range(1, len(matrices))]
    derivative_terms = derivative_terms or [np.zeros((size, size))]

    def eval_form(lam: float) -> tuple[np.ndarray, np.ndarray]:
        return _horner(matrices, lam), M

    def eval_form_derivative(lam: float) -> np.ndarray:
        return _horner(derivative_terms, lam)

    return PencilModel(
        lambda_interval=lambda_interval,
        eval_form=eval_form,
        eval_form_derivative=eval_form_derivative,
        metadata=PencilMetadata(dimension=size, provenance=Provenance.ABSTRACT, notes=notes or []),
    )
