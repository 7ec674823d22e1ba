"""Shared pytest fixtures."""

from pathlib import Path

import numpy as np
import pytest

from app.diffop.problem import DifferentialProblem
from app.models.boundary import UnitaryBoundary
from app.pencil.model import polynomial_model
from oracles import sturm_liouville

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture
def problems_dir() -> Path:
    return PROBLEMS_DIR


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240613)


@pytest.fixture
def diagonal_model():
    """F(lambda) = diag(1 - lambda, 4 - lambda), M = I."""
    return polynomial_model([np.diag([1.0, 4.0]), -np.eye(2)], lambda_interval=(-10.0, 10.0))


@pytest.fixture
def scalar_quadratic_model():
    """f(lambda) = (lambda - 2)^2 - 1."""
    return polynomial_model([np.array([[3.0]]), np.array([[-4.0]]), np.array([[1.0]])])


@pytest.fixture
def dirichlet_problem() -> DifferentialProblem:
    return sturm_liouville(UnitaryBoundary.constant(np.eye(2)))


@pytest.fixture
def neumann_problem() -> DifferentialProblem:
    return sturm_liouville(UnitaryBoundary.constant(-np.eye(2)), lambda_interval=(-5.0, 30.0))
