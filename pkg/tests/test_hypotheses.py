import numpy as np

from app.constants import HypothesisName
from app.diffop import DifferentialProblem, check_hypotheses
from app.diffop.hypotheses import (
    check_boundary_monotonicity,
    check_coefficient_monotonicity,
    check_derivative_consistency,
)
from app.models.boundary import UnitaryBoundary
from oracles import sturm_liouville

DIRICHLET = UnitaryBoundary.constant(np.eye(2))


def _by_name(checks):
    return {check.name: check for check in checks}


def test_dirichlet_satisfies_every_hypothesis():
    problem = sturm_liouville(DIRICHLET, mesh=16)
    # samples avoid the eigenvalues 1, 4, 9, 16, 25
    checks = check_hypotheses(problem, samples=6)
    assert {check.name for check in checks} == set(HypothesisName)
    failed = [check.detail for check in checks if not check.holds]
    assert not failed, failed


def test_missing_derivatives():
    problem = sturm_liouville(DIRICHLET, mesh=8)
    problem = problem.model_copy(update={"coefficient_derivatives": None})
    check = check_derivative_consistency(problem, problem.sample_lambdas(5))
    assert not check.holds


def test_wrong_derivatives():
    problem = DifferentialProblem(
        n=1,
        interval=(0.0, 1.0),
        lambda_interval=(-1.0, 1.0),
        coefficients=["1", "-lambda"],
        coefficient_derivatives=["0", "1"],
        boundary=DIRICHLET,
    )
    check = check_derivative_consistency(problem, problem.sample_lambdas(5))
    assert not check.holds
    assert check.lambda_value is not None


def test_increasing_last_coefficient():
    problem = DifferentialProblem(
        n=1,
        interval=(0.0, 1.0),
        lambda_interval=(-1.0, 1.0),
        coefficients=["1", "lambda"],
        boundary=DIRICHLET,
    )
    check = check_coefficient_monotonicity(problem, problem.sample_lambdas(5))
    assert check.name is HypothesisName.COEFFICIENT_MONOTONICITY
    assert not check.holds
    assert "p_1" in check.detail


def test_constant_last_coefficient_is_not_strictly_decreasing():
    problem = DifferentialProblem(
        n=1,
        interval=(0.0, 1.0),
        lambda_interval=(-1.0, 1.0),
        coefficients=["1", "-1"],
        boundary=DIRICHLET,
    )
    assert not check_coefficient_monotonicity(problem, problem.sample_lambdas(5)).holds


def test_increasing_leading_coefficient():
    problem = DifferentialProblem(
        n=1,
        interval=(0.0, 1.0),
        lambda_interval=(-1.0, 1.0),
        coefficients=["2 + lambda", "-lambda"],
        boundary=DIRICHLET,
    )
    check = check_coefficient_monotonicity(problem, problem.sample_lambdas(5))
    assert not check.holds
    assert "p_0" in check.detail


def test_boundary_monotonicity():
    theta0 = 0.5 * np.pi * np.eye(2)
    rising = sturm_liouville(
        UnitaryBoundary.generated(theta0, 0.1 * np.eye(2)), mesh=8, lambda_interval=(-5.0, 5.0)
    )
    falling = sturm_liouville(
        UnitaryBoundary.generated(theta0, -0.1 * np.eye(2)), mesh=8, lambda_interval=(-5.0, 5.0)
    )
    assert not check_boundary_monotonicity(rising, rising.sample_lambdas(5)).holds
    assert check_boundary_monotonicity(falling, falling.sample_lambdas(5)).holds


def test_rank_change_is_reported():
    boundary = UnitaryBoundary.generated(np.zeros((2, 2)), np.diag([1.0, 0.0]))
    problem = sturm_liouville(boundary, mesh=8, lambda_interval=(-1.6, 1.7))
    checks = _by_name(check_hypotheses(problem, samples=5))
    assert not checks[HypothesisName.RANK_CONSTANCY].holds
    assert not checks[HypothesisName.KERNEL_CONSTANCY].holds
    assert not checks[HypothesisName.BOUNDARY_MONOTONICITY].holds
    assert "not checked" in checks[HypothesisName.BOUNDARY_MONOTONICITY].detail
