"""Sampled checks of the hypotheses behind the differential counting rules."""

from typing import Optional

import numpy as np

from app.boundary import boundary_matrix, evaluate_U, rank_constancy_check
from app.constants import DERIVATIVE_STEP_SCALE, POSITIVITY_GRID, RANK_CHECK_POINTS, HypothesisName
from app.diffop.compile import compile_problem
from app.diffop.problem import DifferentialProblem
from app.linalg import hermitian_eigenvalues
from app.models.diffop import HypothesisCheck
from app.pencil.branches import nu
from app.pencil.model import PencilModel
from app.pencil.validators import variational_negative_dimension
from app.utils.logger import logger
from app.utils.settings import settings

MONOTONE_TOL = 1e-12
BOUNDARY_PSD_TOL = 1e-10
DERIVATIVE_CONSISTENCY_TOL = 1e-5


def _rank_checks(problem: DifferentialProblem) -> list[HypothesisCheck]:
    lambdas = problem.sample_lambdas(RANK_CHECK_POINTS)
    report = rank_constancy_check(problem.boundary, lambdas, problem.one_tol)
    ranks = sorted(set(report.ranks))
    return [
        HypothesisCheck(
            name=HypothesisName.RANK_CONSTANCY,
            holds=report.constant,
            detail=f"rank(U - 1) in {ranks} on {len(report.lambda_grid)} samples",
        ),
        HypothesisCheck(
            name=HypothesisName.KERNEL_CONSTANCY,
            holds=report.kernel_constant,
            detail=(
                "ker(U - 1) constant"
                if report.kernel_constant
                else "ker(U - 1) varies with lambda"
            ),
        ),
    ]


def check_coefficient_monotonicity(
    problem: DifferentialProblem, lambdas: np.ndarray
) -> HypothesisCheck:
    """p_k non-increasing in lambda for k < n and p_n strictly decreasing, on a sample grid."""
    x = problem.sample_points(POSITIVITY_GRID)
    n = problem.n
    for k, p in enumerate(problem.coefficients):
        values = p.evaluate(x[:, None], lambdas[None, :])
        steps = np.diff(values, axis=1)
        tol = MONOTONE_TOL * max(1.0, float(np.max(np.abs(values))))
        worst = np.unravel_index(int(np.argmax(steps)), steps.shape)
        increase = float(steps[worst])
        violated = increase >= 0 if k == n else increase > tol
        if violated:
            relation = "strictly decreasing" if k == n else "non-increasing"
            return HypothesisCheck(
                name=HypothesisName.COEFFICIENT_MONOTONICITY,
                holds=False,
                detail=(
                    f"p_{k} is not {relation} in lambda at x={x[worst[0]]:.6g} "
                    f"(step {increase:.3e})"
                ),
                lambda_value=float(lambdas[worst[1]]),
            )
    return HypothesisCheck(
        name=HypothesisName.COEFFICIENT_MONOTONICITY,
        holds=True,
        detail=(
            f"p_0 .. p_{n - 1} non-increasing, p_{n} strictly decreasing "
            f"on {lambdas.size} samples"
        ),
    )


def check_boundary_monotonicity(
    problem: DifferentialProblem, lambdas: np.ndarray
) -> HypothesisCheck:
    """A(l1) - A(l2) positive semidefinite for consecutive samples l1 < l2."""
    matrices = [
        boundary_matrix(evaluate_U(problem.boundary, lam), problem.one_tol).A for lam in lambdas
    ]
    for (l1, A1), (l2, A2) in zip(zip(lambdas, matrices), zip(lambdas[1:], matrices[1:])):
        smallest = float(hermitian_eigenvalues(A1 - A2)[0])
        scale = max(1.0, float(np.linalg.norm(A1, 2)), float(np.linalg.norm(A2, 2)))
        if smallest < -BOUNDARY_PSD_TOL * scale:
            return HypothesisCheck(
                name=HypothesisName.BOUNDARY_MONOTONICITY,
                holds=False,
                detail=f"A({l1:.6g}) - A({l2:.6g}) has eigenvalue {smallest:.3e}",
                lambda_value=float(l1),
            )
    return HypothesisCheck(
        name=HypothesisName.BOUNDARY_MONOTONICITY,
        holds=True,
        detail=f"A(lambda) non-increasing on {lambdas.size} samples",
    )


def check_derivative_consistency(
    problem: DifferentialProblem, lambdas: np.ndarray
) -> HypothesisCheck:
    """Supplied d/dlambda p_k against central differences with step 1e-5 * (1 + |lambda|)."""
    if problem.coefficient_derivatives is None:
        return HypothesisCheck(
            name=HypothesisName.DERIVATIVE_CONSISTENCY,
            holds=False,
            detail="no lambda-derivatives of the coefficients supplied",
        )
    x = problem.sample_points(POSITIVITY_GRID)
    h = DERIVATIVE_STEP_SCALE * (1.0 + np.abs(lambdas))
    for k, (p, dp) in enumerate(zip(problem.coefficients, problem.coefficient_derivatives)):
        supplied = dp.evaluate(x[:, None], lambdas[None, :])
        above = p.evaluate(x[:, None], (lambdas + h)[None, :])
        below = p.evaluate(x[:, None], (lambdas - h)[None, :])
        central = (above - below) / (2.0 * h[None, :])
        error = np.abs(supplied - central)
        worst = np.unravel_index(int(np.argmax(error)), error.shape)
        if error[worst] > DERIVATIVE_CONSISTENCY_TOL * (1.0 + float(np.max(np.abs(supplied)))):
            return HypothesisCheck(
                name=HypothesisName.DERIVATIVE_CONSISTENCY,
                holds=False,
                detail=(
                    f"d/dlambda p_{k} differs from its central difference by {error[worst]:.3e} "
                    f"at x={x[worst[0]]:.6g}"
                ),
                lambda_value=float(lambdas[worst[1]]),
            )
    return HypothesisCheck(
        name=HypothesisName.DERIVATIVE_CONSISTENCY,
        holds=True,
        detail="supplied lambda-derivatives agree with central differences",
    )


def check_variational_consistency(model: PencilModel, lambdas: np.ndarray) -> HypothesisCheck:
    """nu(lambda) equals the largest dimension on which the form is negative definite."""
    for lam in lambdas:
        counted = nu(model, float(lam)).negative
        variational = variational_negative_dimension(model, float(lam))
        if counted != variational:
            return HypothesisCheck(
                name=HypothesisName.VARIATIONAL_CONSISTENCY,
                holds=False,
                detail=f"nu={counted} but the form is negative definite on dimension {variational}",
                lambda_value=float(lam),
            )
    return HypothesisCheck(
        name=HypothesisName.VARIATIONAL_CONSISTENCY,
        holds=True,
        detail=f"nu matches the variational count on {len(lambdas)} samples",
    )


def check_hypotheses(
    problem: DifferentialProblem,
    model: Optional[PencilModel] = None,
    samples: Optional[int] = None,
) -> list[HypothesisCheck]:
    """Run every hypothesis check of a differential problem.

    Args:
        problem: Differential problem.
        model: Its compiled model; compiled here when omitted.
        samples: Number of lambda samples; defaults to MONOTONE_SAMPLES.
    """
    lambdas = problem.sample_lambdas(settings.MONOTONE_SAMPLES if samples is None else samples)
    model = compile_problem(problem) if model is None else model
    checks = _rank_checks(problem)
    checks.append(check_coefficient_monotonicity(problem, lambdas))
    if checks[0].holds:
        checks.append(check_boundary_monotonicity(problem, lambdas))
    else:
        checks.append(
            HypothesisCheck(
                name=HypothesisName.BOUNDARY_MONOTONICITY,
                holds=False,
                detail="not checked: rank(U - 1) is not constant",
            )
        )
    checks.append(check_derivative_consistency(problem, lambdas))
    checks.append(check_variational_consistency(model, lambdas))
    failed = [check.name.value for check in checks if not check.holds]
    if failed:
        logger.warning(f"Hypotheses not satisfied: {', '.join(failed)}")
    return checks
