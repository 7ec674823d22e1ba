"""Compilation of differential problems into pencil models."""

from typing import Optional, Union

import numpy as np

from app.boundary import (
    boundary_matrix,
    boundary_matrix_derivative,
    constraint_data,
    evaluate_U,
    rank_constancy_check,
)
from app.constants import RANK_CHECK_POINTS, Provenance
from app.diffop.problem import DifferentialProblem, check_positivity
from app.galerkin import (
    HermiteBasis,
    assemble_form,
    assemble_form_derivative,
    build_basis,
    mass_matrix,
    reduction_map,
)
from app.linalg import is_positive_definite
from app.models.pencil import PencilMetadata
from app.pencil.model import PencilModel
from app.utils.logger import logger


def problem_basis(problem: DifferentialProblem) -> HermiteBasis:
    """Element space of the problem's mesh and degree."""
    a, b = problem.interval
    return build_basis(problem.n, a, b, problem.mesh, problem.element_degree)


def compile_problem(problem: DifferentialProblem) -> PencilModel:
    """Discretize a differential problem into a pencil model.

    The form is assembled on the problem's element space. When ker(U(lambda) - 1) is the
    same on a sampled grid, the trace constraint is fixed from the midpoint of the parameter
    interval and the pencil size is constant; otherwise the constraint is rebuilt at every
    lambda and the metadata records it.

    Args:
        problem: Validated differential problem.

    Returns:
        PencilModel with provenance ``differential``; it carries a form derivative when the
        problem supplies lambda-derivatives of its coefficients.

    Raises:
        NonPositiveLeadingCoefficientError: p_0 is not positive on the sample grid.
    """
    check_positivity(problem)
    basis = problem_basis(problem)
    mass = mass_matrix(basis)
    bc = problem.boundary
    one_tol = problem.one_tol

    report = rank_constancy_check(bc, problem.sample_lambdas(RANK_CHECK_POINTS), one_tol)
    sigma, tau = problem.lambda_interval
    reference = 0.5 * (sigma + tau)
    fixed: Optional[np.ndarray] = None
    if report.kernel_constant:
        fixed = reduction_map(basis, constraint_data(evaluate_U(bc, reference), one_tol))
    else:
        logger.warning(
            f"Boundary kernel is not constant on ({sigma:.6g}, {tau:.6g}): "
            f"ranks {sorted(set(report.ranks))}; "
            "the trace constraint is rebuilt per lambda"
        )

    def reduction_at(lam: float, U: Optional[np.ndarray] = None) -> Optional[np.ndarray]:
        if report.kernel_constant:
            return fixed
        U = evaluate_U(bc, lam) if U is None else U
        return reduction_map(basis, constraint_data(U, one_tol))

    def eval_form(lam: float) -> tuple[np.ndarray, np.ndarray]:
        U = evaluate_U(bc, lam)
        form = assemble_form(
            basis,
            [p.at(lam) for p in problem.coefficients],
            boundary_matrix(U, one_tol),
            lam=lam,
            mass=mass,
            reduction=reduction_at(lam, U),
        )
        return form.F, form.M

    eval_form_derivative = None
    if problem.has_derivatives:

        def eval_form_derivative(lam: float) -> np.ndarray:
            return assemble_form_derivative(
                basis,
                [p.at(lam) for p in problem.coefficient_derivatives],
                boundary_matrix_derivative(bc, lam, one_tol=one_tol),
                reduction_at(lam),
            )

    Q = reduction_at(reference)
    dimension = basis.dofs if Q is None else Q.shape[1]

    notes = [
        f"n={problem.n}",
        f"elements={problem.mesh}",
        f"degree={basis.degree}",
        f"dofs={basis.dofs}",
    ]
    metadata = PencilMetadata(
        dimension=dimension,
        provenance=Provenance.DIFFERENTIAL,
        rank_constant=report.constant,
        kernel_constant=report.kernel_constant,
        notes=notes,
    )
    logger.info(
        f"Compiled differential problem: n={problem.n}, "
        f"{problem.mesh} elements of degree {basis.degree}, dimension {dimension}, "
        f"rank constant={report.constant}, kernel constant={metadata.kernel_constant}"
    )
    return PencilModel(
        lambda_interval=problem.lambda_interval,
        eval_form=eval_form,
        eval_form_derivative=eval_form_derivative,
        metadata=metadata,
    )


def semibounded_shift(
    target: Union[DifferentialProblem, PencilModel],
    lam0: float,
    search: Optional[tuple[float, float]] = None,
    tol: float = 1e-10,
) -> float:
    """Largest mu with F(lam0) - mu M positive definite, found by bisection on Cholesky.

    This is a discrete lower bound of the form at lam0: the smallest eigenvalue of the
    pencil. The bracket ``search`` is widened by doubling until it encloses the bound.

    Args:
        target: A problem (compiled first) or a compiled model.
        lam0: Spectral parameter.
        search: Initial bracket (lo, hi) for mu.
        tol: Relative bracket width at which the search stops.
    """
    model = compile_problem(target) if isinstance(target, DifferentialProblem) else target
    F, M = model.form(lam0)

    def below(mu: float) -> bool:
        return is_positive_definite(F - mu * M)

    lo, hi = search if search is not None else (-1.0, 1.0)
    while not below(lo):
        lo = 2.0 * lo if lo < 0 else -1.0 - 2.0 * abs(lo)
    while below(hi):
        hi = 2.0 * hi if hi > 0 else 1.0 + 2.0 * abs(hi)
    while hi - lo > tol * (1.0 + abs(lo)):
        mid = 0.5 * (lo + hi)
        if below(mid):
            lo = mid
        else:
            hi = mid
    logger.debug(f"Semibounded shift at lambda={lam0:.6g}: mu={lo:.10g}")
    return lo
