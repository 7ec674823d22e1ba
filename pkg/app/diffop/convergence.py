"""Mesh refinement study of located roots."""

from typing import Optional, Sequence

import numpy as np

from app.diffop.compile import compile_problem
from app.diffop.problem import DifferentialProblem
from app.models.diffop import ConvergenceLevel, ConvergenceStudy
from app.models.report import CountOptions
from app.pencil.locate import locate_eigenvalues
from app.utils.logger import logger


def convergence_order(problem: DifferentialProblem) -> int:
    """Eigenvalue convergence order 2(degree + 1 - n) of the element space."""
    return 2 * (problem.element_degree + 1 - problem.n)


def convergence_study(
    problem: DifferentialProblem,
    interval: tuple[float, float],
    levels: int = 3,
    options: Optional[CountOptions] = None,
    reference: Optional[Sequence[float]] = None,
) -> ConvergenceStudy:
    """Locate roots on meshes mesh, 2 mesh, 4 mesh, ... and extrapolate.

    Richardson extrapolation uses the two finest levels with the theoretical order.
    Error ratios between consecutive levels are measured against ``reference`` when
    given, otherwise against the extrapolated roots; they are left empty when the
    number of roots changes between levels.

    Args:
        problem: Differential problem; its mesh is the coarsest level.
        interval: Half-open parameter interval [xi1, xi2).
        levels: Number of meshes, at least 2.
        options: Root-location tolerances.
        reference: Known roots to measure errors against.
    """
    if levels < 2:
        raise ValueError(f"a convergence study needs at least 2 levels, got {levels}")
    options = options or CountOptions()
    results: list[ConvergenceLevel] = []
    for level in range(levels):
        mesh = problem.mesh * 2**level
        model = compile_problem(problem.model_copy(update={"mesh": mesh}))
        located = locate_eigenvalues(
            model,
            interval,
            grid_step=options.grid_step,
            zero_tol=options.zero_tol,
            cluster_tol=options.cluster_tol,
            max_iterations=options.max_iterations,
        )
        results.append(ConvergenceLevel(mesh=mesh, roots=[root.lambda0 for root in located]))
        logger.info(f"Convergence level {level}: {mesh} elements, roots {results[-1].roots}")

    order = convergence_order(problem)
    counts = {len(level.roots) for level in results}
    if len(counts) != 1:
        sizes = [len(level.roots) for level in results]
        logger.warning(f"Root count changes under refinement: {sizes}")
        return ConvergenceStudy(levels=results, order=order)

    coarse, fine = np.array(results[-2].roots), np.array(results[-1].roots)
    extrapolated = fine + (fine - coarse) / (2.0**order - 1.0)
    target = np.asarray(reference, dtype=float) if reference is not None else extrapolated
    if target.size != fine.size:
        raise ValueError(f"reference has {target.size} roots, the study found {fine.size}")
    ratios = []
    for first, second in zip(results, results[1:]):
        errors_first = np.abs(np.array(first.roots) - target)
        errors_second = np.abs(np.array(second.roots) - target)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios.append([float(r) for r in errors_first / errors_second])
    return ConvergenceStudy(
        levels=results,
        order=order,
        extrapolated=[float(r) for r in extrapolated],
        error_ratios=ratios,
    )
