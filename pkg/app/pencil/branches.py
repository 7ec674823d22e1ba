"""Negative inertia nu(lambda) and sorted eigenvalue branches Lambda_m(lambda)."""

from typing import Optional, Sequence

import numpy as np

from app.linalg import classify_spectrum, generalized_eigenvalues
from app.models.linalg import Inertia
from app.models.pencil import BranchTable
from app.pencil.model import PencilModel
from app.utils.logger import logger
from app.utils.parallel import ordered_map
from app.utils.settings import settings


def branch_values(model: PencilModel, lam: float) -> np.ndarray:
    """All sorted generalized eigenvalues of (F(lambda), M)."""
    F, M = model.form(lam)
    return generalized_eigenvalues(F, M)


def nu(model: PencilModel, lam: float, zero_tol: Optional[float] = None) -> Inertia:
    """Inertia of the pencil at lambda.

    Args:
        model: Pencil model.
        lam: Spectral parameter inside the open interval.
        zero_tol: Relative zero band; defaults to INERTIA_ZERO_TOL.
    """
    zero_tol = settings.INERTIA_ZERO_TOL if zero_tol is None else zero_tol
    counts = classify_spectrum(branch_values(model, lam), zero_tol)
    if counts.zero:
        logger.debug(f"nu({lam:.10g}) has {counts.zero} eigenvalue(s) in the zero band")
    return counts


def nu_scan(
    model: PencilModel, lambda_grid: Sequence[float], zero_tol: Optional[float] = None
) -> list[Inertia]:
    """nu at every grid point, in grid order."""
    return ordered_map(lambda lam: nu(model, float(lam), zero_tol), list(lambda_grid))


def branch_table(
    model: PencilModel, lambda_grid: Sequence[float], m_max: Optional[int] = None
) -> BranchTable:
    """Branches Lambda_1 .. Lambda_{m_max} sampled on a grid.

    Args:
        model: Pencil model.
        lambda_grid: Strictly ascending grid inside the parameter interval.
        m_max: Number of branches; defaults to the model dimension.

    Returns:
        BranchTable whose ``continuity`` holds the largest jump between neighbouring grid points.
    """
    m_max = model.dimension if m_max is None else m_max
    if not 1 <= m_max <= model.dimension:
        raise ValueError(f"m_max must lie in [1, {model.dimension}], got {m_max}")
    grid = np.asarray(lambda_grid, dtype=float)
    columns = ordered_map(lambda lam: branch_values(model, float(lam))[:m_max], list(grid))
    branches = np.column_stack(columns) if columns else np.zeros((m_max, 0))
    if grid.size > 1:
        continuity = np.max(np.abs(np.diff(branches, axis=1)), axis=1)
    else:
        continuity = np.zeros(m_max)
    return BranchTable(lambda_grid=grid, branches=branches, continuity=continuity)
