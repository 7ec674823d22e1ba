"""Eigenvalues of the operator-function as zeros of the sorted branches.

A branch Lambda_m is the m-th smallest eigenvalue of the pencil, a continuous function of
lambda. Zeros are bracketed on a grid and refined by bisection on the branch itself;
branches that touch zero without changing sign are found by a golden-section search for
their extremum.
"""

import math
from typing import NamedTuple, Optional

import numpy as np

from app.constants import ROOT_WIDTH_TOL, TANGENCY_GOLDEN_ITERATIONS
from app.exceptions import ParameterOutOfRangeError
from app.linalg import generalized_eigen
from app.models.pencil import LocatedEigenvalue
from app.pencil.branches import branch_values
from app.pencil.model import PencilModel
from app.utils.logger import logger
from app.utils.parallel import ordered_map
from app.utils.settings import settings

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class _Candidate(NamedTuple):
    lam: float
    branch: int
    scale: float
    width: float = 0.0
    converged: bool = True
    tangential: bool = False


def _target_width(lam: float) -> float:
    return ROOT_WIDTH_TOL * (1.0 + abs(lam))


def scan_grid(lo: float, hi: float, grid_step: float) -> np.ndarray:
    """Uniform grid on [lo, hi] with spacing at most grid_step."""
    if grid_step <= 0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    steps = max(1, math.ceil((hi - lo) / grid_step))
    return np.linspace(lo, hi, steps + 1)


def _bisect(
    model: PencilModel,
    m: int,
    lo: float,
    hi: float,
    value_lo: float,
    max_iterations: int,
) -> tuple[float, float, bool]:
    """Refine a sign change of branch m on [lo, hi]; returns (root, width, converged)."""
    for _ in range(max_iterations):
        if hi - lo <= _target_width(0.5 * (lo + hi)):
            return 0.5 * (lo + hi), hi - lo, True
        mid = 0.5 * (lo + hi)
        value = branch_values(model, mid)[m]
        if value == 0.0:
            return mid, 0.0, True
        if (value > 0) == (value_lo > 0):
            lo, value_lo = mid, value
        else:
            hi = mid
    width = hi - lo
    return 0.5 * (lo + hi), width, width <= _target_width(0.5 * (lo + hi))


def _golden_extremum(
    model: PencilModel, m: int, lo: float, hi: float, sign: float
) -> tuple[float, float]:
    """Minimize sign * Lambda_m on [lo, hi]; stops early once the branch changes sign."""

    def objective(lam: float) -> float:
        return sign * branch_values(model, lam)[m]

    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = objective(c), objective(d)
    for _ in range(TANGENCY_GOLDEN_ITERATIONS):
        if min(fc, fd) < 0 or hi - lo <= _target_width(c):
            break
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = objective(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = objective(d)
    if fc < fd:
        return c, sign * fc
    return d, sign * fd


def _parabola_vertex(x: np.ndarray, y: np.ndarray) -> Optional[tuple[float, float]]:
    """Leading coefficient and vertex value of the parabola through three points."""
    a, b, c = np.polyfit(x - x[1], y, 2)
    if a == 0:
        return None
    return float(a), float(c - b * b / (4.0 * a))


def _branch_candidates(
    model: PencilModel,
    grid: np.ndarray,
    values: np.ndarray,
    m: int,
    zero_tol: float,
    max_iterations: int,
) -> list[_Candidate]:
    v = values[:, m]
    scale = max(1.0, float(np.max(np.abs(v))))
    band = zero_tol * scale
    found: list[_Candidate] = []
    crossing = v[:-1] * v[1:] < 0

    for j in np.flatnonzero(crossing):
        root, width, converged = _bisect(model, m, grid[j], grid[j + 1], v[j], max_iterations)
        found.append(_Candidate(root, m, scale, width, converged))

    # samples inside the band with no sign change next to them: touching or flat zeros
    for j in np.flatnonzero(np.abs(v) <= band):
        if (j > 0 and crossing[j - 1]) or (j < crossing.size and crossing[j]):
            continue
        found.append(_Candidate(float(grid[j]), m, scale))

    for j in range(1, grid.size - 1):
        if abs(v[j]) <= band:
            continue
        sign = 1.0 if v[j] > 0 else -1.0
        if sign * v[j - 1] <= 0 or sign * v[j + 1] <= 0:
            continue
        if sign * v[j] > sign * v[j - 1] or sign * v[j] > sign * v[j + 1]:
            continue
        vertex = _parabola_vertex(grid[j - 1 : j + 2], v[j - 1 : j + 2])
        if vertex is None or sign * vertex[0] <= 0 or sign * vertex[1] > 0.5 * abs(v[j]):
            continue
        lam, extremum = _golden_extremum(model, m, grid[j - 1], grid[j + 1], sign)
        if abs(extremum) <= band:
            found.append(_Candidate(lam, m, scale, tangential=True))
        elif sign * extremum < 0:
            for lo, hi, value_lo in ((grid[j - 1], lam, v[j - 1]), (lam, grid[j + 1], extremum)):
                root, width, converged = _bisect(model, m, lo, hi, value_lo, max_iterations)
                found.append(_Candidate(root, m, scale, width, converged))
    return found


def _cluster(candidates: list[_Candidate], cluster_tol: float) -> list[list[_Candidate]]:
    clusters: list[list[_Candidate]] = []
    for candidate in sorted(candidates, key=lambda c: c.lam):
        gap = candidate.lam - clusters[-1][-1].lam if clusters else math.inf
        if gap <= cluster_tol * (1.0 + abs(candidate.lam)):
            clusters[-1].append(candidate)
        else:
            clusters.append([candidate])
    return clusters


def _resolve(model: PencilModel, cluster: list[_Candidate], zero_tol: float) -> LocatedEigenvalue:
    lam0 = float(np.mean([c.lam for c in cluster]))
    lam0 = min(max(lam0, cluster[0].lam), cluster[-1].lam)
    F, M = model.form(lam0)
    decomposition = generalized_eigen(F, M)
    values = decomposition.eigenvalues
    branches = sorted({c.branch for c in cluster})
    band = zero_tol * max(c.scale for c in cluster)
    band = max(band, 2.0 * float(np.max(np.abs(values[branches]))))
    indices = np.flatnonzero(np.abs(values) <= band)
    converged = all(c.converged for c in cluster)
    width = max(c.width for c in cluster)
    if not converged:
        logger.warning(
            f"Bisection budget exhausted near lambda={lam0:.12g}; achieved width {width:.3e}"
        )
    return LocatedEigenvalue(
        lambda0=lam0,
        multiplicity=int(indices.size),
        branch_indices=[int(i) + 1 for i in indices],
        eigenvectors=decomposition.eigenvectors[:, indices],
        zero_band=band,
        width=width,
        converged=converged,
        tangential=all(c.tangential for c in cluster),
    )


def scan_roots(
    model: PencilModel,
    lo: float,
    hi: float,
    grid_step: Optional[float] = None,
    zero_tol: Optional[float] = None,
    cluster_tol: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> list[LocatedEigenvalue]:
    """All eigenvalues of the model in the closed interval [lo, hi], ascending.

    Args:
        model: Pencil model.
        lo: Left end, inside the parameter interval.
        hi: Right end, inside the parameter interval.
        grid_step: Largest bracketing step; defaults to SCAN_STEP.
        zero_tol: Zero band relative to the branch scale max(1, max |Lambda_m|);
            defaults to ZERO_TOL.
        cluster_tol: Roots closer than ``cluster_tol * (1 + |lambda|)`` are merged;
            defaults to CLUSTER_TOL.
        max_iterations: Bisection budget; defaults to MAX_BISECTION_ITERATIONS.
    """
    grid_step = settings.SCAN_STEP if grid_step is None else grid_step
    zero_tol = settings.ZERO_TOL if zero_tol is None else zero_tol
    cluster_tol = settings.CLUSTER_TOL if cluster_tol is None else cluster_tol
    max_iterations = settings.MAX_BISECTION_ITERATIONS if max_iterations is None else max_iterations
    if not lo < hi:
        raise ValueError(f"interval must satisfy lo < hi, got [{lo}, {hi}]")

    grid = scan_grid(lo, hi, grid_step)
    rows = ordered_map(lambda lam: branch_values(model, float(lam)), list(grid))
    # the pencil size may change with lambda when rank(U - 1) does
    width = min(row.size for row in rows)
    values = np.array([row[:width] for row in rows])
    candidates: list[_Candidate] = []
    for m in range(values.shape[1]):
        candidates.extend(_branch_candidates(model, grid, values, m, zero_tol, max_iterations))
    located = [_resolve(model, cluster, zero_tol) for cluster in _cluster(candidates, cluster_tol)]
    logger.debug(f"Scanned [{lo:.6g}, {hi:.6g}] on {grid.size} points: {len(located)} root(s)")
    return located


def near_endpoint(lam0: float, interval: tuple[float, float], cluster_tol: float) -> Optional[str]:
    """'lower' or 'upper' when lam0 is within cluster_tol of that endpoint."""
    xi1, xi2 = interval
    if abs(lam0 - xi1) <= cluster_tol * (1.0 + abs(xi1)):
        return "lower"
    if abs(lam0 - xi2) <= cluster_tol * (1.0 + abs(xi2)):
        return "upper"
    return None


def in_half_open(root: LocatedEigenvalue, interval: tuple[float, float]) -> bool:
    """Membership in [xi1, xi2); a root flagged near an endpoint counts as lying on it."""
    if root.near_endpoint == "lower":
        return True
    if root.near_endpoint == "upper":
        return False
    return interval[0] <= root.lambda0 < interval[1]


def check_interval(model: PencilModel, interval: tuple[float, float]) -> None:
    """Require xi1 < xi2 with both endpoints inside the open parameter interval."""
    xi1, xi2 = interval
    if not xi1 < xi2:
        raise ValueError(f"interval must satisfy xi1 < xi2, got [{xi1}, {xi2})")
    if not (model.contains(xi1) and model.contains(xi2)):
        raise ParameterOutOfRangeError(
            f"interval [{xi1}, {xi2}) is not compactly inside "
            f"lambda_interval {model.lambda_interval}"
        )


def locate_eigenvalues(
    model: PencilModel,
    interval: tuple[float, float],
    grid_step: Optional[float] = None,
    zero_tol: Optional[float] = None,
    cluster_tol: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> list[LocatedEigenvalue]:
    """Eigenvalues in the half-open interval [xi1, xi2) with multiplicities.

    A root at xi1 is counted and one at xi2 is not. Roots within cluster_tol of an endpoint
    carry ``near_endpoint`` and are treated as lying on it.
    """
    check_interval(model, interval)
    cluster_tol = settings.CLUSTER_TOL if cluster_tol is None else cluster_tol
    xi1, xi2 = interval
    roots = scan_roots(model, xi1, xi2, grid_step, zero_tol, cluster_tol, max_iterations)
    flagged = [
        root.model_copy(
            update={"near_endpoint": near_endpoint(root.lambda0, interval, cluster_tol)}
        )
        for root in roots
    ]
    return [root for root in flagged if in_half_open(root, interval)]
