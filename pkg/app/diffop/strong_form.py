"""Strong-form diagnostics: quasi-derivatives, boundary vectors and the form identity.

Coefficient x-derivatives are taken numerically. First derivatives use the step
1e-5 * (b - a); a derivative of order j >= 2 uses (b - a) * eps^(1/(j+2)). Stencils are
central where they fit inside [a, b] and one-sided (one extra point, same order) at the
ends. The test function y supplies its own derivatives, so y must be 2n times
differentiable and the coefficients p_k (n - k) + n times.
"""

import math
from typing import Optional

import numpy as np
from numpy.polynomial import legendre as leg

from app.boundary import boundary_matrix, evaluate_U
from app.constants import DERIVATIVE_STEP_SCALE, FORM_DOMAIN_BC_TOL
from app.diffop.expression import CoefficientExpression
from app.diffop.problem import DifferentialProblem
from app.exceptions import StepUnderflowError
from app.galerkin import SmoothFunction
from app.models.diffop import FormIdentityResult, QuasiDerivativeTrace
from app.utils.logger import logger

_EPS = float(np.finfo(float).eps)


def derivative_step(order: int, length: float) -> float:
    """Finite-difference step for an x-derivative of this order on an interval of this length."""
    if order <= 1:
        return DERIVATIVE_STEP_SCALE * length
    return length * _EPS ** (1.0 / (order + 2))


def _offsets(x: float, order: int, h: float, a: float, b: float) -> np.ndarray:
    central = (np.arange(order + 1) - 0.5 * order) * h
    if x + central[0] >= a and x + central[-1] <= b:
        return central
    one_sided = np.arange(order + 2) * h
    if x + central[0] < a:
        return one_sided + (a - x)
    return (b - x) - one_sided[::-1]


def _weights(scaled_offsets: np.ndarray, order: int) -> np.ndarray:
    size = scaled_offsets.size
    moments = np.vander(scaled_offsets, size, increasing=True).T
    rhs = np.zeros(size)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(moments, rhs)


def coefficient_derivative(
    expression: CoefficientExpression,
    x: np.ndarray,
    lam: float,
    order: int,
    interval: tuple[float, float],
) -> np.ndarray:
    """d^order/dx^order p(x, lam) at every x in [a, b].

    Raises:
        StepUnderflowError: The step is lost in the floating-point spacing of some x.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if order == 0:
        return expression.evaluate(x, lam)
    if not expression.depends_on("x"):
        return np.zeros_like(x)
    a, b = interval
    h = derivative_step(order, b - a)
    values = np.empty_like(x)
    for i, point in enumerate(x):
        if point + h == point:
            raise StepUnderflowError(f"step {h:.3e} underflows at x={point:.17g}")
        offsets = _offsets(point, order, h, a, b)
        weights = _weights(offsets / h, order) / h**order
        values[i] = weights @ expression.evaluate(point + offsets, lam)
    return values


def quasi_derivatives(
    problem: DifferentialProblem,
    lam: float,
    y: SmoothFunction,
    x: np.ndarray,
) -> np.ndarray:
    """Rows m = 0..n hold y^[n+m](x) = sum_{k<=m} (-1)^(m-k) (p_k y^(n-k))^(m-k).

    The last row is S(lam) y.
    """
    n = problem.n
    x = np.atleast_1d(np.asarray(x, dtype=float))
    cache: dict[tuple[int, int], np.ndarray] = {}

    def dp(k: int, i: int) -> np.ndarray:
        if (k, i) not in cache:
            cache[(k, i)] = coefficient_derivative(
                problem.coefficients[k], x, lam, i, problem.interval
            )
        return cache[(k, i)]

    rows = []
    for m in range(n + 1):
        total = np.zeros(x.shape, dtype=complex)
        for k in range(m + 1):
            j = m - k
            term = sum(
                math.comb(j, i) * dp(k, i) * y.derivative(x, n - k + j - i) for i in range(j + 1)
            )
            total += (-1) ** j * term
        rows.append(total)
    result = np.array(rows)
    return result.real if not np.any(result.imag) else result


def quasi_derivative_trace(
    problem: DifferentialProblem, lam0: float, y: SmoothFunction
) -> QuasiDerivativeTrace:
    """Quasi-derivatives at a and b, the boundary vectors and the boundary-condition residual.

    y_vee lists y^[2n-1](a) .. y^[n](a) followed by -y^[2n-1](b) .. -y^[n](b); y_hat lists
    y(a) .. y^(n-1)(a), y(b) .. y^(n-1)(b).
    """
    n = problem.n
    ends = np.array(problem.interval, dtype=float)
    q = quasi_derivatives(problem, lam0, y, ends)
    y_hat = np.concatenate([
        [y.derivative(ends, d)[0] for d in range(n)],
        [y.derivative(ends, d)[1] for d in range(n)],
    ])
    y_vee = np.concatenate([q[n - 1 :: -1, 0], -q[n - 1 :: -1, 1]])
    U = evaluate_U(problem.boundary, lam0)
    identity = np.eye(U.shape[0])
    residual = float(np.linalg.norm((U - identity) @ y_vee + 1j * (U + identity) @ y_hat))
    return QuasiDerivativeTrace(
        at_a=q[:, 0], at_b=q[:, 1], y_hat=y_hat, y_vee=y_vee, bc_residual=residual
    )


def _composite_gauss(
    a: float, b: float, elements: int, points: int
) -> tuple[np.ndarray, np.ndarray]:
    t, w = leg.leggauss(points)
    edges = np.linspace(a, b, elements + 1)
    half = 0.5 * np.diff(edges)
    x = (0.5 * (edges[:-1] + edges[1:]))[:, None] + half[:, None] * t[None, :]
    weights = half[:, None] * w[None, :]
    return x.ravel(), weights.ravel()


def form_identity_check(
    problem: DifferentialProblem,
    lam0: float,
    y: SmoothFunction,
    elements: Optional[int] = None,
    points: int = 8,
) -> FormIdentityResult:
    """Compare <S(lam0) y, y> with sum_k int p_k |y^(n-k)|^2 + <A y_hat, y_hat>.

    The left side integrates the strong form against conj(y); the right side is the
    quadratic form. Both use composite Gauss-Legendre quadrature with ``points`` nodes on
    ``elements`` cells (default: the problem mesh, at least 64).

    Returns:
        Both sides (real parts) and the modulus of their difference; ``applicable`` is false
        when y misses the boundary conditions by more than 1e-6.
    """
    n = problem.n
    trace = quasi_derivative_trace(problem, lam0, y)
    a, b = problem.interval
    x, w = _composite_gauss(a, b, max(problem.mesh, 64) if elements is None else elements, points)

    strong = quasi_derivatives(problem, lam0, y, x)[n]
    values = y.derivative(x, 0)
    lhs = complex(np.sum(w * strong * np.conj(values)))

    rhs = 0j
    for k, p in enumerate(problem.coefficients):
        rhs += complex(np.sum(w * p.evaluate(x, lam0) * np.abs(y.derivative(x, n - k)) ** 2))
    A = boundary_matrix(evaluate_U(problem.boundary, lam0), problem.one_tol).A
    rhs += complex(np.vdot(trace.y_hat, A @ trace.y_hat))

    applicable = trace.bc_residual <= FORM_DOMAIN_BC_TOL
    if not applicable:
        logger.warning(
            f"Test function misses the boundary conditions by {trace.bc_residual:.3e}; "
            "form identity not applicable"
        )
    return FormIdentityResult(
        lhs=lhs.real,
        rhs=rhs.real,
        residual=abs(lhs - rhs),
        applicable=applicable,
        bc_residual=trace.bc_residual,
    )
