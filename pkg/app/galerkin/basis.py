"""C^(n-1) Hermite finite elements on a uniform mesh.

Every mesh node carries the derivative dofs 0..n-1, so the boundary trace
y^ = (y(a) .. y^(n-1)(a), y(b) .. y^(n-1)(b)) is a selection of coefficients.
Elements of degree above 2n-1 add interior bubbles (t(1-t))^n P_j(2t-1), which
vanish with their first n-1 derivatives at both element ends.
"""

from functools import cached_property
from typing import Optional, Protocol

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import legendre as leg
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.exceptions import DegenerateElementError


class SmoothFunction(Protocol):
    """Function with analytic derivatives, evaluated elementwise on arrays."""

    def derivative(self, x: np.ndarray, order: int) -> np.ndarray: ...


def _hermite_shapes(n: int) -> list[Polynomial]:
    """Degree 2n-1 polynomials H_{s,d} on [0, 1] with H_{s,d}^(e)(s') = delta_ss' delta_de.

    Ordered left d = 0..n-1, then right d = 0..n-1.
    """
    size = 2 * n
    conditions = np.zeros((size, size))
    for e in range(n):
        for k in range(size):
            if k == e:
                conditions[e, k] = float(np.prod(np.arange(1, k + 1)))
            if k >= e:
                conditions[n + e, k] = float(np.prod(np.arange(k - e + 1, k + 1)))
    coefficients = np.linalg.solve(conditions, np.eye(size))
    return [Polynomial(coefficients[:, i]) for i in range(size)]


def _bubble_shapes(n: int, count: int) -> list[Polynomial]:
    weight = Polynomial([0.0, 1.0, -1.0]) ** n
    shifted = Polynomial([-1.0, 2.0])
    return [weight * Polynomial(leg.leg2poly(np.eye(count)[j]))(shifted) for j in range(count)]


class HermiteBasis(BaseModel):
    """Conforming order-n finite element space on [a, b].

    Global numbering: dof ``n * i + d`` is the d-th derivative at node i; bubble j of
    element e follows all nodal dofs at ``n * (elements + 1) + e * bubbles + j``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., ge=1)
    a: float
    b: float
    elements: int = Field(..., ge=2)
    degree: int = Field(..., description="Polynomial degree per element, at least 2n - 1")

    @model_validator(mode="after")
    def _check(self) -> "HermiteBasis":
        if not self.b > self.a:
            raise ValueError(f"interval [{self.a}, {self.b}] has no positive length")
        if self.degree < 2 * self.n - 1:
            raise ValueError(f"degree must be at least {2 * self.n - 1}, got {self.degree}")
        return self

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.elements

    @property
    def bubbles(self) -> int:
        """Bubble functions per element."""
        return self.degree - 2 * self.n + 1

    @property
    def local_size(self) -> int:
        return self.degree + 1

    @property
    def nodal_dofs(self) -> int:
        return self.n * (self.elements + 1)

    @property
    def dofs(self) -> int:
        return self.nodal_dofs + self.elements * self.bubbles

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.elements + 1)

    @property
    def quadrature_order(self) -> int:
        """Gauss-Legendre points per element."""
        return max(2 * self.n + 2, self.degree + 1)

    @cached_property
    def shapes(self) -> list[Polynomial]:
        """Reference shape functions on [0, 1] in local order."""
        return _hermite_shapes(self.n) + _bubble_shapes(self.n, self.bubbles)

    @cached_property
    def local_scale(self) -> np.ndarray:
        """Factor h^d turning reference nodal shapes into unit derivative dofs."""
        nodal = [self.h**d for d in range(self.n)] * 2
        return np.array(nodal + [1.0] * self.bubbles)

    @cached_property
    def element_dofs(self) -> np.ndarray:
        """Global dof indices, shape (elements, local_size)."""
        e = np.arange(self.elements)[:, None]
        d = np.arange(self.n)[None, :]
        left = self.n * e + d
        right = self.n * (e + 1) + d
        bubble = self.nodal_dofs + e * self.bubbles + np.arange(self.bubbles)[None, :]
        return np.hstack([left, right, bubble]).astype(int)

    @cached_property
    def trace_dofs(self) -> np.ndarray:
        """Dofs of y^ in order y(a) .. y^(n-1)(a), y(b) .. y^(n-1)(b)."""
        return np.concatenate([np.arange(self.n), self.n * self.elements + np.arange(self.n)])

    @cached_property
    def trace_map(self) -> np.ndarray:
        """Matrix of shape (2n, dofs) mapping coefficients to y^."""
        T = np.zeros((2 * self.n, self.dofs))
        T[np.arange(2 * self.n), self.trace_dofs] = 1.0
        return T

    @cached_property
    def reference_quadrature(self) -> tuple[np.ndarray, np.ndarray]:
        """Gauss-Legendre points and weights on [0, 1]."""
        points, weights = leg.leggauss(self.quadrature_order)
        return 0.5 * (points + 1.0), 0.5 * weights

    @cached_property
    def quadrature_points(self) -> np.ndarray:
        """Physical points, shape (elements, q)."""
        t, _ = self.reference_quadrature
        return self.a + self.h * (np.arange(self.elements)[:, None] + t[None, :])

    @cached_property
    def quadrature_weights(self) -> np.ndarray:
        """Physical weights, shape (q,), identical on every element."""
        return self.h * self.reference_quadrature[1]

    def shape_values(self, t: np.ndarray, order: int) -> np.ndarray:
        """Physical derivative ``order`` of the local functions at reference points t.

        Returns an array of shape (local, len(t)).
        """
        t = np.asarray(t, dtype=float)
        reference = np.array([shape.deriv(order)(t) for shape in self.shapes])
        scale = self.local_scale * self.h ** (-order)
        return scale[:, None] * reference.reshape(self.local_size, -1)

    def derivative_table(self, order: int) -> np.ndarray:
        """Physical derivative of the local functions at the quadrature points, shape (local, q)."""
        return self.derivative_tables[order]

    @cached_property
    def derivative_tables(self) -> list[np.ndarray]:
        """Tables for orders 0..n."""
        t, _ = self.reference_quadrature
        return [self.shape_values(t, order) for order in range(self.n + 1)]

    def evaluate(self, coefficients: np.ndarray, x: np.ndarray, order: int = 0) -> np.ndarray:
        """Derivative ``order`` of the finite element function with the given coefficients at x."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        position = (x - self.a) / self.h
        element = np.clip(np.floor(position).astype(int), 0, self.elements - 1)
        t = position - element
        reference = np.array([shape.deriv(order)(t) for shape in self.shapes])
        values = (self.local_scale * self.h ** (-order))[:, None] * reference
        local_coefficients = np.asarray(coefficients)[self.element_dofs[element]]
        return np.einsum("lp,pl->p", values, local_coefficients)


def build_basis(
    n: int, a: float, b: float, elements: int, degree: Optional[int] = None
) -> HermiteBasis:
    """Hermite element space of order n on a uniform mesh of [a, b].

    Args:
        n: Derivative order (half the operator order).
        a: Left endpoint.
        b: Right endpoint.
        elements: Number of mesh cells, at least 2.
        degree: Polynomial degree per element; defaults to 2n - 1 (no bubbles).

    Raises:
        DegenerateElementError: If the mesh cells have no positive length.
    """
    if not b > a:
        raise DegenerateElementError(f"interval [{a}, {b}] has no positive length")
    degree = 2 * n - 1 if degree is None else degree
    return HermiteBasis(n=n, a=a, b=b, elements=elements, degree=degree)


def interpolate(basis: HermiteBasis, f: SmoothFunction) -> np.ndarray:
    """Projection-based interpolant of f.

    Nodal dofs take the derivatives of f at the nodes; bubble coefficients minimize the
    H^n seminorm of the error on each element.
    """
    n = basis.n
    coefficients = np.zeros(basis.dofs, dtype=complex)
    for d in range(n):
        coefficients[n * np.arange(basis.elements + 1) + d] = f.derivative(basis.nodes, d)
    if basis.bubbles:
        top = basis.derivative_table(n)
        nodal, bubble = top[: 2 * n], top[2 * n :]
        w = basis.quadrature_weights
        stiffness = np.einsum("q,iq,jq->ij", w, bubble, bubble)
        nodal_part = np.einsum("lq,el->eq", nodal, coefficients[basis.element_dofs[:, : 2 * n]])
        residual = f.derivative(basis.quadrature_points, n) - nodal_part
        rhs = np.einsum("q,iq,eq->ie", w, bubble, residual)
        solved = np.linalg.solve(stiffness, rhs)
        coefficients[basis.element_dofs[:, 2 * n :]] = solved.T
    if not np.any(coefficients.imag):
        return coefficients.real
    return coefficients
