import numpy as np
import pytest
from numpy.polynomial import Polynomial

from app.boundary import boundary_matrix, constraint_data
from app.exceptions import DegenerateElementError, NonPositiveLeadingCoefficientError
from app.galerkin import (
    assemble_form,
    assemble_form_derivative,
    assemble_matrix,
    build_basis,
    interpolate,
    mass_matrix,
    reduction_map,
)
from app.linalg import generalized_eigenvalues
from oracles import PolynomialFunction, Sine, clamped_beam_eigenvalue


class TestBasis:
    def test_default_degree_has_no_bubbles(self):
        basis = build_basis(2, 0.0, 1.0, 4)
        assert basis.degree == 3
        assert basis.bubbles == 0
        assert basis.dofs == 10
        np.testing.assert_array_equal(basis.trace_dofs, [0, 1, 8, 9])

    def test_bubbles(self):
        basis = build_basis(1, 0.0, 1.0, 4, degree=3)
        assert basis.bubbles == 2
        assert basis.nodal_dofs == 5
        assert basis.dofs == 13

    def test_trace_map(self):
        basis = build_basis(1, 0.0, 2.0, 3)
        T = basis.trace_map
        assert T.shape == (2, basis.dofs)
        coefficients = np.arange(basis.dofs, dtype=float)
        np.testing.assert_array_equal(T @ coefficients, [0.0, 3.0])

    def test_degenerate_interval(self):
        with pytest.raises(DegenerateElementError):
            build_basis(1, 1.0, 1.0, 4)

    def test_too_few_elements(self):
        with pytest.raises(ValueError):
            build_basis(1, 0.0, 1.0, 1)

    def test_degree_too_low(self):
        with pytest.raises(ValueError):
            build_basis(2, 0.0, 1.0, 4, degree=2)

    @pytest.mark.parametrize("n, degree", [(1, 1), (1, 3), (2, 3), (2, 5), (3, 5)])
    def test_interpolation_reproduces_polynomials(self, n, degree):
        polynomial = Polynomial(np.arange(1, degree + 2) / 7.0)
        basis = build_basis(n, -0.5, 1.5, 5, degree)
        coefficients = interpolate(basis, PolynomialFunction(polynomial))
        x = np.linspace(-0.5, 1.5, 23)
        for order in range(n + 1):
            np.testing.assert_allclose(
                basis.evaluate(coefficients, x, order), polynomial.deriv(order)(x), atol=1e-9
            )

    def test_interpolation_converges(self):
        errors = []
        for elements in (4, 8):
            basis = build_basis(1, 0.0, np.pi, elements, degree=3)
            coefficients = interpolate(basis, Sine(2.0))
            x = np.linspace(0.0, np.pi, 101)
            errors.append(np.max(np.abs(basis.evaluate(coefficients, x) - np.sin(2.0 * x))))
        assert errors[0] / errors[1] > 8.0

    def test_complex_interpolant(self):
        polynomial = Polynomial([1.0, 1j, 0.5])
        basis = build_basis(1, 0.0, 1.0, 3, degree=2)
        coefficients = interpolate(basis, PolynomialFunction(polynomial))
        assert np.iscomplexobj(coefficients)
        value = basis.evaluate(coefficients, np.array([0.3]))
        np.testing.assert_allclose(value, polynomial(0.3), atol=1e-12)


def _norm_squared(matrix: np.ndarray, coefficients: np.ndarray) -> float:
    return float(np.real(np.vdot(coefficients, matrix @ coefficients)))


class TestAssembly:
    def test_mass_integrates_constants(self):
        basis = build_basis(2, 0.0, 3.0, 6)
        ones = interpolate(basis, PolynomialFunction(Polynomial([1.0])))
        assert _norm_squared(mass_matrix(basis), ones) == pytest.approx(3.0)

    def test_mass_of_linear_function(self):
        basis = build_basis(1, 0.0, 1.0, 4, degree=2)
        y = interpolate(basis, PolynomialFunction(Polynomial([0.0, 1.0])))
        assert _norm_squared(mass_matrix(basis), y) == pytest.approx(1.0 / 3.0)

    def test_stiffness_with_variable_coefficient(self):
        basis = build_basis(1, 0.0, 1.0, 4, degree=2)
        y = interpolate(basis, PolynomialFunction(Polynomial([0.0, 0.0, 1.0])))
        K = assemble_matrix(basis, [lambda x: 1.0 + x, None])
        # int_0^1 (1 + x) (2x)^2 dx
        assert _norm_squared(K, y) == pytest.approx(7.0 / 3.0)

    def test_fourth_order_stiffness(self):
        basis = build_basis(2, 0.0, 1.0, 3)
        y = interpolate(basis, PolynomialFunction(Polynomial([0.0, 0.0, 0.0, 1.0])))
        K = assemble_matrix(basis, [lambda x: 1.0, None, None])
        # int_0^1 (6x)^2 dx
        assert _norm_squared(K, y) == pytest.approx(12.0)

    def test_wrong_coefficient_count(self):
        with pytest.raises(ValueError):
            assemble_matrix(build_basis(1, 0.0, 1.0, 2), [lambda x: 1.0])

    def test_matrices_are_symmetric(self):
        basis = build_basis(2, 0.0, 1.0, 5, degree=5)
        K = assemble_matrix(basis, [lambda x: 1.0 + x**2, lambda x: np.sin(x), lambda x: 2.0])
        np.testing.assert_array_equal(K, K.T)

    def test_boundary_term_on_trace(self):
        basis = build_basis(1, 0.0, 1.0, 4)
        coefficients = [lambda x: 1.0, None]
        A = np.array([[2.0, 0.5], [0.5, -1.0]])
        with_boundary = assemble_form(basis, coefficients, A).F
        without = assemble_form(basis, coefficients, np.zeros((2, 2))).F
        T = basis.trace_map
        np.testing.assert_allclose(with_boundary - without, T.T @ A @ T)

    def test_non_positive_leading_coefficient(self):
        basis = build_basis(1, 0.0, 1.0, 4)
        with pytest.raises(NonPositiveLeadingCoefficientError) as excinfo:
            assemble_form(basis, [lambda x: x - 0.5, None], np.zeros((2, 2)), lam=1.0)
        assert excinfo.value.x < 0.5
        assert excinfo.value.lam == 1.0


class TestConstrainedForm:
    def test_dirichlet_reduction(self):
        basis = build_basis(1, 0.0, 1.0, 4)
        constraint = constraint_data(np.eye(2))
        form = assemble_form(basis, [lambda x: 1.0, None], boundary_matrix(np.eye(2)), constraint)
        assert form.constraint_reduced
        assert form.dimension == basis.dofs - 2
        Q = form.reduction_map
        np.testing.assert_allclose(Q.T @ Q, np.eye(form.dimension), atol=1e-14)
        expanded = form.expand(np.ones(form.dimension))
        np.testing.assert_allclose(basis.trace_map @ expanded, 0.0, atol=1e-14)

    def test_no_reduction_for_trivial_kernel(self):
        basis = build_basis(1, 0.0, 1.0, 4)
        assert reduction_map(basis, constraint_data(-np.eye(2))) is None
        form = assemble_form(basis, [lambda x: 1.0, None], boundary_matrix(-np.eye(2)))
        assert not form.constraint_reduced
        assert form.dimension == basis.dofs
        np.testing.assert_array_equal(form.expand(np.ones(5)), np.ones(5))

    def test_dirichlet_eigenvalues(self):
        basis = build_basis(1, 0.0, np.pi, 32, degree=3)
        U = np.eye(2)
        form = assemble_form(basis, [lambda x: 1.0, None], boundary_matrix(U), constraint_data(U))
        values = generalized_eigenvalues(form.F, form.M)
        np.testing.assert_allclose(values[:3], [1.0, 4.0, 9.0], rtol=1e-6)

    def test_dirichlet_eigenvalues_decrease_under_refinement(self):
        U = np.eye(2)
        exact = np.arange(1, 5) ** 2
        previous = None
        for elements in (8, 16, 32, 64):
            basis = build_basis(1, 0.0, np.pi, elements, degree=3)
            form = assemble_form(
                basis, [lambda x: 1.0, None], boundary_matrix(U), constraint_data(U)
            )
            values = generalized_eigenvalues(form.F, form.M)[:4]
            assert np.all(values >= exact - 1e-10)
            if previous is not None:
                assert np.all(values <= previous + 1e-10)
            previous = values

    def test_neumann_eigenvalues(self):
        basis = build_basis(1, 0.0, np.pi, 32, degree=3)
        form = assemble_form(basis, [lambda x: 1.0, None], boundary_matrix(-np.eye(2)))
        values = generalized_eigenvalues(form.F, form.M)
        np.testing.assert_allclose(values[:3], [0.0, 1.0, 4.0], rtol=1e-6, atol=1e-9)

    def test_clamped_beam(self):
        basis = build_basis(2, 0.0, 1.0, 16, degree=5)
        U = np.eye(4)
        coefficients = [lambda x: 1.0, None, None]
        form = assemble_form(basis, coefficients, boundary_matrix(U), constraint_data(U))
        values = generalized_eigenvalues(form.F, form.M)
        assert values[0] == pytest.approx(clamped_beam_eigenvalue(), rel=1e-6)


class TestFormDerivative:
    def test_linear_in_lambda(self):
        basis = build_basis(1, 0.0, 1.0, 4)
        M = mass_matrix(basis)
        derivative = assemble_form_derivative(basis, [None, lambda x: -1.0], np.zeros((2, 2)))
        np.testing.assert_allclose(derivative, -M, atol=1e-15)

    def test_boundary_derivative_and_reduction(self):
        basis = build_basis(1, 0.0, 1.0, 4)
        Q = reduction_map(basis, constraint_data(np.diag([1.0, -1.0])))
        A_prime = np.diag([0.0, 3.0])
        derivative = assemble_form_derivative(basis, [None, None], A_prime, Q)
        T = basis.trace_map
        np.testing.assert_allclose(derivative, Q.T @ T.T @ A_prime @ T @ Q, atol=1e-14)
