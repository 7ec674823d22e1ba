import numpy as np
import pytest

from app.exceptions import NotHermitianError, NotPositiveDefiniteError
from app.linalg import (
    as_hermitian,
    cholesky,
    classify_spectrum,
    generalized_eigen,
    generalized_eigenvalues,
    hermitian_eigen,
    hermitian_eigenvalues,
    inertia,
    is_positive_definite,
    jacobi_eigh,
)
from oracles import exact_eigenvalues, random_hermitian

SOLVERS = ["lapack", "jacobi"]


def _random_integer_symmetric(rng: np.random.Generator, size: int) -> np.ndarray:
    X = rng.integers(-5, 6, size=(size, size))
    return X + X.T


class TestHermitianEigen:
    @pytest.mark.parametrize("solver", SOLVERS)
    def test_diagonal(self, solver):
        result = hermitian_eigen(np.diag([3.0, 1.0, 2.0]), solver)
        np.testing.assert_allclose(result.eigenvalues, [1.0, 2.0, 3.0], atol=1e-14)

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_exchange_matrix(self, solver):
        result = hermitian_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]), solver)
        np.testing.assert_allclose(result.eigenvalues, [-1.0, 1.0], atol=1e-14)
        np.testing.assert_allclose(
            np.abs(result.eigenvectors), np.full((2, 2), 2**-0.5), atol=1e-12
        )

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_second_difference_matrix(self, solver):
        size = 8
        H = 2.0 * np.eye(size) - np.eye(size, k=1) - np.eye(size, k=-1)
        expected = 2.0 - 2.0 * np.cos(np.arange(1, size + 1) * np.pi / (size + 1))
        np.testing.assert_allclose(hermitian_eigenvalues(H, solver), np.sort(expected), atol=1e-12)

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_integer_matrices_against_exact_characteristic_polynomial(self, rng, solver):
        checked = 0
        for _ in range(10):
            H = _random_integer_symmetric(rng, 6)
            expected = exact_eigenvalues(H)
            if np.min(np.diff(expected)) < 1e-3:
                continue
            np.testing.assert_allclose(hermitian_eigenvalues(H, solver), expected, atol=1e-9)
            checked += 1
        assert checked >= 5

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_complex_residual_and_orthonormality(self, rng, solver):
        H = random_hermitian(rng, 7)
        result = hermitian_eigen(H, solver)
        V, values = result.eigenvectors, result.eigenvalues
        scale = np.linalg.norm(H)
        assert np.linalg.norm(H @ V - V * values) <= 1e-10 * scale
        np.testing.assert_allclose(V.conj().T @ V, np.eye(7), atol=1e-10)
        assert np.all(np.diff(values) >= 0)

    def test_solvers_agree(self, rng):
        H = random_hermitian(rng, 9, scale=3.0)
        np.testing.assert_allclose(
            hermitian_eigenvalues(H, "jacobi"), hermitian_eigenvalues(H, "lapack"), atol=1e-10
        )

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_deterministic(self, rng, solver):
        H = random_hermitian(rng, 6)
        first = hermitian_eigen(H, solver)
        second = hermitian_eigen(H, solver)
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.eigenvectors, second.eigenvectors)

    def test_empty_matrix(self):
        assert hermitian_eigen(np.zeros((0, 0))).dim == 0

    def test_jacobi_keeps_real_input_real(self, rng):
        H = _random_integer_symmetric(rng, 5).astype(float)
        values, V = jacobi_eigh(H)
        assert not np.iscomplexobj(V)
        np.testing.assert_allclose(H @ V, V * values, atol=1e-10)


class TestValidation:
    def test_not_hermitian(self):
        with pytest.raises(NotHermitianError) as excinfo:
            hermitian_eigen(np.array([[1.0, 2.0], [0.0, 1.0]]))
        assert excinfo.value.max_asymmetry == pytest.approx(2.0)

    def test_complex_asymmetry(self):
        with pytest.raises(NotHermitianError):
            as_hermitian(np.array([[1.0, 1j], [1j, 1.0]]))

    def test_not_square(self):
        with pytest.raises(ValueError):
            as_hermitian(np.zeros((2, 3)))

    def test_rounding_asymmetry_is_symmetrized(self):
        H = np.array([[1.0, 2.0], [2.0 + 1e-14, 1.0]])
        result = as_hermitian(H)
        assert np.array_equal(result, result.T)


class TestInertia:
    def test_signs(self):
        assert inertia(np.diag([-1.0, 0.0, 2.0])).as_tuple() == (1, 1, 1)

    def test_zero_band_is_relative(self):
        assert inertia(np.diag([1e-14, -3.0, 5.0]), zero_tol=1e-10).as_tuple() == (1, 1, 1)
        assert inertia(np.diag([1e-6, -3.0, 5.0]), zero_tol=1e-10).as_tuple() == (1, 0, 2)

    def test_classify_spectrum_scale(self):
        assert classify_spectrum(np.array([-1e-9, 1e3]), 1e-10).as_tuple() == (0, 1, 1)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            inertia(np.eye(2), zero_tol=0.0)


class TestCholesky:
    def test_factor(self):
        L = cholesky(np.array([[4.0, 2.0], [2.0, 2.0]]))
        np.testing.assert_allclose(L, [[2.0, 0.0], [1.0, 1.0]])

    def test_complex_factor(self, rng):
        X = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        M = X @ X.conj().T + np.eye(5)
        L = cholesky(M)
        np.testing.assert_allclose(L @ L.conj().T, M, atol=1e-12)
        assert np.allclose(np.triu(L, 1), 0.0)

    def test_indefinite(self):
        with pytest.raises(NotPositiveDefiniteError) as excinfo:
            cholesky(np.diag([1.0, -1.0]))
        assert excinfo.value.pivot_index == 1
        assert excinfo.value.pivot == pytest.approx(-1.0)

    def test_pivot_below_relative_threshold(self):
        assert not is_positive_definite(np.diag([1.0, 1e-14]))
        assert is_positive_definite(np.diag([1.0, 1e-6]))


class TestGeneralizedEigen:
    def test_identity_mass(self):
        values = generalized_eigenvalues(np.diag([2.0, -3.0]), np.eye(2))
        np.testing.assert_allclose(values, [-3.0, 2.0])

    def test_scaled_mass(self):
        values = generalized_eigenvalues(np.diag([2.0, -3.0]), 4.0 * np.eye(2))
        np.testing.assert_allclose(values, [-0.75, 0.5])

    def test_mass_not_positive_definite(self):
        with pytest.raises(NotPositiveDefiniteError):
            generalized_eigenvalues(np.eye(2), np.diag([1.0, 0.0]))

    @pytest.mark.parametrize("solver", SOLVERS)
    def test_integer_pencil_against_exact_characteristic_polynomial(self, rng, solver):
        checked = 0
        for _ in range(10):
            F = _random_integer_symmetric(rng, 5)
            B = rng.integers(-3, 4, size=(5, 5))
            M = B @ B.T + 5 * np.eye(5, dtype=int)
            expected = exact_eigenvalues(F, M)
            if np.min(np.diff(expected)) < 1e-3:
                continue
            np.testing.assert_allclose(generalized_eigenvalues(F, M, solver), expected, atol=1e-9)
            checked += 1
        assert checked >= 5

    def test_eigenvectors_are_mass_orthonormal(self, rng):
        F = random_hermitian(rng, 6)
        X = rng.standard_normal((6, 6))
        M = X @ X.T + 6.0 * np.eye(6)
        result = generalized_eigen(F, M)
        V = result.eigenvectors
        np.testing.assert_allclose(V.conj().T @ M @ V, np.eye(6), atol=1e-10)
        np.testing.assert_allclose(F @ V, M @ V * result.eigenvalues, atol=1e-10)

    def test_inertia_is_preserved(self, rng):
        for _ in range(20):
            F = random_hermitian(rng, 6)
            X = rng.standard_normal((6, 6))
            M = X @ X.T + 0.5 * np.eye(6)
            values = generalized_eigenvalues(F, M)
            assert classify_spectrum(values, 1e-9).negative == inertia(F, 1e-9).negative
