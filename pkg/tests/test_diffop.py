import math

import numpy as np
import pytest

from app.constants import CountingRule, Provenance, VerdictStatus
from app.diffop import (
    DifferentialProblem,
    compile_problem,
    convergence_order,
    convergence_study,
    problem_basis,
    semibounded_shift,
)
from app.exceptions import NonPositiveLeadingCoefficientError
from app.models.boundary import UnitaryBoundary
from app.pencil import branch_values, count_report, locate_eigenvalues, nu
from oracles import clamped_beam_eigenvalue, sturm_liouville

DIRICHLET = UnitaryBoundary.constant(np.eye(2))


def _problem(**overrides) -> dict:
    fields = {
        "n": 1,
        "interval": (0.0, 1.0),
        "lambda_interval": (-1.0, 1.0),
        "coefficients": ["1", "-lambda"],
        "boundary": DIRICHLET,
    }
    fields.update(overrides)
    return fields


def _beam(mesh: int = 16) -> DifferentialProblem:
    return DifferentialProblem(
        n=2,
        interval=(0.0, 1.0),
        lambda_interval=(0.0, 1000.0),
        coefficients=["1", "0", "-lambda"],
        coefficient_derivatives=["0", "0", "-1"],
        boundary=UnitaryBoundary.constant(np.eye(4)),
        mesh=mesh,
    )


class TestProblem:
    def test_defaults(self):
        problem = DifferentialProblem(**_problem())
        assert problem.element_degree == 3
        assert not problem.has_derivatives
        assert problem.coefficients[1].evaluate(0.0, 2.0) == pytest.approx(-2.0)

    def test_numbers_are_coefficients(self):
        problem = DifferentialProblem(**_problem(coefficients=[2, -1.5]))
        assert problem.coefficients[0].evaluate(0.3, 0.0) == pytest.approx(2.0)

    def test_sample_lambdas_are_interior(self):
        problem = DifferentialProblem(**_problem())
        np.testing.assert_allclose(problem.sample_lambdas(3), [-0.5, 0.0, 0.5])

    @pytest.mark.parametrize(
        "overrides",
        [
            {"n": 0},
            {"interval": (1.0, 1.0)},
            {"lambda_interval": (0.0, math.inf)},
            {"lambda_interval": (1.0, -1.0)},
            {"coefficients": ["1"]},
            {"coefficient_derivatives": ["0"]},
            {"boundary": UnitaryBoundary.constant(np.eye(4))},
            {
                "n": 2,
                "coefficients": ["1", "0", "-lambda"],
                "boundary": UnitaryBoundary.constant(np.eye(4)),
                "degree": 2,
            },
            {"mesh": 1},
        ],
    )
    def test_rejected(self, overrides):
        with pytest.raises(ValueError):
            DifferentialProblem(**_problem(**overrides))

    def test_bad_expression(self):
        with pytest.raises(ValueError):
            DifferentialProblem(**_problem(coefficients=["1", "-lambda +"]))


class TestCompile:
    def test_metadata(self, dirichlet_problem):
        model = compile_problem(dirichlet_problem)
        metadata = model.metadata
        assert metadata.provenance is Provenance.DIFFERENTIAL
        assert metadata.rank_constant
        assert metadata.kernel_constant
        assert metadata.dimension == problem_basis(dirichlet_problem).dofs - 2
        assert model.has_derivative

    def test_dirichlet_branches(self, dirichlet_problem):
        model = compile_problem(dirichlet_problem)
        np.testing.assert_allclose(branch_values(model, 0.5)[:3], [0.5, 3.5, 8.5], atol=1e-6)
        assert nu(model, 10.5).negative == 3

    def test_dirichlet_count(self, dirichlet_problem):
        report = count_report(compile_problem(dirichlet_problem), (1.5, 10.0))
        assert report.N == 2
        assert report.delta_nu == 2
        assert [root.lambda0 for root in report.located] == pytest.approx([4.0, 9.0], abs=1e-6)
        assert all(verdict.status is VerdictStatus.PASS for verdict in report.verdicts)
        assert not report.endpoint_caveat

    def test_neumann_roots(self, neumann_problem):
        located = locate_eigenvalues(compile_problem(neumann_problem), (-0.5, 5.0))
        assert [root.lambda0 for root in located] == pytest.approx([0.0, 1.0, 4.0], abs=1e-6)

    def test_neumann_keeps_every_dof(self, neumann_problem):
        model = compile_problem(neumann_problem)
        assert model.metadata.dimension == problem_basis(neumann_problem).dofs

    def test_clamped_beam(self):
        located = locate_eigenvalues(compile_problem(_beam()), (400.0, 600.0), grid_step=5.0)
        assert len(located) == 1
        assert located[0].lambda0 == pytest.approx(clamped_beam_eigenvalue(), rel=1e-4)

    def test_non_positive_leading_coefficient(self):
        fields = _problem(interval=(0.0, 2.0), coefficients=["x - 1", "-lambda"])
        problem = DifferentialProblem(**fields)
        with pytest.raises(NonPositiveLeadingCoefficientError) as excinfo:
            compile_problem(problem)
        assert excinfo.value.value <= 0.0

    def test_rank_varying_boundary(self):
        boundary = UnitaryBoundary.generated(np.zeros((2, 2)), np.diag([1.0, 0.0]))
        problem = sturm_liouville(boundary, mesh=16, lambda_interval=(-1.6, 1.7))
        model = compile_problem(problem)
        assert not model.metadata.rank_constant
        assert not model.metadata.kernel_constant
        report = count_report(model, (0.5, 1.5))
        for rule in (CountingRule.MONOTONE_EQUALITY, CountingRule.NEGATIVE_TYPE_EQUALITY):
            assert report.verdict(rule).status is VerdictStatus.NOT_APPLICABLE
        assert report.verdict(CountingRule.LOWER_BOUND) is not None


class TestSemiboundedShift:
    def test_dirichlet(self, dirichlet_problem):
        assert semibounded_shift(dirichlet_problem, 0.0) == pytest.approx(1.0, abs=1e-4)

    def test_neumann(self, neumann_problem):
        assert semibounded_shift(neumann_problem, 0.0) == pytest.approx(0.0, abs=1e-5)

    def test_shift_moves_with_lambda(self, dirichlet_problem):
        model = compile_problem(dirichlet_problem)
        shift = semibounded_shift(model, 3.0, search=(-100.0, 100.0))
        assert shift == pytest.approx(-2.0, abs=1e-4)


class TestConvergence:
    def test_order(self, dirichlet_problem):
        assert convergence_order(dirichlet_problem) == 6
        assert convergence_order(dirichlet_problem.model_copy(update={"degree": 2})) == 4

    def test_quadratic_elements(self):
        problem = sturm_liouville(DIRICHLET, mesh=16, degree=2)
        study = convergence_study(problem, (0.5, 5.0), levels=3, reference=[1.0, 4.0])
        assert [level.mesh for level in study.levels] == [16, 32, 64]
        assert study.order == 4
        assert all(len(level.roots) == 2 for level in study.levels)
        assert min(study.error_ratios[0]) >= 8.0
        np.testing.assert_allclose(study.extrapolated, [1.0, 4.0], atol=1e-6)

    def test_dirichlet_refinement_from_64_to_128(self):
        exact = np.array([1.0, 4.0, 9.0])
        problem = sturm_liouville(DIRICHLET, mesh=64, degree=2)
        study = convergence_study(problem, (0.5, 9.5), levels=2, reference=exact)
        assert [level.mesh for level in study.levels] == [64, 128]
        coarse, fine = (np.abs(np.array(level.roots) - exact) for level in study.levels)
        assert np.all(coarse <= 1e-3 * exact)
        assert coarse.max() >= 8.0 * fine.max()
        # the error of the first root at 128 elements is close to the bisection width
        assert min(study.error_ratios[0][1:]) >= 8.0

    def test_needs_two_levels(self, dirichlet_problem):
        with pytest.raises(ValueError):
            convergence_study(dirichlet_problem, (0.5, 5.0), levels=1)
