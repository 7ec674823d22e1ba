"""Differential operator-function problems and their discretization."""

from app.diffop.compile import compile_problem, problem_basis, semibounded_shift
from app.diffop.convergence import convergence_order, convergence_study
from app.diffop.expression import CoefficientExpression, parse_expression
from app.diffop.hypotheses import check_hypotheses
from app.diffop.problem import DifferentialProblem, check_positivity
from app.diffop.strong_form import form_identity_check, quasi_derivative_trace, quasi_derivatives

__all__ = [
    "CoefficientExpression",
    "DifferentialProblem",
    "check_hypotheses",
    "check_positivity",
    "compile_problem",
    "convergence_order",
    "convergence_study",
    "form_identity_check",
    "parse_expression",
    "problem_basis",
    "quasi_derivative_trace",
    "quasi_derivatives",
    "semibounded_shift",
]
