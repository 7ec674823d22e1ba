"""Unitary boundary parametrization and the boundary matrix."""

from app.boundary.boundary_matrix import (
    boundary_matrix,
    boundary_matrix_derivative,
    boundary_pair,
    constraint_data,
    kernels_equal,
    rank_constancy_check,
    residue_weight,
    unitary_eigen,
)
from app.boundary.unitary import check_unitary, evaluate_U, unitary_deviation

__all__ = [
    "boundary_matrix",
    "boundary_matrix_derivative",
    "boundary_pair",
    "check_unitary",
    "constraint_data",
    "evaluate_U",
    "kernels_equal",
    "rank_constancy_check",
    "residue_weight",
    "unitary_deviation",
    "unitary_eigen",
]
