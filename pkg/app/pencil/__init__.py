"""Counting engine for Hermitian operator-functions."""

from app.pencil.branches import branch_table, branch_values, nu, nu_scan
from app.pencil.locate import locate_eigenvalues, scan_roots
from app.pencil.model import PencilModel, polynomial_model
from app.pencil.report import count_report
from app.pencil.validators import (
    check_monotone,
    check_negative_type,
    variational_negative_dimension,
)

__all__ = [
    "PencilModel",
    "branch_table",
    "branch_values",
    "check_monotone",
    "check_negative_type",
    "count_report",
    "locate_eigenvalues",
    "nu",
    "nu_scan",
    "polynomial_model",
    "scan_roots",
    "variational_negative_dimension",
]
