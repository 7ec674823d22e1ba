"""Hermite finite element discretization of the quadratic form."""

from app.galerkin.assembly import (
    assemble_form,
    assemble_form_derivative,
    assemble_matrix,
    mass_matrix,
    reduce_matrix,
    reduction_map,
)
from app.galerkin.basis import HermiteBasis, SmoothFunction, build_basis, interpolate

__all__ = [
    "HermiteBasis",
    "SmoothFunction",
    "assemble_form",
    "assemble_form_derivative",
    "assemble_matrix",
    "build_basis",
    "interpolate",
    "mass_matrix",
    "reduce_matrix",
    "reduction_map",
]
