"""Pydantic records shared across the application."""

from app.models.boundary import BoundaryMatrix, ConstraintData, RankConstancyReport, UnitaryBoundary
from app.models.diffop import (
    ConvergenceLevel,
    ConvergenceStudy,
    FormIdentityResult,
    HypothesisCheck,
    QuasiDerivativeTrace,
)
from app.models.galerkin import AssembledForm
from app.models.linalg import EigenDecomposition, Inertia
from app.models.pencil import BranchTable, LocatedEigenvalue, PencilMetadata
from app.models.report import (
    CountOptions,
    CountReport,
    MonotoneCertificate,
    NegativeTypeVerdict,
    Verdict,
)

__all__ = [
    "AssembledForm",
    "BoundaryMatrix",
    "BranchTable",
    "ConstraintData",
    "ConvergenceLevel",
    "ConvergenceStudy",
    "CountOptions",
    "CountReport",
    "EigenDecomposition",
    "FormIdentityResult",
    "HypothesisCheck",
    "Inertia",
    "LocatedEigenvalue",
    "MonotoneCertificate",
    "NegativeTypeVerdict",
    "PencilMetadata",
    "QuasiDerivativeTrace",
    "RankConstancyReport",
    "UnitaryBoundary",
    "Verdict",
]
