"""Domain errors.

Every error is a ``ValueError`` so callers that only guard against bad input keep working.
"""

from typing import Optional


class SpectralCountError(ValueError):
    """Base class of all domain errors."""


class NotHermitianError(SpectralCountError):
    """Matrix is not Hermitian within tolerance."""

    def __init__(self, max_asymmetry: float, tol: float) -> None:
        self.max_asymmetry = max_asymmetry
        super().__init__(
            f"Matrix is not Hermitian: max asymmetry {max_asymmetry:.3e} exceeds {tol:.1e}"
        )


class NotPositiveDefiniteError(SpectralCountError):
    """Cholesky factorization met a non-positive pivot."""

    def __init__(self, pivot_index: int, pivot: float) -> None:
        self.pivot_index = pivot_index
        self.pivot = pivot
        super().__init__(f"Matrix is not positive definite: pivot {pivot_index} equals {pivot:.3e}")


class NotUnitaryError(SpectralCountError):
    """Boundary matrix is not unitary within tolerance."""

    def __init__(self, deviation: float) -> None:
        self.deviation = deviation
        super().__init__(f"Matrix is not unitary: ||U*U - I|| = {deviation:.3e}")


class RankChangeError(SpectralCountError):
    """rank(U(lambda) - 1) changes inside a differentiation stencil."""

    def __init__(self, lambda_minus: float, lambda_plus: float, ranks: tuple[int, ...]) -> None:
        self.lambda_minus = lambda_minus
        self.lambda_plus = lambda_plus
        self.ranks = ranks
        super().__init__(
            f"rank(U - 1) changes between lambda={lambda_minus:.6g} and lambda={lambda_plus:.6g} "
            f"(ranks {list(ranks)}); A'(lambda) is undefined there"
        )


class NonPositiveLeadingCoefficientError(SpectralCountError):
    """Leading coefficient p0(x, lambda) is not positive."""

    def __init__(self, x: float, lam: Optional[float], value: float) -> None:
        self.x = x
        self.lam = lam
        self.value = value
        where = f"x={x:.6g}" if lam is None else f"x={x:.6g}, lambda={lam:.6g}"
        super().__init__(f"Leading coefficient p0 is not positive at {where} (value {value:.6g})")


class DegenerateElementError(SpectralCountError):
    """Mesh cell of zero length."""


class ParameterOutOfRangeError(SpectralCountError):
    """Spectral parameter outside the admissible interval."""


class StepUnderflowError(SpectralCountError):
    """Finite-difference step too small to change the abscissa."""


class ExpressionError(SpectralCountError):
    """Error located in a coefficient expression."""

    def __init__(self, message: str, offset: int) -> None:
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class ExpressionSyntaxError(ExpressionError):
    """Malformed expression text."""


class UnknownIdentifierError(ExpressionError):
    """Identifier or function name outside the grammar."""

    def __init__(self, name: str, offset: int) -> None:
        self.name = name
        super().__init__(f"Unknown identifier '{name}'", offset)


class ExpressionEvaluationError(ExpressionError):
    """Evaluation left the domain of an operator or function."""

    def __init__(self, kind: str, offset: int) -> None:
        self.kind = kind
        super().__init__(f"Evaluation error {kind}", offset)


class ConfigError(SpectralCountError):
    """Invalid run configuration."""

    def __init__(
        self,
        message: str,
        key_path: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        self.detail = message
        self.key_path = key_path
        self.line = line
        self.column = column
        if key_path:
            message = f"{key_path}: {message}"
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
