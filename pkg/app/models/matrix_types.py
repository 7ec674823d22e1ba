"""Annotated numpy field types for pydantic models.

Matrices arrive from JSON either as nested lists of numbers (or numeric strings) or as
``{"real": [[...]], "imag": [[...]]}``. Purely real input stays real.
"""

from typing import Annotated, Any

import numpy as np
from pydantic import BeforeValidator, PlainSerializer


def _real_array(value: Any) -> np.ndarray:
    return np.asarray(value, dtype=float)


def to_matrix(value: Any) -> np.ndarray:
    """Convert JSON-like input to a 2-D float or complex array."""
    if isinstance(value, dict):
        if "real" not in value:
            raise ValueError("complex matrix needs a 'real' part")
        real = _real_array(value["real"])
        if value.get("imag") is None:
            matrix = real
        else:
            imag = _real_array(value["imag"])
            if imag.shape != real.shape:
                raise ValueError(
                    f"real part {real.shape} and imag part {imag.shape} differ in shape"
                )
            matrix = real + 1j * imag if np.any(imag) else real
    elif isinstance(value, np.ndarray):
        matrix = value if np.iscomplexobj(value) else value.astype(float, copy=False)
    else:
        try:
            matrix = _real_array(value)
        except (TypeError, ValueError):
            matrix = np.asarray(value, dtype=complex)
    if matrix.ndim == 0:
        matrix = matrix.reshape(1, 1)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    return matrix


def serialize_matrix(matrix: np.ndarray) -> dict[str, list]:
    """Serialize a matrix as separate real and imaginary parts."""
    return {"real": np.real(matrix).tolist(), "imag": np.imag(matrix).tolist()}


def to_vector(value: Any) -> np.ndarray:
    """Convert JSON-like input to a 1-D float or complex array."""
    array = np.asarray(value)
    if array.ndim != 1:
        raise ValueError(f"expected a vector, got shape {array.shape}")
    return array


Matrix = Annotated[np.ndarray, BeforeValidator(to_matrix), PlainSerializer(serialize_matrix)]
