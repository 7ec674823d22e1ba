"""Cyclic Jacobi eigenvalue algorithm for dense Hermitian matrices."""

import math

import numpy as np

from app.constants import JACOBI_MAX_SWEEPS, JACOBI_TOL
from app.utils.logger import logger


def _off_norm(A: np.ndarray) -> float:
    return float(np.linalg.norm(A - np.diag(np.diag(A))))


def jacobi_eigh(
    H: np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a Hermitian matrix by cyclic Jacobi sweeps.

    Each rotation first removes the phase of the pivot entry with a diagonal unitary and then
    applies the real rotation of the symmetric algorithm, so real input stays real.
    Sweeps stop when the off-diagonal Frobenius norm is at most ``tol * ||H||_F``.

    Args:
        H: Hermitian matrix (not modified).
        tol: Relative convergence threshold.
        max_sweeps: Sweep budget.

    Returns:
        Unsorted eigenvalues and the unitary matrix of eigenvectors (columns).
    """
    A = np.array(H, dtype=complex if np.iscomplexobj(H) else float, copy=True)
    n = A.shape[0]
    V = np.eye(n, dtype=A.dtype)
    threshold = tol * float(np.linalg.norm(A))

    for sweep in range(max_sweeps):
        if _off_norm(A) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                theta = (A[q, q].real - A[p, p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                G = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=A.dtype)

                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, idx] = V[:, idx] @ G
    else:
        if _off_norm(A) > threshold:
            logger.warning(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_off_norm(A):.3e}, target {threshold:.3e})"
            )

    return np.real(np.diag(A)).copy(), V
