"""Hypothesis checks of the counting rules and the variational characterization of nu."""

from typing import Optional, Sequence

import numpy as np

from app.constants import VerdictStatus
from app.exceptions import NotPositiveDefiniteError
from app.linalg import cholesky, generalized_eigen, hermitian_eigen, is_positive_definite
from app.models.pencil import LocatedEigenvalue
from app.models.report import MonotoneCertificate, NegativeTypeVerdict
from app.pencil.model import PencilModel
from app.utils.logger import logger
from app.utils.settings import settings

TYPE_TOL_SCALE = 1e-9


def check_monotone(
    model: PencilModel,
    samples: Sequence[float],
    probes: Optional[Sequence[np.ndarray]] = None,
) -> MonotoneCertificate:
    """Test that F(l1) - F(l2) is positive definite for consecutive samples l1 < l2.

    Args:
        model: Pencil model.
        samples: At least two parameter values.
        probes: Optional vectors y; ``y* (F(l1) - F(l2)) y <= 0`` also refutes.

    Returns:
        A certificate, or a refutation carrying the failing pair and a witness vector
        (eigenvector of the most negative eigenvalue of the difference, or the probe).
    """
    points = sorted(float(s) for s in samples)
    if len(points) < 2:
        raise ValueError("check_monotone needs at least two samples")
    forms = [model.form(lam)[0] for lam in points]
    for (l1, F1), (l2, F2) in zip(zip(points, forms), zip(points[1:], forms[1:])):
        difference = F1 - F2
        for probe in probes or []:
            value = float(np.real(np.vdot(probe, difference @ probe)))
            if value <= 0:
                return MonotoneCertificate(
                    certified=False,
                    samples=points,
                    failing_pair=(l1, l2),
                    min_eigenvalue=value,
                    witness=probe,
                )
        try:
            cholesky(difference)
        except NotPositiveDefiniteError:
            decomposition = hermitian_eigen(difference)
            logger.debug(f"F({l1:.6g}) - F({l2:.6g}) is not positive definite")
            return MonotoneCertificate(
                certified=False,
                samples=points,
                failing_pair=(l1, l2),
                min_eigenvalue=float(decomposition.eigenvalues[0]),
                witness=decomposition.eigenvectors[:, 0],
            )
    return MonotoneCertificate(certified=True, samples=points)


def check_negative_type(
    model: PencilModel,
    located: LocatedEigenvalue,
    probes: Optional[int] = None,
    seed: Optional[int] = None,
    type_tol: Optional[float] = None,
) -> NegativeTypeVerdict:
    """Sign of y* F'(lambda0) y on the kernel of F(lambda0).

    The kernel basis vectors and ``probes`` seeded random unit combinations of them are
    tested; the verdict passes iff every value is below ``-type_tol``.
    """
    if not model.has_derivative:
        return NegativeTypeVerdict(lambda0=located.lambda0, status=VerdictStatus.NOT_APPLICABLE)
    probes = settings.NEGATIVE_TYPE_PROBES if probes is None else probes
    seed = settings.RANDOM_SEED if seed is None else seed
    derivative = model.derivative(located.lambda0)
    if type_tol is None:
        type_tol = TYPE_TOL_SCALE * max(1.0, float(np.linalg.norm(derivative, 2)))

    V = located.eigenvectors
    rng = np.random.default_rng(seed)
    shape = (V.shape[1], probes)
    combinations = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    combinations /= np.linalg.norm(combinations, axis=0)
    vectors = np.hstack([V, V @ combinations]) if probes else V
    values = np.real(np.einsum("ij,ij->j", vectors.conj(), derivative @ vectors))
    status = VerdictStatus.PASS if bool(np.all(values < -type_tol)) else VerdictStatus.FAIL
    return NegativeTypeVerdict(
        lambda0=located.lambda0,
        status=status,
        values=[float(v) for v in values],
        type_tol=type_tol,
    )


def variational_negative_dimension(model: PencilModel, lam: float) -> int:
    """Largest dimension of a span of eigenvectors on which the form is negative definite.

    Eigenvectors of the pencil are accumulated in ascending order while ``-(V* F V)`` stays
    positive definite.
    """
    F, M = model.form(lam)
    decomposition = generalized_eigen(F, M)
    dimension = 0
    for k in range(1, decomposition.dim + 1):
        V = decomposition.eigenvectors[:, :k]
        restricted = V.conj().T @ F @ V
        if not is_positive_definite(-0.5 * (restricted + restricted.conj().T)):
            break
        dimension = k
    return dimension
