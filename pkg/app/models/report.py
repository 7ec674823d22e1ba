"""Counting verdicts and reports."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.constants import CountingRule, VerdictStatus
from app.models.linalg import Inertia
from app.models.pencil import LocatedEigenvalue
from app.utils.settings import settings


class Verdict(BaseModel):
    """Outcome of one counting rule."""

    model_config = ConfigDict(frozen=True)

    rule: CountingRule
    status: VerdictStatus
    message: str = ""
    lambda_value: Optional[float] = Field(default=None, description="Where a hypothesis failed")
    value: Optional[float] = Field(default=None, description="Offending form value")
    convention: str = Field(default="half-open", description="Endpoint counting convention")

    @property
    def is_contradiction(self) -> bool:
        """A counting rule whose hypotheses hold but whose conclusion does not."""
        return self.status is VerdictStatus.FAIL


class MonotoneCertificate(BaseModel):
    """Result of testing F(l1) - F(l2) > 0 on consecutive samples l1 < l2."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    certified: bool
    samples: list[float] = Field(default_factory=list)
    failing_pair: Optional[tuple[float, float]] = None
    min_eigenvalue: Optional[float] = Field(
        default=None, description="Most negative eigenvalue of the difference"
    )
    witness: Optional[np.ndarray] = Field(
        default=None, description="Vector with non-positive difference form"
    )


class NegativeTypeVerdict(BaseModel):
    """Sign test of y* F'(lambda0) y on the kernel of F(lambda0)."""

    model_config = ConfigDict(frozen=True)

    lambda0: float
    status: VerdictStatus
    values: list[float] = Field(default_factory=list)
    type_tol: float = 0.0

    @property
    def max_value(self) -> Optional[float]:
        return max(self.values) if self.values else None


class CountOptions(BaseModel):
    """Tolerances and sampling used by count reports."""

    zero_tol: float = Field(default_factory=lambda: settings.ZERO_TOL, gt=0)
    inertia_zero_tol: float = Field(default_factory=lambda: settings.INERTIA_ZERO_TOL, gt=0)
    cluster_tol: float = Field(default_factory=lambda: settings.CLUSTER_TOL, gt=0)
    grid_step: float = Field(default_factory=lambda: settings.SCAN_STEP, gt=0)
    max_iterations: int = Field(default_factory=lambda: settings.MAX_BISECTION_ITERATIONS, ge=1)
    monotone_samples: int = Field(default_factory=lambda: settings.MONOTONE_SAMPLES, ge=2)
    negative_type_probes: int = Field(default_factory=lambda: settings.NEGATIVE_TYPE_PROBES, ge=0)
    seed: int = Field(default_factory=lambda: settings.RANDOM_SEED)


class CountReport(BaseModel):
    """Eigenvalue count on [xi1, xi2) with inertia at the endpoints and verdicts."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    interval: tuple[float, float]
    N: int = Field(..., ge=0, description="Eigenvalues in [xi1, xi2) with multiplicity")
    nu_at_xi1: Inertia
    nu_at_xi2: Inertia
    located: list[LocatedEigenvalue] = Field(default_factory=list)
    verdicts: list[Verdict] = Field(default_factory=list)
    endpoint_caveat: bool = Field(
        default=False, description="An endpoint lies on or next to an eigenvalue"
    )
    convention_counts: dict[str, int] = Field(default_factory=dict)
    convention_verdicts: list[Verdict] = Field(default_factory=list)
    negative_type: list[NegativeTypeVerdict] = Field(default_factory=list)
    monotone: Optional[MonotoneCertificate] = None

    @property
    def delta_nu(self) -> int:
        return self.nu_at_xi2.negative - self.nu_at_xi1.negative

    def verdict(self, rule: CountingRule) -> Optional[Verdict]:
        """Primary verdict for ``rule``."""
        for verdict in self.verdicts:
            if verdict.rule is rule:
                return verdict
        return None

    @property
    def has_contradiction(self) -> bool:
        return any(verdict.is_contradiction for verdict in self.verdicts)
