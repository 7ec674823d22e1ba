"""Eigenvalue counts on [xi1, xi2) checked against the inertia jump nu(xi2) - nu(xi1)."""

from typing import Optional

import numpy as np

from app.constants import CountingRule, VerdictStatus
from app.models.linalg import Inertia
from app.models.pencil import LocatedEigenvalue
from app.models.report import (
    CountOptions,
    CountReport,
    MonotoneCertificate,
    NegativeTypeVerdict,
    Verdict,
)
from app.pencil.branches import nu
from app.pencil.locate import check_interval, in_half_open, near_endpoint, scan_roots
from app.pencil.model import PencilModel
from app.pencil.validators import check_monotone, check_negative_type
from app.utils.logger import logger


def lower_bound_verdict(count: int, delta_nu: int, convention: str = "half-open") -> Verdict:
    """N >= nu(xi2) - nu(xi1)."""
    if count >= delta_nu:
        relation = "strict" if count > delta_nu else "equality"
        return Verdict(
            rule=CountingRule.LOWER_BOUND,
            status=VerdictStatus.PASS,
            message=f"N={count} >= delta nu={delta_nu} ({relation})",
            convention=convention,
        )
    return Verdict(
        rule=CountingRule.LOWER_BOUND,
        status=VerdictStatus.FAIL,
        message=f"N={count} < delta nu={delta_nu}",
        convention=convention,
    )


def _equality_status(count: int, delta_nu: int) -> tuple[VerdictStatus, str]:
    if count == delta_nu:
        return VerdictStatus.PASS, f"N={count} == delta nu={delta_nu}"
    return VerdictStatus.FAIL, f"N={count} != delta nu={delta_nu}"


def _kernel_caveat(model: PencilModel) -> Optional[str]:
    metadata = model.metadata
    if not metadata.rank_constant:
        return "rank(U(lambda) - 1) is not constant"
    if not metadata.kernel_constant:
        return "ker(U(lambda) - 1) depends on lambda"
    return None


def monotone_verdict(
    model: PencilModel,
    interval: tuple[float, float],
    count: int,
    delta_nu: int,
    samples: int,
) -> tuple[Verdict, Optional[MonotoneCertificate]]:
    """Equality N = delta nu under a sampled monotonicity certificate."""
    caveat = _kernel_caveat(model)
    if caveat:
        return (
            Verdict(
                rule=CountingRule.MONOTONE_EQUALITY,
                status=VerdictStatus.NOT_APPLICABLE,
                message=caveat,
            ),
            None,
        )
    certificate = check_monotone(model, np.linspace(interval[0], interval[1], samples))
    if not certificate.certified:
        l1, l2 = certificate.failing_pair
        return (
            Verdict(
                rule=CountingRule.MONOTONE_EQUALITY,
                status=VerdictStatus.REFUTED_HYPOTHESIS,
                message=f"F({l1:.6g}) - F({l2:.6g}) is not positive definite",
                lambda_value=l1,
                value=certificate.min_eigenvalue,
            ),
            certificate,
        )
    status, message = _equality_status(count, delta_nu)
    return Verdict(rule=CountingRule.MONOTONE_EQUALITY, status=status, message=message), certificate


def negative_type_verdict(
    model: PencilModel,
    located: list[LocatedEigenvalue],
    count: int,
    delta_nu: int,
    options: CountOptions,
) -> tuple[Verdict, list[NegativeTypeVerdict]]:
    """Equality N = delta nu when every located eigenvalue is of negative type."""
    if not model.has_derivative:
        return (
            Verdict(
                rule=CountingRule.NEGATIVE_TYPE_EQUALITY,
                status=VerdictStatus.NOT_APPLICABLE,
                message="model has no form derivative",
            ),
            [],
        )
    caveat = _kernel_caveat(model)
    if caveat:
        return (
            Verdict(
                rule=CountingRule.NEGATIVE_TYPE_EQUALITY,
                status=VerdictStatus.NOT_APPLICABLE,
                message=caveat,
            ),
            [],
        )
    checks = [
        check_negative_type(model, root, probes=options.negative_type_probes, seed=options.seed)
        for root in located
    ]
    for check in checks:
        if check.status is VerdictStatus.FAIL:
            return (
                Verdict(
                    rule=CountingRule.NEGATIVE_TYPE_EQUALITY,
                    status=VerdictStatus.FAIL_HYPOTHESIS,
                    message=(
                        f"f'(lambda0)[y0] = {check.max_value:.6g} is not negative "
                        f"at lambda0={check.lambda0:.10g}"
                    ),
                    lambda_value=check.lambda0,
                    value=check.max_value,
                ),
                checks,
            )
    status, message = _equality_status(count, delta_nu)
    return Verdict(rule=CountingRule.NEGATIVE_TYPE_EQUALITY, status=status, message=message), checks


def _multiplicity(roots: list[LocatedEigenvalue]) -> int:
    return sum(root.multiplicity for root in roots)


def count_report(
    model: PencilModel,
    interval: tuple[float, float],
    options: Optional[CountOptions] = None,
) -> CountReport:
    """Count eigenvalues on [xi1, xi2) and evaluate the counting rules.

    ``lower_bound`` is always evaluated. ``monotone_equality`` is evaluated from a monotonicity
    check on sampled parameters and ``negative_type_equality`` only when the model has a form
    derivative. When a root or a zero inertia band sits at an endpoint, the closed and open
    conventions are counted as well and the report carries an endpoint caveat.

    Args:
        model: Pencil model.
        interval: (xi1, xi2) strictly inside the parameter interval.
        options: Tolerances; defaults come from settings.
    """
    options = options or CountOptions()
    check_interval(model, interval)
    xi1, xi2 = interval

    margin_lo = options.cluster_tol * (1.0 + abs(xi1))
    margin_hi = options.cluster_tol * (1.0 + abs(xi2))
    lo = xi1 - margin_lo if model.contains(xi1 - margin_lo) else xi1
    hi = xi2 + margin_hi if model.contains(xi2 + margin_hi) else xi2
    roots = scan_roots(
        model,
        lo,
        hi,
        options.grid_step,
        options.zero_tol,
        options.cluster_tol,
        options.max_iterations,
    )
    roots = [
        root.model_copy(
            update={"near_endpoint": near_endpoint(root.lambda0, interval, options.cluster_tol)}
        )
        for root in roots
    ]
    located = [root for root in roots if in_half_open(root, interval)]
    count = _multiplicity(located)

    nu1: Inertia = nu(model, xi1, options.inertia_zero_tol)
    nu2: Inertia = nu(model, xi2, options.inertia_zero_tol)
    delta_nu = nu2.negative - nu1.negative

    lower = lower_bound_verdict(count, delta_nu)
    monotone, certificate = monotone_verdict(
        model, interval, count, delta_nu, options.monotone_samples
    )
    negative, type_checks = negative_type_verdict(model, located, count, delta_nu, options)
    verdicts = [lower, monotone, negative]

    endpoint_roots = [root for root in roots if root.near_endpoint]
    caveat = bool(endpoint_roots) or nu1.zero > 0 or nu2.zero > 0
    convention_counts = {"half-open": count}
    convention_verdicts: list[Verdict] = []
    if caveat:
        closed = _multiplicity([r for r in roots if in_half_open(r, interval) or r.near_endpoint])
        open_ = _multiplicity([r for r in located if not r.near_endpoint])
        convention_counts.update({"closed": closed, "open": open_})
        convention_verdicts = [
            lower_bound_verdict(closed, delta_nu, "closed"),
            lower_bound_verdict(open_, delta_nu, "open"),
        ]
        logger.warning(
            f"Endpoint of [{xi1:.10g}, {xi2:.10g}) lies on or next to an eigenvalue; "
            f"counts {convention_counts}"
        )

    logger.info(
        f"Count on [{xi1:.10g}, {xi2:.10g}): N={count}, nu {nu1.negative} -> {nu2.negative}, "
        + ", ".join(f"{v.rule.value}={v.status.value}" for v in verdicts)
    )
    return CountReport(
        interval=(xi1, xi2),
        N=count,
        nu_at_xi1=nu1,
        nu_at_xi2=nu2,
        located=located,
        verdicts=verdicts,
        endpoint_caveat=caveat,
        convention_counts=convention_counts,
        convention_verdicts=convention_verdicts,
        negative_type=type_checks,
        monotone=certificate,
    )
