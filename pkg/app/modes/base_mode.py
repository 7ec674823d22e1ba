"""Base mode class and report rendering shared by the modes."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict

from app.constants import RunMode
from app.diffop.problem import DifferentialProblem
from app.models.diffop import HypothesisCheck
from app.models.linalg import Inertia
from app.models.report import CountReport, Verdict
from app.models.result import ModeOutcome
from app.models.run_config import RunConfig
from app.pencil.model import PencilModel
from app.utils.csv_utils import write_csv
from app.utils.logger import logger


class RunContext(BaseModel):
    """Everything a mode needs: the validated config, the model and the output location."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    config: RunConfig
    model: PencilModel
    problem: Optional[DifferentialProblem] = None
    output_directory: Path

    def artifact_path(self, suffix: str) -> Path:
        """``<output directory>/<prefix>_<suffix>``."""
        return self.output_directory / f"{self.config.output.prefix}_{suffix}"


class BaseMode(ABC):
    """Base class for all run modes."""

    def __init__(self, mode: RunMode) -> None:
        """Initialize the mode."""
        self.mode = mode

    @abstractmethod
    def execute(self, context: RunContext) -> ModeOutcome:
        """Compute, write artifacts and return the outcome."""

    def write_report(self, context: RunContext, lines: list[str]) -> str:
        """Write report lines as ``<prefix>_<mode>.txt``."""
        path = context.artifact_path(f"{self.mode.value.replace('-', '_')}.txt")
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write("\n".join(lines) + "\n")
        logger.info(f"Wrote {path}")
        return str(path)


def format_inertia(inertia: Inertia) -> str:
    return f"{inertia.negative} (zero {inertia.zero}, positive {inertia.positive})"


def format_verdict(verdict: Verdict) -> str:
    line = f"{verdict.rule.value}: {verdict.status.value.upper()} - {verdict.message}"
    if verdict.convention != "half-open":
        line += f" [{verdict.convention}]"
    return line


def format_hypothesis(check: HypothesisCheck) -> str:
    state = "holds" if check.holds else "FAILS"
    return f"{check.name.value}: {state} - {check.detail}"


def render_count_report(report: CountReport) -> list[str]:
    """Report lines for a count: N, nu at both endpoints, verdicts and located roots."""
    xi1, xi2 = report.interval
    lines = [
        f"Interval [{xi1:.10g}, {xi2:.10g})",
        f"N = {report.N}",
        f"nu: {report.nu_at_xi1.negative} -> {report.nu_at_xi2.negative}",
        f"nu(xi1) = {format_inertia(report.nu_at_xi1)}",
        f"nu(xi2) = {format_inertia(report.nu_at_xi2)}",
        f"delta nu = {report.delta_nu}",
        "Located eigenvalues:",
    ]
    for root in report.located:
        flags = []
        if root.tangential:
            flags.append("tangential")
        if not root.converged:
            flags.append(f"unconverged width {root.width:.3e}")
        if root.near_endpoint:
            flags.append(f"near {root.near_endpoint} endpoint")
        suffix = f" ({', '.join(flags)})" if flags else ""
        lines.append(f"  lambda0 = {root.lambda0:.12g}, multiplicity {root.multiplicity}{suffix}")
    if not report.located:
        lines.append("  none")
    if report.endpoint_caveat:
        counts = ", ".join(f"{name}={count}" for name, count in report.convention_counts.items())
        lines.append(
            f"Endpoint caveat: an endpoint lies on or next to an eigenvalue; counts {counts}"
        )
    return lines


def write_located_csv(context: RunContext, report: CountReport, suffix: str) -> str:
    """Located eigenvalues as ``lambda0,multiplicity``."""
    path = write_csv(
        context.artifact_path(suffix),
        ["lambda0", "multiplicity"],
        [(root.lambda0, root.multiplicity) for root in report.located],
    )
    return str(path)
