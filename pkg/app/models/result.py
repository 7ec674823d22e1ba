"""Models for run results."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.constants import EXIT_OK, RunMode
from app.models.diffop import ConvergenceStudy, HypothesisCheck
from app.models.report import CountReport, Verdict


class ModeOutcome(BaseModel):
    """What a mode computed: report lines, verdicts and written artifacts."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    report: list[str] = Field(default_factory=list, description="Human-readable report lines")
    verdicts: list[Verdict] = Field(default_factory=list)
    hypotheses: list[HypothesisCheck] = Field(default_factory=list)
    count: Optional[CountReport] = None
    convergence: Optional[ConvergenceStudy] = None
    artifacts: list[str] = Field(default_factory=list, description="Paths of written files")


class RunResult(BaseModel):
    """Outcome of one run with its exit status."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mode: RunMode
    exit_status: int = EXIT_OK
    outcome: ModeOutcome = Field(default_factory=ModeOutcome)
    error: Optional[str] = None

    @property
    def verdicts(self) -> list[Verdict]:
        return self.outcome.verdicts

    @property
    def artifacts(self) -> list[str]:
        return self.outcome.artifacts
