"""count mode: eigenvalues on [xi1, xi2) against the inertia jump."""

from app.constants import CountingRule, RunMode
from app.models.result import ModeOutcome
from app.modes.base_mode import (
    BaseMode,
    RunContext,
    format_verdict,
    render_count_report,
    write_located_csv,
)
from app.pencil.report import count_report


class CountMode(BaseMode):
    """Counts eigenvalues and reports the lower-bound verdict."""

    def __init__(self) -> None:
        super().__init__(RunMode.COUNT)

    def execute(self, context: RunContext) -> ModeOutcome:
        config = context.config
        report = count_report(context.model, config.interval, config.count_options())
        lower = report.verdict(CountingRule.LOWER_BOUND)
        lines = render_count_report(report)
        lines.append(format_verdict(lower))
        lines.extend(format_verdict(v) for v in report.convention_verdicts)

        artifacts = [write_located_csv(context, report, "count.csv")]
        artifacts.append(self.write_report(context, lines))
        return ModeOutcome(report=lines, verdicts=[lower], count=report, artifacts=artifacts)
