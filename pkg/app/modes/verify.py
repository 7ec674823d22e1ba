"""verify mode: every applicable counting rule plus the hypothesis checks."""

import numpy as np

from app.constants import RunMode
from app.diffop.convergence import convergence_study
from app.diffop.hypotheses import check_hypotheses, check_variational_consistency
from app.models.result import ModeOutcome
from app.modes.base_mode import (
    BaseMode,
    RunContext,
    format_hypothesis,
    format_verdict,
    render_count_report,
    write_located_csv,
)
from app.pencil.report import count_report


class VerifyMode(BaseMode):
    """Runs the count with all three counting rules and checks their hypotheses."""

    def __init__(self) -> None:
        super().__init__(RunMode.VERIFY)

    def execute(self, context: RunContext) -> ModeOutcome:
        config = context.config
        options = config.count_options()
        report = count_report(context.model, config.interval, options)
        lines = render_count_report(report)
        lines.append("Verdicts:")
        lines.extend(f"  {format_verdict(v)}" for v in report.verdicts + report.convention_verdicts)

        if context.problem is not None:
            hypotheses = check_hypotheses(context.problem, context.model)
        else:
            hypotheses = [check_variational_consistency(context.model, np.array(config.interval))]
        lines.append("Hypotheses:")
        lines.extend(f"  {format_hypothesis(check)}" for check in hypotheses)

        convergence = None
        if context.problem is not None and config.convergence_levels >= 2:
            convergence = convergence_study(
                context.problem, config.interval, config.convergence_levels, options
            )
            lines.append(f"Convergence (order {convergence.order:g}):")
            for level in convergence.levels:
                roots = ", ".join(f"{r:.12g}" for r in level.roots)
                lines.append(f"  {level.mesh} elements: {roots}")
            if convergence.extrapolated:
                extrapolated = ", ".join(f"{r:.12g}" for r in convergence.extrapolated)
                lines.append(f"  extrapolated: {extrapolated}")

        artifacts = [write_located_csv(context, report, "verify.csv")]
        artifacts.append(self.write_report(context, lines))
        return ModeOutcome(
            report=lines,
            verdicts=report.verdicts,
            hypotheses=hypotheses,
            count=report,
            convergence=convergence,
            artifacts=artifacts,
        )
