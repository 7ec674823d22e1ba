"""branches mode: eigenvalue branches Lambda_m(lambda) along a parameter grid."""

from app.constants import DEFAULT_BRANCH_COUNT, RunMode
from app.models.result import ModeOutcome
from app.modes.base_mode import BaseMode, RunContext
from app.pencil.branches import branch_table
from app.utils.csv_utils import write_csv, write_gnuplot_script


class BranchesMode(BaseMode):
    """Writes ``lambda,Lambda_1..Lambda_M`` and a gnuplot script plotting it."""

    def __init__(self) -> None:
        super().__init__(RunMode.BRANCHES)

    def execute(self, context: RunContext) -> ModeOutcome:
        config = context.config
        m_max = config.m_max
        if m_max is None:
            m_max = min(context.model.dimension, DEFAULT_BRANCH_COUNT)
        table = branch_table(context.model, config.grid(), m_max)

        csv_path = write_csv(
            context.artifact_path("branches.csv"),
            ["lambda"] + [f"Lambda_{m}" for m in range(1, table.m_max + 1)],
            [
                [float(lam)] + [float(v) for v in table.branches[:, j]]
                for j, lam in enumerate(table.lambda_grid)
            ],
        )
        script_path = write_gnuplot_script(
            context.artifact_path("branches.gp"),
            csv_path.name,
            table.m_max + 1,
            f"{config.output.prefix}: eigenvalue branches",
        )

        grid = table.lambda_grid
        report = [
            f"{table.m_max} branches on [{grid[0]:.10g}, {grid[-1]:.10g}] with {grid.size} points"
        ]
        for m in range(table.m_max):
            report.append(
                f"  Lambda_{m + 1}: from {table.branches[m, 0]:.10g} "
                f"to {table.branches[m, -1]:.10g}, "
                f"largest step {table.continuity[m]:.3e}"
            )
        return ModeOutcome(report=report, artifacts=[str(csv_path), str(script_path)])
