"""nu-scan mode: inertia of the pencil along a parameter grid."""

import numpy as np

from app.constants import RunMode
from app.models.result import ModeOutcome
from app.modes.base_mode import BaseMode, RunContext
from app.pencil.branches import nu_scan
from app.utils.csv_utils import write_csv


class NuScanMode(BaseMode):
    """Writes ``lambda,nu_neg,nu_zero,nu_pos`` for every grid point."""

    def __init__(self) -> None:
        super().__init__(RunMode.NU_SCAN)

    def execute(self, context: RunContext) -> ModeOutcome:
        grid = context.config.grid()
        options = context.config.count_options()
        inertias = nu_scan(context.model, grid, options.inertia_zero_tol)
        path = write_csv(
            context.artifact_path("nu_scan.csv"),
            ["lambda", "nu_neg", "nu_zero", "nu_pos"],
            [(float(lam), i.negative, i.zero, i.positive) for lam, i in zip(grid, inertias)],
        )

        negatives = np.array([i.negative for i in inertias])
        jumps = np.flatnonzero(np.diff(negatives))
        report = [
            f"nu scan on [{grid[0]:.10g}, {grid[-1]:.10g}] with {grid.size} points",
            f"nu from {negatives[0]} to {negatives[-1]}",
        ]
        for j in jumps:
            report.append(
                f"  nu changes {negatives[j]} -> {negatives[j + 1]} "
                f"in ({grid[j]:.10g}, {grid[j + 1]:.10g})"
            )
        zero_points = [float(lam) for lam, i in zip(grid, inertias) if i.zero]
        if zero_points:
            report.append(f"Grid points with eigenvalues in the zero band: {len(zero_points)}")
        return ModeOutcome(report=report, artifacts=[str(path)])
