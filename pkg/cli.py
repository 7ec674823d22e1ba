"""Command-line front end using Rich for report rendering."""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from app.constants import EXIT_ERROR, RunMode, VerdictStatus
from app.exceptions import ConfigError
from app.models.result import RunResult
from app.models.run_config import load_config
from app.services.run_service import run
from app.utils.logger import logger

console = Console()

STATUS_STYLES = {
    VerdictStatus.PASS: "green",
    VerdictStatus.FAIL: "bold red",
    VerdictStatus.REFUTED_HYPOTHESIS: "yellow",
    VerdictStatus.FAIL_HYPOTHESIS: "yellow",
    VerdictStatus.NOT_APPLICABLE: "dim",
}


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for ``spectral-count <mode> --config <path> [options]``."""
    parser = argparse.ArgumentParser(
        prog="spectral-count",
        description=(
            "Count eigenvalues of self-adjoint operator-functions against the inertia jump."
        ),
    )
    parser.add_argument("mode", choices=[mode.value for mode in RunMode], help="What to compute")
    parser.add_argument("--config", required=True, type=Path, help="Run configuration (JSON)")
    parser.add_argument(
        "--out", type=Path, default=None, help="Output directory (overrides output.directory)"
    )
    parser.add_argument("--mesh", type=int, default=None, help="Element count (overrides mesh)")
    parser.add_argument(
        "--grid-steps", type=int, default=None, help="Grid points (overrides lambda_grid.steps)"
    )
    return parser


def display_result(result: RunResult) -> None:
    """Display a run result using Rich formatting."""
    if result.error:
        console.print(
            Panel(f"[bold red]{escape(result.error)}[/bold red]", title="Error", border_style="red")
        )
        return

    outcome = result.outcome
    title = f"[bold cyan]{result.mode.value}[/bold cyan]"
    console.print(Panel(escape("\n".join(outcome.report)), title=title, border_style="cyan"))

    if outcome.verdicts:
        table = Table(
            title="Verdicts", header_style="bold cyan", border_style="cyan", row_styles=["", "dim"]
        )
        table.add_column("Rule", style="cyan", no_wrap=True)
        table.add_column("Status")
        table.add_column("Detail")
        for verdict in outcome.verdicts:
            style = STATUS_STYLES.get(verdict.status, "")
            table.add_row(
                verdict.rule.value,
                f"[{style}]{verdict.status.value}[/{style}]",
                escape(verdict.message),
            )
        console.print(table)

    if outcome.hypotheses:
        table = Table(
            title="Hypotheses",
            header_style="bold cyan",
            border_style="cyan",
            row_styles=["", "dim"],
        )
        table.add_column("Check", style="cyan", no_wrap=True)
        table.add_column("Holds", justify="center")
        table.add_column("Detail")
        for check in outcome.hypotheses:
            mark = "[green]yes[/green]" if check.holds else "[yellow]no[/yellow]"
            table.add_row(check.name.value, mark, escape(check.detail))
        console.print(table)

    for artifact in outcome.artifacts:
        console.print(f"[dim]wrote {escape(artifact)}[/dim]")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI function; returns the exit status."""
    args = build_parser().parse_args(argv)
    overrides = {
        "mode": args.mode,
        "mesh": args.mesh,
        "lambda_grid.steps": args.grid_steps,
        "output.directory": str(args.out) if args.out is not None else None,
    }
    try:
        config = load_config(args.config, overrides)
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        console.print(
            Panel(
                f"[bold red]{escape(str(e))}[/bold red]",
                title="Configuration error",
                border_style="red",
            )
        )
        return EXIT_ERROR

    result = run(config)
    display_result(result)
    return result.exit_status


if __name__ == "__main__":
    sys.exit(main())
