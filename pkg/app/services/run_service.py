"""Run service: builds the model for a configuration and executes its mode."""

from pathlib import Path
from typing import Optional

from app.constants import EXIT_COUNTING_CONTRADICTION, EXIT_ERROR, EXIT_OK
from app.diffop.compile import compile_problem
from app.diffop.problem import DifferentialProblem
from app.exceptions import SpectralCountError
from app.models.result import RunResult
from app.models.run_config import RunConfig
from app.modes import RunContext, get_mode
from app.pencil.model import PencilModel, polynomial_model
from app.utils.logger import logger


def build_model(config: RunConfig) -> tuple[PencilModel, Optional[DifferentialProblem]]:
    """Pencil model of the configured problem, and the differential problem it came from."""
    problem = config.differential_problem()
    if problem is not None:
        return compile_problem(problem), problem
    abstract = config.problem.abstract
    model = polynomial_model(
        abstract.coefficients,
        lambda_interval=abstract.lambda_interval,
        mass=abstract.mass,
        notes=[f"degree {len(abstract.coefficients) - 1} polynomial family"],
    )
    return model, None


def run(config: RunConfig, output_directory: Optional[Path] = None) -> RunResult:
    """Execute one run.

    Args:
        config: Validated run configuration.
        output_directory: Overrides ``config.output.directory``.

    Returns:
        RunResult with exit status 0 on success, 2 when a counting rule whose hypotheses
        hold is contradicted, and 1 with ``error`` set when the run failed.
    """
    mode = get_mode(config.mode)
    directory = Path(output_directory or config.output.directory)
    logger.info(f"Starting {config.mode.value} run, output to {directory}")
    try:
        model, problem = build_model(config)
        context = RunContext(
            config=config, model=model, problem=problem, output_directory=directory
        )
        outcome = mode.execute(context)
    except (SpectralCountError, ValueError, OSError) as e:
        logger.error(f"{config.mode.value} run failed: {type(e).__name__}: {e}")
        return RunResult(mode=config.mode, exit_status=EXIT_ERROR, error=f"{type(e).__name__}: {e}")

    contradictions = [v for v in outcome.verdicts if v.is_contradiction]
    if contradictions:
        for verdict in contradictions:
            logger.warning(f"Counting contradiction: {verdict.rule.value}: {verdict.message}")
        exit_status = EXIT_COUNTING_CONTRADICTION
    else:
        exit_status = EXIT_OK
    logger.info(f"Finished {config.mode.value} run with exit status {exit_status}")
    return RunResult(mode=config.mode, exit_status=exit_status, outcome=outcome)
