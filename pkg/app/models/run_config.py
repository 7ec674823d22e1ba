"""Run configuration files: what to compute and where to write it."""

import math
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from app.constants import RunMode
from app.diffop.problem import DifferentialProblem
from app.exceptions import ConfigError
from app.models.matrix_types import Matrix
from app.models.report import CountOptions
from app.utils.json_utils import load_json_document, set_key_path
from app.utils.logger import logger
from app.utils.settings import settings


class LambdaGrid(BaseModel):
    """Uniform parameter grid for nu scans and branch tables."""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    steps: int = Field(
        default_factory=lambda: settings.GRID_STEPS, ge=2, description="Number of grid points"
    )

    @model_validator(mode="after")
    def _check_order(self) -> "LambdaGrid":
        if not self.start < self.stop:
            raise ValueError(f"start must be below stop, got {self.start} and {self.stop}")
        return self

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


class Tolerances(BaseModel):
    """Overrides of the numerical defaults; unset entries come from settings."""

    model_config = ConfigDict(frozen=True)

    zero_tol: Optional[float] = Field(default=None, gt=0)
    inertia_zero_tol: Optional[float] = Field(default=None, gt=0)
    one_tol: Optional[float] = Field(default=None, gt=0)
    cluster_tol: Optional[float] = Field(default=None, gt=0)


class OutputSpec(BaseModel):
    """Where artifacts go; files are named ``<prefix>_<mode>.csv`` and ``.txt``."""

    model_config = ConfigDict(frozen=True)

    directory: str = Field(default_factory=lambda: settings.OUTPUT_DIRECTORY)
    prefix: str = Field(default="run", min_length=1)


class AbstractProblem(BaseModel):
    """Polynomial family F(lambda) = sum_k C_k lambda^k with a constant mass matrix."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: list[Matrix] = Field(..., min_length=1, description="Hermitian C_0, C_1, ...")
    mass: Optional[Matrix] = Field(
        default=None, description="Positive definite mass; identity when absent"
    )
    lambda_interval: tuple[float, float] = Field(default=(-math.inf, math.inf))


class ProblemSpec(BaseModel):
    """Exactly one of an abstract family or a differential problem."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    abstract: Optional[AbstractProblem] = None
    differential: Optional[DifferentialProblem] = None

    @model_validator(mode="after")
    def _check_one(self) -> "ProblemSpec":
        if (self.abstract is None) == (self.differential is None):
            raise ValueError("give exactly one of 'abstract' and 'differential'")
        return self

    @property
    def lambda_interval(self) -> tuple[float, float]:
        source = self.abstract if self.abstract is not None else self.differential
        return source.lambda_interval


class RunConfig(BaseModel):
    """Validated run configuration."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mode: RunMode
    problem: ProblemSpec
    interval: Optional[tuple[float, float]] = Field(
        default=None, description="Counting interval [xi1, xi2)"
    )
    lambda_grid: Optional[LambdaGrid] = None
    tolerances: Tolerances = Field(default_factory=Tolerances)
    mesh: Optional[int] = Field(
        default=None, ge=2, description="Overrides the differential problem's mesh"
    )
    scan_step: Optional[float] = Field(default=None, gt=0, description="Root bracketing step")
    m_max: Optional[int] = Field(
        default=None, ge=1, description="Branches written by the branches mode"
    )
    convergence_levels: int = Field(
        default=0, ge=0, description="Mesh levels of a convergence study in verify mode"
    )
    output: OutputSpec = Field(default_factory=OutputSpec)

    @model_validator(mode="after")
    def _check_ranges(self) -> "RunConfig":
        sigma, tau = self.problem.lambda_interval
        if self.interval is not None:
            xi1, xi2 = self.interval
            if not xi1 < xi2:
                raise ConfigError(f"xi1 must be below xi2, got [{xi1}, {xi2})", key_path="interval")
            if not (sigma < xi1 and xi2 < tau):
                raise ConfigError(
                    f"interval not compactly inside lambda_interval ({sigma}, {tau})",
                    key_path="interval",
                )
        elif self.mode in (RunMode.COUNT, RunMode.VERIFY):
            raise ConfigError(f"required for mode {self.mode.value}", key_path="interval")
        if self.lambda_grid is not None:
            if not (sigma < self.lambda_grid.start and self.lambda_grid.stop < tau):
                raise ConfigError(
                    f"grid not compactly inside lambda_interval ({sigma}, {tau})",
                    key_path="lambda_grid",
                )
        elif self.interval is None:
            raise ConfigError(
                f"required for mode {self.mode.value} without an interval", key_path="lambda_grid"
            )
        if self.convergence_levels and self.problem.differential is None:
            raise ConfigError(
                "only differential problems have a mesh to refine", key_path="convergence_levels"
            )
        return self

    @property
    def lambda_interval(self) -> tuple[float, float]:
        return self.problem.lambda_interval

    def grid(self) -> np.ndarray:
        """Parameter grid: lambda_grid, or GRID_STEPS points spanning the interval."""
        if self.lambda_grid is not None:
            return self.lambda_grid.points()
        xi1, xi2 = self.interval
        return np.linspace(xi1, xi2, settings.GRID_STEPS)

    def count_options(self) -> CountOptions:
        """Tolerances for locating and counting, with defaults filled from settings."""
        updates: dict[str, Any] = {}
        for key in ("zero_tol", "inertia_zero_tol", "cluster_tol"):
            value = getattr(self.tolerances, key)
            if value is not None:
                updates[key] = value
        if self.scan_step is not None:
            updates["grid_step"] = self.scan_step
        return CountOptions(**updates)

    def differential_problem(self) -> Optional[DifferentialProblem]:
        """The differential problem with the mesh and one_tol overrides applied."""
        problem = self.problem.differential
        if problem is None:
            return None
        updates: dict[str, Any] = {}
        if self.mesh is not None:
            updates["mesh"] = self.mesh
        if self.tolerances.one_tol is not None:
            updates["one_tol"] = self.tolerances.one_tol
        return problem.model_copy(update=updates) if updates else problem


def _config_error(error: ValidationError) -> ConfigError:
    first = error.errors()[0]
    original = (first.get("ctx") or {}).get("error")
    if isinstance(original, ConfigError):
        return ConfigError(original.detail, key_path=original.key_path)
    key_path = ".".join(str(part) for part in first.get("loc", ())) or None
    message = first.get("msg", str(error)).removeprefix("Value error, ")
    return ConfigError(message, key_path=key_path)


def parse_config(document: Any) -> RunConfig:
    """Validate a parsed JSON document.

    Raises:
        ConfigError: Naming the key path of the first violation.
    """
    if not isinstance(document, dict):
        raise ConfigError("run configuration must be a JSON object")
    try:
        return RunConfig.model_validate(document)
    except ValidationError as e:
        raise _config_error(e) from e


def load_config(path: Union[str, Path], overrides: Optional[dict[str, Any]] = None) -> RunConfig:
    """Load and validate a run configuration file.

    Args:
        path: JSON file.
        overrides: Values by dotted key path (``mesh``, ``lambda_grid.steps``,
            ``output.directory``, ``mode``) applied before validation.

    Raises:
        ConfigError: Unreadable file, JSON syntax error (with line and column) or schema
            violation (with key path).
    """
    path = Path(path)
    document = load_json_document(path)
    if isinstance(document, dict):
        document.setdefault("output", {})
        if isinstance(document["output"], dict):
            document["output"].setdefault("prefix", path.stem)
        for key_path, value in (overrides or {}).items():
            if value is None:
                continue
            interval = document.get("interval")
            grid_missing = "lambda_grid" not in document and isinstance(interval, list)
            if key_path == "lambda_grid.steps" and grid_missing:
                # a grid over the counting interval
                document["lambda_grid"] = {"start": interval[0], "stop": interval[-1]}
            set_key_path(document, key_path, value)
    config = parse_config(document)
    logger.info(f"Loaded run configuration {path} (mode {config.mode.value})")
    return config
