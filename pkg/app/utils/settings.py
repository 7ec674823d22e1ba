"""Singleton SettingsManager using dynaconf for configuration management."""

import logging
from typing import Optional

from dynaconf import Dynaconf
from dynaconf import Validator

from app.config import CONFIG_FILE, load_config_section

# Use basic logging to avoid circular dependency with logger module
_logger = logging.getLogger(__name__)


class SettingsManager:
    """Singleton settings manager using dynaconf."""

    _instance: Optional["SettingsManager"] = None
    _settings: Optional[Dynaconf] = None

    def __new__(cls) -> "SettingsManager":
        """Create or return existing SettingsManager instance."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        """Initialize settings if not already initialized."""
        if self._settings is None:
            self._setup_settings()

    def _setup_settings(self) -> None:
        """Set up dynaconf settings."""
        try:
            numerics = load_config_section("numerics")
            parallel = load_config_section("parallel")
            logging_config = load_config_section("logging")
            output_config = load_config_section("output")
            _logger.info(f"Loaded defaults from {CONFIG_FILE}")

            self._settings = Dynaconf(
                envvar_prefix="SPECTRAL_COUNT",
                settings_files=[],
                environments=False,
                load_dotenv=True,
                dotenv_path=".env",
                validators=[
                    # Numerics
                    Validator("EIGEN_SOLVER", default=numerics.get("eigen_solver", "lapack")),
                    Validator(
                        "INERTIA_ZERO_TOL",
                        default=numerics.get("inertia_zero_tol", 1e-9),
                        cast=float,
                    ),
                    Validator("ZERO_TOL", default=numerics.get("zero_tol", 1e-7), cast=float),
                    Validator("ONE_TOL", default=numerics.get("one_tol", 1e-8), cast=float),
                    Validator("CLUSTER_TOL", default=numerics.get("cluster_tol", 1e-6), cast=float),
                    Validator("MESH", default=numerics.get("mesh", 64), cast=int),
                    Validator("GRID_STEPS", default=numerics.get("grid_steps", 101), cast=int),
                    Validator("SCAN_STEP", default=numerics.get("scan_step", 0.05), cast=float),
                    Validator(
                        "MAX_BISECTION_ITERATIONS",
                        default=numerics.get("max_bisection_iterations", 200),
                        cast=int,
                    ),
                    Validator(
                        "NEGATIVE_TYPE_PROBES",
                        default=numerics.get("negative_type_probes", 8),
                        cast=int,
                    ),
                    Validator(
                        "MONOTONE_SAMPLES", default=numerics.get("monotone_samples", 9), cast=int
                    ),
                    Validator(
                        "RANDOM_SEED", default=numerics.get("random_seed", 20240613), cast=int
                    ),
                    # Parallelism (SPECTRAL_COUNT_THREADS)
                    Validator("THREADS", default=parallel.get("threads", 0), cast=int),
                    # Logging
                    Validator("LOG_LEVEL", default=logging_config.get("level", "INFO")),
                    Validator(
                        "LOG_FILE_ENABLED",
                        default=logging_config.get("file_enabled", False),
                        cast=bool,
                    ),
                    Validator("LOG_DIRECTORY", default=logging_config.get("directory", "logs")),
                    # Output settings
                    Validator("OUTPUT_DIRECTORY", default=output_config.get("directory", "output")),
                ],
            )
            _logger.info("SettingsManager initialized successfully")
        except Exception as e:
            _logger.error(f"Failed to initialize SettingsManager: {e}")
            raise

    @property
    def EIGEN_SOLVER(self) -> str:
        """Get default Hermitian eigensolver name."""
        return self._settings.EIGEN_SOLVER

    @property
    def INERTIA_ZERO_TOL(self) -> float:
        """Get relative zero band for matrix inertia."""
        return self._settings.INERTIA_ZERO_TOL

    @property
    def ZERO_TOL(self) -> float:
        """Get relative zero band for branch roots."""
        return self._settings.ZERO_TOL

    @property
    def ONE_TOL(self) -> float:
        """Get tolerance for eigenvalues of U equal to 1."""
        return self._settings.ONE_TOL

    @property
    def CLUSTER_TOL(self) -> float:
        """Get root merging tolerance."""
        return self._settings.CLUSTER_TOL

    @property
    def MESH(self) -> int:
        """Get default mesh size."""
        return self._settings.MESH

    @property
    def GRID_STEPS(self) -> int:
        """Get default lambda grid size."""
        return self._settings.GRID_STEPS

    @property
    def SCAN_STEP(self) -> float:
        """Get default root scanning step."""
        return self._settings.SCAN_STEP

    @property
    def MAX_BISECTION_ITERATIONS(self) -> int:
        """Get bisection budget per root."""
        return self._settings.MAX_BISECTION_ITERATIONS

    @property
    def NEGATIVE_TYPE_PROBES(self) -> int:
        """Get number of random probes of the negative-type check."""
        return self._settings.NEGATIVE_TYPE_PROBES

    @property
    def MONOTONE_SAMPLES(self) -> int:
        """Get sample count of the monotonicity check."""
        return self._settings.MONOTONE_SAMPLES

    @property
    def RANDOM_SEED(self) -> int:
        """Get seed of random probes."""
        return self._settings.RANDOM_SEED

    @property
    def THREADS(self) -> int:
        """Get worker thread cap (0 = available parallelism)."""
        return self._settings.THREADS

    @property
    def LOG_LEVEL(self) -> str:
        """Get log level."""
        return self._settings.LOG_LEVEL

    @property
    def LOG_FILE_ENABLED(self) -> bool:
        """Get whether log files are written."""
        return self._settings.LOG_FILE_ENABLED

    @property
    def LOG_DIRECTORY(self) -> str:
        """Get log directory path."""
        return self._settings.LOG_DIRECTORY

    @property
    def OUTPUT_DIRECTORY(self) -> str:
        """Get output directory path."""
        return self._settings.OUTPUT_DIRECTORY

    def get(self, key: str, default: Optional[str] = None) -> Optional[str]:
        """Get a setting value by key."""
        return getattr(self._settings, key, default)


# Create module-level instance
settings = SettingsManager()


def get_settings() -> SettingsManager:
    """Get the singleton SettingsManager instance."""
    return settings
