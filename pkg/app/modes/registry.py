"""Mode registry mapping run modes to their implementations."""

from typing import Type

from app.constants import RunMode
from app.modes.base_mode import BaseMode
from app.modes.branches import BranchesMode
from app.modes.count import CountMode
from app.modes.nu_scan import NuScanMode
from app.modes.verify import VerifyMode
from app.utils.logger import logger

# Mode registry mapping run modes to their classes
MODE_REGISTRY: dict[RunMode, Type[BaseMode]] = {
    RunMode.NU_SCAN: NuScanMode,
    RunMode.BRANCHES: BranchesMode,
    RunMode.COUNT: CountMode,
    RunMode.VERIFY: VerifyMode,
}

# Mode instances cache (one per mode)
_mode_instances: dict[RunMode, BaseMode] = {}


def get_mode(mode: RunMode | str) -> BaseMode:
    """Get or create the mode instance for a run mode."""
    try:
        mode = RunMode(mode)
    except ValueError:
        raise ValueError(f"Unknown mode: {mode}") from None
    if mode not in _mode_instances:
        if mode not in MODE_REGISTRY:
            raise ValueError(f"Unknown mode: {mode.value}")
        _mode_instances[mode] = MODE_REGISTRY[mode]()
        logger.debug(f"Created mode instance: {mode.value}")
    return _mode_instances[mode]


def get_available_modes() -> list[str]:
    """Names of the registered modes."""
    return [mode.value for mode in MODE_REGISTRY]


def register_mode(mode: RunMode, mode_class: Type[BaseMode]) -> None:
    """Register or replace the implementation of a mode."""
    if mode in MODE_REGISTRY:
        logger.warning(f"Mode {mode.value} already registered. Overwriting.")
    MODE_REGISTRY[mode] = mode_class
    _mode_instances.pop(mode, None)
    logger.info(f"Registered mode: {mode.value}")
