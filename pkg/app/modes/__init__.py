"""Run modes of the batch front end."""

from app.modes.base_mode import BaseMode, RunContext
from app.modes.registry import MODE_REGISTRY, get_available_modes, get_mode, register_mode

__all__ = [
    "BaseMode",
    "MODE_REGISTRY",
    "RunContext",
    "get_available_modes",
    "get_mode",
    "register_mode",
]
