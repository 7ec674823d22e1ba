"""Configuration management."""

import logging
from pathlib import Path
from typing import Any, Optional

import yaml

# Plain logging: the application logger is configured from these files
_logger = logging.getLogger(__name__)

CONFIG_FILE = Path(__file__).parent / "config.yaml"


def load_config_file(path: Path = CONFIG_FILE) -> dict[str, Any]:
    """Load the YAML defaults file.

    Returns:
        Parsed document, or an empty dictionary when the file is missing or unreadable.
    """
    if not path.exists():
        _logger.warning(f"Config file not found: {path}. Using defaults.")
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        _logger.warning(f"Failed to load config from {path}: {e}")
        return {}


def load_config_section(
    section: str,
    defaults: Optional[dict[str, Any]] = None,
    path: Path = CONFIG_FILE,
) -> dict[str, Any]:
    """Load one section of the defaults file merged over ``defaults``.

    Args:
        section: Top-level key such as ``numerics`` or ``logging``.
        defaults: Values used for keys the file does not set.
        path: YAML file to read.
    """
    merged = dict(defaults or {})
    section_data = load_config_file(path).get(section) or {}
    if not isinstance(section_data, dict):
        _logger.warning(f"Section {section!r} of {path} is not a mapping; ignored")
        return merged
    merged.update(section_data)
    return merged
