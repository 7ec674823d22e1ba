"""Utility functions for reading JSON documents."""

import json
from pathlib import Path
from typing import Any, Union

from app.exceptions import ConfigError
from app.utils.logger import logger


def parse_json_document(text: str, source: str = "<string>") -> Any:
    """Parse JSON text, reporting syntax errors with line and column.

    Args:
        text: Document text.
        source: Name used in error messages.

    Raises:
        ConfigError: Malformed JSON, with 1-based line and column.
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"invalid JSON in {source}: {e.msg}", line=e.lineno, column=e.colno
        ) from e


def load_json_document(path: Union[str, Path]) -> Any:
    """Read and parse a JSON file.

    Raises:
        ConfigError: The file cannot be read or is not valid JSON.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror or e}") from e
    logger.debug(f"Read {len(text)} bytes from {path}")
    return parse_json_document(text, str(path))


def set_key_path(document: dict[str, Any], key_path: str, value: Any) -> None:
    """Set ``document[k1][k2]...`` for a dotted key path, creating missing objects."""
    keys = key_path.split(".")
    node = document
    for key in keys[:-1]:
        child = node.get(key)
        if not isinstance(child, dict):
            child = {}
            node[key] = child
        node = child
    node[keys[-1]] = value
