"""
JSON and file I/O helpers.

Verdicts and reports are written with orjson; non-finite floats become the
strings "Infinity", "-Infinity" and "NaN" because JSON has no literal for them.
"""

import logging
import math
from pathlib import Path
from typing import Any

import numpy as np
import orjson
from pydantic import BaseModel

from src.core.exceptions import ConfigurationError, OutputError

logger = logging.getLogger(__name__)


def _plain(value: Any) -> Any:
    """Convert models, arrays and non-finite floats into JSON-safe values."""
    if isinstance(value, BaseModel):
        return _plain(value.model_dump())
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, list | tuple | set | frozenset):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        return _plain(value.item())
    if isinstance(value, float) and not math.isfinite(value):
        if math.isnan(value):
            return "NaN"
        return "Infinity" if value > 0 else "-Infinity"
    return value


def dumps(payload: Any) -> str:
    """Serialize a payload as indented JSON text."""
    return orjson.dumps(_plain(payload), option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY).decode()


def load_json(path: str | Path) -> dict[str, Any]:
    """
    Read a JSON object from a file.

    Raises:
        ConfigurationError: If the file is missing, unreadable or not a JSON object
    """
    try:
        payload = orjson.loads(Path(path).read_bytes())
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}: {e}", data={"path": str(path)}) from e
    except orjson.JSONDecodeError as e:
        logger.error(f"Failed to parse JSON config {path}")
        raise ConfigurationError(f"Config file {path} is not valid JSON: {e}", data={"path": str(path)}) from e
    if not isinstance(payload, dict):
        raise ConfigurationError(f"Config file {path} must hold a JSON object", data={"path": str(path)})
    return payload


def write_text(path: str | Path, text: str) -> Path:
    """
    Write text to a file, creating no directories.

    Raises:
        OutputError: If the path cannot be written
    """
    target = Path(path)
    try:
        target.write_text(text, encoding="utf-8", newline="")
    except OSError as e:
        raise OutputError(f"Cannot write {target}: {e}", data={"path": str(target)}) from e
    logger.debug(f"Wrote {len(text)} characters to {target}")
    return target
