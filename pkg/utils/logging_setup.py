"""
Logging Setup
Named loggers with the lab's formatter and an optional audit file handler.
"""

import json
import logging
import os
from typing import Any, Dict

from .config import get_settings

_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
_configured = set()


def get_logger(component: str) -> logging.Logger:
    """
    Get the logger for a lab component, configuring it on first use.

    Args:
        component: Short component name (e.g. 'Schur', 'RepMatch')

    Returns:
        Logger named 'RepLab.<component>'
    """
    name = f"RepLab.{component}"
    logger = logging.getLogger(name)
    if name in _configured:
        return logger

    settings = get_settings()
    logger.setLevel(getattr(logging, settings.log_level.upper(), logging.INFO))
    formatter = logging.Formatter(_FORMAT)

    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(logging.WARNING)
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    try:
        log_dir = os.path.dirname(settings.log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(settings.log_file)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    except OSError as e:
        print(f"Warning: Could not setup file logging for {name}: {e}")

    logger.propagate = False
    _configured.add(name)
    return logger


def log_event(logger: logging.Logger, event: str, level: int = logging.INFO, **fields: Any):
    """
    Log one JSON-encoded record.

    Args:
        logger: Target logger
        event: Event name
        level: Logging level
        **fields: Record payload (non-JSON values are stringified)
    """
    entry: Dict[str, Any] = {"event": event}
    entry.update(fields)
    logger.log(level, json.dumps(entry, default=str))


def set_log_level(level: str):
    """Change the level of every lab logger configured so far."""
    numeric = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level '{level}'")
    for name in _configured:
        logging.getLogger(name).setLevel(numeric)
