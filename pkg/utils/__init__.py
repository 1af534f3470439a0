"""
Utils package for RepLab - shared configuration, logging and exact-arithmetic helpers
"""

from .config import LabSettings, get_settings, override_settings, use_settings, check_dimension_cap
from .logging_setup import get_logger, log_event, set_log_level
from .exact import ceil_log2, format_rational, format_decimal
from .errors import (
    LabError,
    DimensionCapError,
    BasisConstructionError,
    IntertwinerError,
    ProtocolError,
)

__all__ = [
    "LabSettings",
    "get_settings",
    "override_settings",
    "use_settings",
    "check_dimension_cap",
    "get_logger",
    "log_event",
    "set_log_level",
    "ceil_log2",
    "format_rational",
    "format_decimal",
    "LabError",
    "DimensionCapError",
    "BasisConstructionError",
    "IntertwinerError",
    "ProtocolError",
]
