"""Utility functions and helpers.

This module provides common utilities used throughout the system:
- Logging configuration
- The error hierarchy
- Lexical validation and table-cell normalization

Usage:
    from theoria.utils import setup_logging, ParseError, normalize_cell

    setup_logging(debug_mode=True)
    normalize_cell("Principles Oriented")  # -> "principles_oriented"
"""

from theoria.utils.logging_config import setup_logging
from theoria.utils.validation import (
    SKOLEM_PREFIX,
    SUCCESSOR_PREFIX,
    IngestionError,
    ParseError,
    StratificationError,
    TheoriaError,
    UnknownBundleError,
    ValidationError,
    is_constant_symbol,
    is_variable_name,
    normalize_cell,
    validate_log_level,
)

__all__ = [
    # Logging
    "setup_logging",

    # Errors
    "TheoriaError",
    "ValidationError",
    "ParseError",
    "StratificationError",
    "IngestionError",
    "UnknownBundleError",

    # Validation
    "SKOLEM_PREFIX",
    "SUCCESSOR_PREFIX",
    "is_constant_symbol",
    "is_variable_name",
    "normalize_cell",
    "validate_log_level",
]
