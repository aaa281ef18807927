"""Error hierarchy and lexical validation helpers."""

import re
from typing import Iterable, Optional


CONSTANT_PATTERN = re.compile(r"^[a-z][a-z0-9_]*$")
VARIABLE_PATTERN = re.compile(r"^[A-Z][A-Za-z0-9_]*$")

# Prefix reserved for Skolem functors generated by the compiler.
SKOLEM_PREFIX = "sk_"
# Prefix of successor situation ids.
SUCCESSOR_PREFIX = "do__"


class TheoriaError(Exception):
    """Base class for all engine errors."""
    pass


class ValidationError(TheoriaError):
    """Invariant violation on kernel values, stores or configuration."""
    pass


class ParseError(ValidationError):
    """Syntax or static-check error located in source text."""

    def __init__(
        self,
        message: str,
        line: int = 0,
        column: int = 0,
        expected: Optional[Iterable[str]] = None,
        path: str = "<input>",
    ):
        self.message = message
        self.line = line
        self.column = column
        self.expected = sorted(set(expected or ()))
        self.path = path
        super().__init__(self.render())

    def render(self) -> str:
        text = f"{self.path}:{self.line}:{self.column}: {self.message}"
        if self.expected:
            text += f" (expected: {', '.join(self.expected)})"
        return text


class StratificationError(TheoriaError):
    """Negative dependency cycle among predicates."""

    def __init__(self, cycle: Iterable[str]):
        self.cycle = sorted(set(cycle))
        super().__init__(f"negative cycle: {', '.join(self.cycle)}")


class IngestionError(ValidationError):
    """Bad table data; row is 1-based over data rows (header excluded)."""

    def __init__(self, message: str, row: int = 0, column: str = ""):
        self.row = row
        self.column = column
        location = f"row {row}" if row else "header"
        if column:
            location += f", column '{column}'"
        super().__init__(f"{location}: {message}")


class UnknownBundleError(TheoriaError):
    """Requested bundle does not ship with the package."""
    pass


def is_constant_symbol(symbol: str) -> bool:
    """Instance convention: lower case, underscore for space."""
    return bool(CONSTANT_PATTERN.match(symbol))


def is_variable_name(name: str) -> bool:
    """Variables start with a capital letter."""
    return bool(VARIABLE_PATTERN.match(name))


def normalize_cell(value: str) -> str:
    """
    Normalize a table cell into a constant symbol.

    Trims, lowercases, collapses every run of characters outside [a-z0-9]
    into one underscore and strips leading/trailing underscores.

    Returns:
        Normalized symbol (may be empty or start with a digit; callers
        must check it with is_constant_symbol)
    """
    lowered = value.strip().lower()
    return re.sub(r"[^a-z0-9]+", "_", lowered).strip("_")


def validate_log_level(level: str) -> bool:
    return level.upper() in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
