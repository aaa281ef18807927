"""Command-line interface.

Usage:
    from theoria.cli import main

    status = main(["query", "holds(auditor(A), S)", "--builtin", "auditor"])
"""

from theoria.cli.app import (
    EXIT_EXPECTATION,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    build_parser,
    load_program,
    main,
)
from theoria.cli.repl import Repl

__all__ = [
    "main",
    "build_parser",
    "load_program",
    "Repl",
    "EXIT_OK",
    "EXIT_EXPECTATION",
    "EXIT_USAGE",
    "EXIT_IO",
]
