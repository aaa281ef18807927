"""The .onto ontology language: lexer, parser and printer.

Usage:
    from theoria.dsl import parse_program, print_program

    program = parse_program(text, path="auditor.onto")
    ontology = program.to_ontology()
"""

from theoria.dsl.lexer import Token, tokenize
from theoria.dsl.parser import (
    Parser,
    parse_body,
    parse_literal,
    parse_program,
    parse_situation_term,
    parse_term,
)
from theoria.dsl.printer import print_body, print_item, print_literal, print_program
from theoria.dsl.program import GroundFact, Item, SourceProgram

__all__ = [
    "Token",
    "tokenize",
    "Parser",
    "parse_program",
    "parse_body",
    "parse_literal",
    "parse_situation_term",
    "parse_term",
    "print_program",
    "print_item",
    "print_body",
    "print_literal",
    "GroundFact",
    "Item",
    "SourceProgram",
]
