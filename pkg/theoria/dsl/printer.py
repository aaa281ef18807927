"""Canonical pretty-printer; parse(print(p)) == p for every parsed program."""

from typing import Iterable

from theoria.dsl.program import GroundFact, Item, SourceProgram
from theoria.kernel import Axiom, Declaration, Literal, NamedQuery


def print_literal(literal: Literal) -> str:
    return str(literal)


def print_body(body: Iterable[Literal]) -> str:
    return " & ".join(print_literal(lit) for lit in body)


def print_item(item: Item) -> str:
    if isinstance(item, Declaration):
        return str(item)
    if isinstance(item, Axiom):
        universals = ", ".join(v.name for v in item.universals)
        head = print_literal(item.head)
        if item.head_existentials:
            head = f"exists {', '.join(v.name for v in item.head_existentials)}: {head}"
        return f"axiom {item.name}: forall {universals}: {print_body(item.body)} -> {head}."
    if isinstance(item, GroundFact):
        return f"fact {print_literal(item.literal)}."
    if isinstance(item, NamedQuery):
        text = f"query {item.name}: {print_body(item.body)}"
        if item.expect is not None:
            text += " expect sat" if item.expect else " expect unsat"
        return text + "."
    raise TypeError(f"cannot print {type(item).__name__}")


def print_program(program: SourceProgram) -> str:
    """One item per line, each ending in '.'."""
    return "".join(print_item(item) + "\n" for item in program.items)
