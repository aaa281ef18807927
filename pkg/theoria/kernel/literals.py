"""
Literals: modal atomic formulas tied to a situation term.

    holds(atom, sit)        fluent (or rigid) atom is true in sit
    not holds(atom, sit)    negation-as-failure; only holds may be negated
    occurs(action, sit)     action happened in sit
    lhs = rhs               situation-term equality

A situation term is a Variable, a situation-id Constant, or the compound
``do(action, sit)``.
"""

from dataclasses import dataclass, replace
from typing import Iterator, Union

from theoria.kernel.terms import (
    Atom,
    Compound,
    Constant,
    Term,
    Variable,
    atom_variables,
    is_ground,
    is_ground_atom,
    term_variables,
)
from theoria.utils.validation import ValidationError

DO_FUNCTOR = "do"


def check_situation_term(term: Term) -> None:
    """Raise unless term is a Variable, Constant, or do(action, sit)."""
    if isinstance(term, (Variable, Constant)):
        return
    if isinstance(term, Compound) and term.functor == DO_FUNCTOR and term.arity == 2:
        action = term.args[0]
        if isinstance(action, Variable):
            raise ValidationError(f"action in '{term}' must be an atom, not a variable")
        check_situation_term(term.args[1])
        return
    raise ValidationError(f"'{term}' is not a situation term")


def do_term(action: Atom, situation: Term) -> Compound:
    return Compound(DO_FUNCTOR, (action.as_term(), situation))


@dataclass(frozen=True)
class Holds:
    atom: Atom
    situation: Term
    negated: bool = False

    def __post_init__(self):
        check_situation_term(self.situation)

    @property
    def predicate(self) -> str:
        return self.atom.predicate

    def positive(self) -> "Holds":
        return replace(self, negated=False)

    def at(self, situation: Term) -> "Holds":
        return replace(self, situation=situation)

    def __str__(self) -> str:
        text = f"holds({self.atom}, {self.situation})"
        return f"not {text}" if self.negated else text


@dataclass(frozen=True)
class Occurs:
    atom: Atom
    situation: Term

    def __post_init__(self):
        check_situation_term(self.situation)

    @property
    def negated(self) -> bool:
        return False

    @property
    def predicate(self) -> str:
        return self.atom.predicate

    def at(self, situation: Term) -> "Occurs":
        return replace(self, situation=situation)

    def __str__(self) -> str:
        return f"occurs({self.atom}, {self.situation})"


@dataclass(frozen=True)
class Equality:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        check_situation_term(self.lhs)
        check_situation_term(self.rhs)

    @property
    def negated(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


Literal = Union[Holds, Occurs, Equality]
FactLiteral = Union[Holds, Occurs]


def literal_variables(literal: Literal) -> Iterator[Variable]:
    if isinstance(literal, Equality):
        yield from term_variables(literal.lhs)
        yield from term_variables(literal.rhs)
        return
    yield from atom_variables(literal.atom)
    yield from term_variables(literal.situation)


def is_ground_literal(literal: Literal) -> bool:
    if isinstance(literal, Equality):
        return is_ground(literal.lhs) and is_ground(literal.rhs)
    return is_ground_atom(literal.atom) and is_ground(literal.situation)


def is_positive_atomic(literal: Literal) -> bool:
    """Positive holds/occurs: the literals that bind variables in a join."""
    return isinstance(literal, (Holds, Occurs)) and not literal.negated
