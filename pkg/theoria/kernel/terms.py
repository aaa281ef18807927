"""
Terms and atoms: the symbol trees every formula is built from.

Lexical conventions:
    constants / functors / predicates   lower case, underscore for space
    variables                           start with a capital letter

Skolem functors (``sk_<axiom>_<Var>``) are the one exception to the
lower-case rule; they are generated by the compiler and never parsed from
user programs.
"""

import re
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

from theoria.utils.validation import (
    SKOLEM_PREFIX,
    ValidationError,
    is_constant_symbol,
    is_variable_name,
)

_SKOLEM_PATTERN = re.compile(r"^sk_[A-Za-z0-9_]+$")


def _check_symbol(symbol: str, what: str) -> None:
    if is_constant_symbol(symbol):
        return
    if symbol.startswith(SKOLEM_PREFIX) and _SKOLEM_PATTERN.match(symbol):
        return
    raise ValidationError(f"{what} '{symbol}' must match [a-z][a-z0-9_]*")


@dataclass(frozen=True)
class Constant:
    symbol: str

    def __post_init__(self):
        _check_symbol(self.symbol, "constant")

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        if not is_variable_name(self.name):
            raise ValidationError(f"variable '{self.name}' must match [A-Z][A-Za-z0-9_]*")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compound:
    functor: str
    args: Tuple["Term", ...]

    def __post_init__(self):
        _check_symbol(self.functor, "functor")
        if not self.args:
            raise ValidationError(f"compound '{self.functor}' needs at least one argument")

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        return f"{self.functor}({', '.join(str(a) for a in self.args)})"


Term = Union[Constant, Variable, Compound]


@dataclass(frozen=True)
class Atom:
    """Predicate applied to arguments; arity 0 prints as the bare predicate."""
    predicate: str
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        if not is_constant_symbol(self.predicate):
            raise ValidationError(f"predicate '{self.predicate}' must match [a-z][a-z0-9_]*")

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def signature(self) -> Tuple[str, int]:
        return (self.predicate, len(self.args))

    def as_term(self) -> Term:
        """View the atom as a term (used inside do(...) and clips(...))."""
        if not self.args:
            return Constant(self.predicate)
        return Compound(self.predicate, self.args)

    @classmethod
    def from_term(cls, term: Term) -> "Atom":
        if isinstance(term, Constant):
            return cls(term.symbol)
        if isinstance(term, Compound):
            return cls(term.functor, term.args)
        raise ValidationError(f"variable '{term}' cannot stand for an atom")

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(str(a) for a in self.args)})"


def term_variables(term: Term) -> Iterator[Variable]:
    """Yield variables left to right, with repeats."""
    if isinstance(term, Variable):
        yield term
    elif isinstance(term, Compound):
        for arg in term.args:
            yield from term_variables(arg)


def atom_variables(atom: Atom) -> Iterator[Variable]:
    for arg in atom.args:
        yield from term_variables(arg)


def is_ground(term: Term) -> bool:
    return next(term_variables(term), None) is None


def is_ground_atom(atom: Atom) -> bool:
    return next(atom_variables(atom), None) is None


def occurs_in(var: Variable, term: Term) -> bool:
    if isinstance(term, Variable):
        return term == var
    if isinstance(term, Compound):
        return any(occurs_in(var, arg) for arg in term.args)
    return False


def term_text(term: Term) -> str:
    """Canonical text, used for deterministic ordering everywhere."""
    return str(term)
