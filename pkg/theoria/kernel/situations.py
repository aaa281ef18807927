"""
Situations: named base contexts and do(action, parent) successors.

Ids are canonical text:
    Base("sigma0")                               -> "sigma0"
    Do(audits(john_jones, acme), "sigma0")       -> "do__audits_john_jones_acme__sigma0"
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from theoria.kernel.literals import DO_FUNCTOR, do_term
from theoria.kernel.terms import Atom, Compound, Constant, Term, is_ground_atom
from theoria.utils.validation import (
    SUCCESSOR_PREFIX,
    ValidationError,
    is_constant_symbol,
)


@dataclass(frozen=True)
class Base:
    name: str


@dataclass(frozen=True)
class Do:
    action: Atom
    parent: str


Origin = Union[Base, Do]


def _term_slug(term: Term) -> str:
    if isinstance(term, Constant):
        return term.symbol
    if isinstance(term, Compound):
        return "_".join([term.functor] + [_term_slug(a) for a in term.args])
    raise ValidationError(f"successor situations require ground actions, got variable {term}")


def action_slug(action: Atom) -> str:
    """Flatten a ground action into one underscore-joined symbol."""
    return "_".join([action.predicate] + [_term_slug(a) for a in action.args])


@dataclass(frozen=True)
class Situation:
    id: str
    origin: Origin

    @classmethod
    def base(cls, name: str) -> "Situation":
        origin = Base(name)
        return cls(canonical_situation_id(origin), origin)

    @classmethod
    def successor(cls, action: Atom, parent: str) -> "Situation":
        origin = Do(action, parent)
        return cls(canonical_situation_id(origin), origin)

    @property
    def parent(self) -> Optional[str]:
        return self.origin.parent if isinstance(self.origin, Do) else None

    @property
    def action(self) -> Optional[Atom]:
        return self.origin.action if isinstance(self.origin, Do) else None

    def as_term(self) -> Term:
        return Constant(self.id)

    def structural_term(self) -> Term:
        """do(action, parent_id) for successors; the id constant for bases."""
        if isinstance(self.origin, Do):
            return do_term(self.origin.action, Constant(self.origin.parent))
        return Constant(self.id)


def canonical_situation_id(situation: Union[Situation, Origin]) -> str:
    """
    Deterministic id of a situation.

    Raises:
        ValidationError: non-ground action, or a base name that is not a
            constant / collides with the successor prefix
    """
    origin = situation.origin if isinstance(situation, Situation) else situation
    if isinstance(origin, Base):
        if not is_constant_symbol(origin.name) or origin.name.startswith(SUCCESSOR_PREFIX):
            raise ValidationError(
                f"base situation name '{origin.name}' must be a constant not starting "
                f"with '{SUCCESSOR_PREFIX}'"
            )
        return origin.name
    if not is_ground_atom(origin.action):
        raise ValidationError(f"successor situations require ground actions, got {origin.action}")
    return f"{SUCCESSOR_PREFIX}{action_slug(origin.action)}__{origin.parent}"


def parse_situation_id(situation_id: str) -> Optional[Tuple[str, str]]:
    """
    Split a successor id into (action slug, parent id); None for base ids.

    Exact inverse of canonical_situation_id when no symbol in the action
    contains a double underscore.
    """
    if not situation_id.startswith(SUCCESSOR_PREFIX):
        return None
    rest = situation_id[len(SUCCESSOR_PREFIX):]
    slug, sep, parent = rest.partition("__")
    if not sep or not slug or not parent:
        raise ValidationError(f"malformed successor id '{situation_id}'")
    return slug, parent


def is_do_term(term: Term) -> bool:
    return isinstance(term, Compound) and term.functor == DO_FUNCTOR and term.arity == 2
