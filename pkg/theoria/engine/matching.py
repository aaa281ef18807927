"""
One-way matching of rule patterns against ground facts and the situation
forest.

Bindings are plain dicts (Variable -> ground Term) while a join runs; they
are copied on extension so backtracking never has to undo anything.
Situation variables are always bound to the situation id constant.
"""

from typing import Dict, Iterator, Optional, Sequence, Tuple

from theoria.kernel import (
    Atom,
    Compound,
    Constant,
    Equality,
    Situation,
    Term,
    Variable,
    apply,
    is_do_term,
    is_ground,
)
from theoria.store import StoreSnapshot
from theoria.utils.validation import ValidationError

Binding = Dict[Variable, Term]


def match_term(pattern: Term, value: Term, binding: Binding) -> Optional[Binding]:
    """Extend binding so that pattern instantiates to the ground value."""
    if isinstance(pattern, Variable):
        bound = binding.get(pattern)
        if bound is None:
            extended = dict(binding)
            extended[pattern] = value
            return extended
        return binding if bound == value else None
    if isinstance(pattern, Constant):
        return binding if pattern == value else None
    if not isinstance(value, Compound):
        return None
    if pattern.functor != value.functor or pattern.arity != value.arity:
        return None
    current: Optional[Binding] = binding
    for sub_pattern, sub_value in zip(pattern.args, value.args):
        current = match_term(sub_pattern, sub_value, current)
        if current is None:
            return None
    return current


def match_atom(pattern: Atom, value: Atom, binding: Binding) -> Optional[Binding]:
    if pattern.signature != value.signature:
        return None
    current: Optional[Binding] = binding
    for sub_pattern, sub_value in zip(pattern.args, value.args):
        current = match_term(sub_pattern, sub_value, current)
        if current is None:
            return None
    return current


def situation_id_of(term: Term) -> Optional[str]:
    """Canonical id named by a ground situation term, or None if it names none."""
    if isinstance(term, Constant):
        return term.symbol
    if is_do_term(term):
        parent = situation_id_of(term.args[1])
        if parent is None:
            return None
        try:
            return Situation.successor(Atom.from_term(term.args[0]), parent).id
        except ValidationError:
            return None
    return None


def match_situation(
    pattern: Term,
    sid: str,
    binding: Binding,
    snapshot: StoreSnapshot,
) -> Optional[Binding]:
    """
    Extend binding so that the situation pattern denotes situation sid.

    do(action, parent) patterns are matched structurally against the forest:
    the action against the successor's action, the parent recursively.
    """
    if isinstance(pattern, Variable):
        bound = binding.get(pattern)
        if bound is None:
            extended = dict(binding)
            extended[pattern] = Constant(sid)
            return extended
        return binding if situation_id_of(bound) == sid else None
    if isinstance(pattern, Constant):
        return binding if pattern.symbol == sid else None
    if is_do_term(pattern):
        situation = snapshot.situations.get(sid)
        if situation is None or situation.action is None:
            return None
        extended = match_term(pattern.args[0], situation.action.as_term(), binding)
        if extended is None:
            return None
        return match_situation(pattern.args[1], situation.parent, extended, snapshot)
    return None


def situation_candidates(term: Term, binding: Binding, scope: Sequence[str]) -> Sequence[str]:
    """Situations a literal's situation term may denote under binding."""
    applied = apply(binding, term)
    if is_ground(applied):
        sid = situation_id_of(applied)
        return (sid,) if sid in scope else ()
    return scope


def eval_equality(
    literal: Equality,
    binding: Binding,
    scope: Sequence[str],
    snapshot: StoreSnapshot,
) -> Iterator[Tuple[str, Binding]]:
    """
    Solutions of a situation equality: (situation id, extended binding).

    A ground side fixes the situation; otherwise every situation in scope
    is tried, in scope order.
    """
    lhs = apply(binding, literal.lhs)
    rhs = apply(binding, literal.rhs)
    if is_ground(lhs):
        candidates = situation_candidates(lhs, {}, scope)
    elif is_ground(rhs):
        candidates = situation_candidates(rhs, {}, scope)
    else:
        candidates = scope
    for sid in candidates:
        left = match_situation(literal.lhs, sid, binding, snapshot)
        if left is None:
            continue
        both = match_situation(literal.rhs, sid, left, snapshot)
        if both is not None:
            yield sid, both
