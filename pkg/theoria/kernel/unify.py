"""
Substitutions and most-general unification (Robinson, occurs-check on).

A Substitution is always kept in solved form: no bound variable occurs in
any binding, so applying it once is the same as applying it twice.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, TypeVar, Union

from theoria.kernel.literals import Equality, Holds, Literal, Occurs
from theoria.kernel.terms import Atom, Compound, Constant, Term, Variable, occurs_in
from theoria.utils.validation import ValidationError

Unifiable = Union[Term, Atom]
T = TypeVar("T", Term, Atom, Holds, Occurs, Equality)


def _substitute(term: Term, bindings: Mapping[Variable, Term]) -> Term:
    if isinstance(term, Variable):
        return bindings.get(term, term)
    if isinstance(term, Compound):
        return Compound(term.functor, tuple(_substitute(a, bindings) for a in term.args))
    return term


@dataclass(frozen=True)
class Substitution:
    """Immutable Variable -> Term map in solved form."""
    bindings: Tuple[Tuple[Variable, Term], ...] = ()
    _map: Dict[Variable, Term] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "bindings", tuple(sorted(self.bindings, key=lambda b: b[0].name)))
        object.__setattr__(self, "_map", dict(self.bindings))

    @classmethod
    def of(cls, mapping: Mapping[Variable, Term]) -> "Substitution":
        """
        Build a substitution, closing it under its own bindings.

        Raises:
            ValidationError: a variable would bind to a term containing itself
        """
        solved: Dict[Variable, Term] = {v: t for v, t in mapping.items() if v != t}
        for _ in range(len(solved) + 1):
            changed = False
            for var, term in list(solved.items()):
                new_term = _substitute(term, solved)
                if new_term != term:
                    solved[var] = new_term
                    changed = True
            if not changed:
                break
        for var, term in solved.items():
            if occurs_in(var, term):
                raise ValidationError(f"occurs-check: {var} in {term}")
        return cls(tuple(solved.items()))

    def get(self, var: Variable) -> Optional[Term]:
        return self._map.get(var)

    def __contains__(self, var: Variable) -> bool:
        return var in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self._map)

    def items(self):
        return self._map.items()

    def as_dict(self) -> Dict[Variable, Term]:
        return dict(self._map)

    def restrict(self, variables) -> "Substitution":
        keep = set(variables)
        return Substitution(tuple((v, t) for v, t in self.bindings if v in keep))

    def __str__(self) -> str:
        inner = ", ".join(f"{v} -> {t}" for v, t in self.bindings)
        return "{" + inner + "}"


EMPTY = Substitution()


def apply(subst: Union[Substitution, Mapping[Variable, Term]], target: T) -> T:
    """Replace every bound variable in a term, atom or literal."""
    bindings = subst._map if isinstance(subst, Substitution) else subst
    if not bindings:
        return target
    if isinstance(target, (Variable, Constant, Compound)):
        return _substitute(target, bindings)
    if isinstance(target, Atom):
        return Atom(target.predicate, tuple(_substitute(a, bindings) for a in target.args))
    if isinstance(target, Equality):
        return Equality(_substitute(target.lhs, bindings), _substitute(target.rhs, bindings))
    if isinstance(target, (Holds, Occurs)):
        return replace(
            target,
            atom=apply(bindings, target.atom),
            situation=_substitute(target.situation, bindings),
        )
    raise TypeError(f"cannot apply a substitution to {type(target).__name__}")


def compose(first: Substitution, second: Substitution) -> Substitution:
    """Substitution equivalent to applying first, then second."""
    combined = {v: apply(second, t) for v, t in first.items()}
    for var, term in second.items():
        combined.setdefault(var, term)
    return Substitution.of(combined)


def _as_term(x: Unifiable) -> Term:
    return x.as_term() if isinstance(x, Atom) else x


def unify(
    a: Unifiable,
    b: Unifiable,
    subst: Optional[Substitution] = None,
) -> Optional[Substitution]:
    """
    Most-general unifier of a and b, extending subst if given.

    Returns:
        Substitution, or None when the inputs do not unify (distinct
        constants, functor/arity clash, occurs-check).
    """
    if isinstance(a, Atom) != isinstance(b, Atom):
        return None
    if isinstance(a, Atom) and isinstance(b, Atom) and a.signature != b.signature:
        return None

    solved: Dict[Variable, Term] = subst.as_dict() if subst else {}
    equations: List[Tuple[Term, Term]] = [(_as_term(a), _as_term(b))]

    while equations:
        lhs, rhs = equations.pop()
        lhs = _substitute(lhs, solved)
        rhs = _substitute(rhs, solved)
        if lhs == rhs:
            continue
        if not isinstance(lhs, Variable) and isinstance(rhs, Variable):
            lhs, rhs = rhs, lhs
        if isinstance(lhs, Variable):
            if occurs_in(lhs, rhs):
                return None
            step = {lhs: rhs}
            solved = {v: _substitute(t, step) for v, t in solved.items()}
            solved[lhs] = rhs
            continue
        if isinstance(lhs, Compound) and isinstance(rhs, Compound):
            if lhs.functor != rhs.functor or lhs.arity != rhs.arity:
                return None
            equations.extend(zip(lhs.args, rhs.args))
            continue
        return None

    return Substitution(tuple(solved.items()))
