"""
Ontology structure: terminology (declarations), axioms, populated model
(ground facts) and formal competency questions.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from theoria.kernel.literals import (
    DO_FUNCTOR,
    Equality,
    FactLiteral,
    Holds,
    Literal,
    Occurs,
    is_ground_literal,
    is_positive_atomic,
    literal_variables,
)
from theoria.kernel.terms import Atom, Compound, Variable
from theoria.utils.validation import ValidationError

CLIPS_PREDICATE = "clips"


class PredicateKind(str, Enum):
    """fluent: inside holds; action: inside occurs/do; rigid: true everywhere."""
    FLUENT = "fluent"
    ACTION = "action"
    RIGID = "rigid"


@dataclass(frozen=True)
class Declaration:
    predicate: str
    arity: int
    kind: PredicateKind = PredicateKind.FLUENT

    def __str__(self) -> str:
        return f"decl {self.predicate}/{self.arity} kind {self.kind.value}."


# clips(Action, fluent_predicate) blocks inertia across do(Action, Sigma).
CLIPS_DECLARATION = Declaration(CLIPS_PREDICATE, 2, PredicateKind.FLUENT)


@dataclass(frozen=True)
class Axiom:
    name: str
    universals: Tuple[Variable, ...]
    head_existentials: Tuple[Variable, ...]
    body: Tuple[Literal, ...]
    head: Holds

    def variables(self) -> Tuple[Variable, ...]:
        return self.universals + self.head_existentials


@dataclass(frozen=True)
class NamedQuery:
    """Formal competency question; expect is True (sat), False (unsat) or None."""
    name: str
    body: Tuple[Literal, ...]
    expect: Optional[bool] = None


def _positive_variables(body: Iterable[Literal]) -> set:
    bound = set()
    for literal in body:
        if is_positive_atomic(literal):
            bound.update(literal_variables(literal))
    return bound


def check_axiom(axiom: Axiom) -> None:
    """
    Enforce the static shape of an axiom.

    Raises:
        ValidationError: empty body, negated head, unquantified variable,
            existential outside the head, or a range-restriction violation
    """
    if not axiom.body:
        raise ValidationError(f"axiom {axiom.name}: body must not be empty")
    if axiom.head.negated:
        raise ValidationError(f"axiom {axiom.name}: head must be a positive holds literal")

    universals = set(axiom.universals)
    existentials = set(axiom.head_existentials)
    if universals & existentials:
        raise ValidationError(
            f"axiom {axiom.name}: variables quantified twice: "
            f"{', '.join(sorted(v.name for v in universals & existentials))}"
        )

    body_vars = set()
    for literal in axiom.body:
        body_vars.update(literal_variables(literal))
    head_vars = set(literal_variables(axiom.head))

    stray = (body_vars | head_vars) - universals - existentials
    if stray:
        raise ValidationError(
            f"axiom {axiom.name}: unquantified variables {', '.join(sorted(v.name for v in stray))}"
        )
    leaked = body_vars & existentials
    if leaked:
        raise ValidationError(
            f"axiom {axiom.name}: existential variables used in body: "
            f"{', '.join(sorted(v.name for v in leaked))}"
        )

    positive = _positive_variables(axiom.body)
    needed = (head_vars - existentials)
    for literal in axiom.body:
        if isinstance(literal, Equality) or literal.negated:
            needed.update(literal_variables(literal))
    unsafe = needed - positive
    if unsafe:
        raise ValidationError(
            f"axiom {axiom.name}: not range-restricted, "
            f"{', '.join(sorted(v.name for v in unsafe))} never bound by a positive literal"
        )


def check_query_body(name: str, body: Tuple[Literal, ...]) -> None:
    """Queries follow the same safety rule as axiom bodies."""
    if not body:
        raise ValidationError(f"query {name}: body must not be empty")
    positive = _positive_variables(body)
    needed = set()
    for literal in body:
        if isinstance(literal, Equality) or literal.negated:
            needed.update(literal_variables(literal))
    unsafe = needed - positive
    if unsafe:
        raise ValidationError(
            f"query {name}: {', '.join(sorted(v.name for v in unsafe))} "
            f"never bound by a positive literal"
        )


@dataclass(frozen=True)
class Ontology:
    declarations: Tuple[Declaration, ...] = ()
    axioms: Tuple[Axiom, ...] = ()
    ground_facts: Tuple[FactLiteral, ...] = ()
    queries: Tuple[NamedQuery, ...] = ()
    _by_predicate: Dict[str, Declaration] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        table: Dict[str, Declaration] = {CLIPS_PREDICATE: CLIPS_DECLARATION}
        for decl in self.declarations:
            existing = table.get(decl.predicate)
            if existing and existing != decl:
                raise ValidationError(
                    f"predicate {decl.predicate} declared as {existing.predicate}/{existing.arity} "
                    f"({existing.kind.value}) and {decl.predicate}/{decl.arity} ({decl.kind.value})"
                )
            table[decl.predicate] = decl
        object.__setattr__(self, "_by_predicate", table)

        seen = set()
        for axiom in self.axioms:
            if axiom.name in seen:
                raise ValidationError(f"duplicate axiom name '{axiom.name}'")
            seen.add(axiom.name)
        seen_queries = set()
        for query in self.queries:
            if query.name in seen_queries:
                raise ValidationError(f"duplicate query name '{query.name}'")
            seen_queries.add(query.name)
        for fact in self.ground_facts:
            if not is_ground_literal(fact):
                raise ValidationError(f"fact {fact} is not ground")

    def declaration(self, predicate: str) -> Optional[Declaration]:
        return self._by_predicate.get(predicate)

    def kind_of(self, predicate: str) -> Optional[PredicateKind]:
        decl = self._by_predicate.get(predicate)
        return decl.kind if decl else None

    def axiom(self, name: str) -> Optional[Axiom]:
        return next((a for a in self.axioms if a.name == name), None)

    def query(self, name: str) -> Optional[NamedQuery]:
        return next((q for q in self.queries if q.name == name), None)

    def merge(self, other: "Ontology") -> "Ontology":
        """Union of two ontologies; identical re-declarations are allowed."""
        declarations: List[Declaration] = list(self.declarations)
        for decl in other.declarations:
            if decl not in declarations:
                declarations.append(decl)
        return Ontology(
            declarations=tuple(declarations),
            axioms=self.axioms + other.axioms,
            ground_facts=self.ground_facts + tuple(
                f for f in other.ground_facts if f not in self.ground_facts
            ),
            queries=self.queries + other.queries,
        )


def check_literal_kinds(literal: Literal, ontology: Ontology) -> None:
    """
    Check predicate declaration, arity and kind of one literal.

    Raises:
        ValidationError: undeclared predicate, arity mismatch, or a fluent in
            occurs / an action in holds
    """
    if isinstance(literal, Equality):
        return
    atom = literal.atom
    decl = ontology.declaration(atom.predicate)
    if decl is None:
        raise ValidationError(f"undeclared predicate {atom.predicate}/{atom.arity}")
    if decl.arity != atom.arity:
        raise ValidationError(
            f"predicate {atom.predicate} declared with arity {decl.arity}, used with {atom.arity}"
        )
    if isinstance(literal, Holds) and decl.kind == PredicateKind.ACTION:
        raise ValidationError(f"action {atom.predicate} cannot appear inside holds")
    if isinstance(literal, Occurs) and decl.kind != PredicateKind.ACTION:
        raise ValidationError(
            f"{decl.kind.value} {atom.predicate} cannot appear inside occurs"
        )


def _situation_actions(term) -> List:
    actions = []
    while isinstance(term, Compound) and term.functor == DO_FUNCTOR:
        actions.append(Atom.from_term(term.args[0]))
        term = term.args[1]
    return actions


def check_situation_actions(literal: Literal, ontology: Ontology) -> None:
    """Every action inside do(...) must be a declared action of matching arity."""
    if isinstance(literal, Equality):
        terms = [literal.lhs, literal.rhs]
    else:
        terms = [literal.situation]
    for term in terms:
        for action in _situation_actions(term):
            decl = ontology.declaration(action.predicate)
            if decl is None:
                raise ValidationError(f"undeclared action {action.predicate}/{action.arity}")
            if decl.arity != action.arity:
                raise ValidationError(
                    f"action {action.predicate} declared with arity {decl.arity}, "
                    f"used with {action.arity}"
                )
            if decl.kind != PredicateKind.ACTION:
                raise ValidationError(
                    f"{decl.kind.value} {action.predicate} cannot label a situation transition"
                )
