"""
Axiom compilation: Skolemization, join planning, stratum assignment.

    Axiom --skolemize--> existential-free axiom --plan--> CompiledRule
"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, List, Set, Tuple

from theoria.engine.stratify import (
    dependency_edges,
    predicate_strata,
    strongly_connected_components,
)
from theoria.kernel import (
    Axiom,
    Compound,
    Constant,
    Equality,
    Holds,
    Literal,
    Ontology,
    Term,
    Variable,
    apply,
    is_positive_atomic,
    literal_variables,
    term_variables,
)
from theoria.utils.validation import SKOLEM_PREFIX, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompiledRule:
    """
    Executable rule.

    body is in join-plan order; written_index[i] is the position body[i]
    had in the source axiom, so proofs can list premises as written.
    """
    name: str
    body: Tuple[Literal, ...]
    head: Holds
    stratum: int = 0
    written_index: Tuple[int, ...] = ()

    def written_body(self) -> Tuple[Literal, ...]:
        ordered = sorted(zip(self.written_index, self.body))
        return tuple(lit for _, lit in ordered)


def skolem_functor(axiom_name: str, variable: Variable) -> str:
    return f"{SKOLEM_PREFIX}{axiom_name}_{variable.name}"


def skolemize(axiom: Axiom) -> Axiom:
    """
    Replace each head existential V by sk_<axiom>_<V>(U1, ..., Uk).

    U1..Uk are the axiom's universals bound by positive body literals, in
    declaration order. Axioms without existentials come back unchanged.

    Raises:
        ValidationError: an existential variable occurs in the body
    """
    if not axiom.head_existentials:
        return axiom
    body_vars: Set[Variable] = set()
    for literal in axiom.body:
        body_vars.update(literal_variables(literal))
    leaked = body_vars & set(axiom.head_existentials)
    if leaked:
        raise ValidationError(
            f"axiom {axiom.name}: existential {', '.join(sorted(v.name for v in leaked))} "
            f"in body is unsupported"
        )

    positive_vars: Set[Variable] = set()
    for literal in axiom.body:
        if is_positive_atomic(literal):
            positive_vars.update(literal_variables(literal))
    args = tuple(v for v in axiom.universals if v in positive_vars)

    skolems: Dict[Variable, Term] = {}
    for var in axiom.head_existentials:
        functor = skolem_functor(axiom.name, var)
        skolems[var] = Compound(functor, args) if args else Constant(functor)

    return replace(axiom, head_existentials=(), head=apply(skolems, axiom.head))


def _ready(literal: Literal, bound: Set[Variable]) -> bool:
    if isinstance(literal, Equality):
        return set(term_variables(literal.lhs)) <= bound or set(term_variables(literal.rhs)) <= bound
    return set(literal_variables(literal)) <= bound


def plan_body(body: Tuple[Literal, ...]) -> Tuple[Tuple[Literal, ...], Tuple[int, ...]]:
    """
    Left-to-right join order; equality and negated literals are deferred
    until their variables are bound (equality: either side bound).

    Returns:
        (planned literals, written index of each planned literal)
    """
    order: List[int] = []
    bound: Set[Variable] = set()
    deferred: List[int] = []

    def flush():
        progress = True
        while progress:
            progress = False
            for idx in list(deferred):
                if _ready(body[idx], bound):
                    deferred.remove(idx)
                    order.append(idx)
                    bound.update(literal_variables(body[idx]))
                    progress = True

    for idx, literal in enumerate(body):
        if is_positive_atomic(literal):
            order.append(idx)
            bound.update(literal_variables(literal))
            flush()
        elif _ready(literal, bound):
            order.append(idx)
            bound.update(literal_variables(literal))
            flush()
        else:
            deferred.append(idx)
    # Equalities with both sides unbound enumerate situations at the end.
    order.extend(deferred)
    return tuple(body[i] for i in order), tuple(order)


def _check_existential_recursion(axioms: List[Axiom]) -> None:
    edges = dependency_edges(axioms)
    nodes = {a.head.predicate for a in axioms} | {b for _, b, _ in edges}
    component = strongly_connected_components(nodes, edges)
    for axiom in axioms:
        if not axiom.head_existentials:
            continue
        head_component = component[axiom.head.predicate]
        for literal in axiom.body:
            if isinstance(literal, Equality):
                continue
            if component.get(literal.predicate) == head_component:
                raise ValidationError(
                    f"axiom {axiom.name}: existential head {axiom.head.predicate} is recursive; "
                    f"Skolem terms would nest without bound"
                )


def compile_rules(axioms: List[Axiom]) -> List[CompiledRule]:
    """
    Compile axioms into stratified, planned rules (in input order).

    Raises:
        ValidationError: unsupported existential use
        StratificationError: negative cycle
    """
    axioms = list(axioms)
    _check_existential_recursion(axioms)
    skolemized = [skolemize(a) for a in axioms]
    strata = predicate_strata(skolemized)
    rules = []
    for axiom in skolemized:
        planned, written = plan_body(axiom.body)
        rules.append(
            CompiledRule(
                name=axiom.name,
                body=planned,
                head=axiom.head,
                stratum=strata.get(axiom.head.predicate, 0),
                written_index=written,
            )
        )
    return rules


def compile_ontology(ontology: Ontology) -> List[CompiledRule]:
    rules = compile_rules(list(ontology.axioms))
    logger.debug(f"Compiled {len(rules)} rules")
    return rules
