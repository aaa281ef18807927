"""
Brute-force reference evaluator used to cross-check the semi-naive engine.

Every round grounds every rule over the whole active universe (all
subterms of visible facts, the situation ids in scope and the terms of
their actions) by generate-and-test, until nothing changes. Variables in
situation position only take the situation ids in scope. No join
planning, no deltas, no indexes, no proofs.
"""

import logging
from typing import Dict, FrozenSet, Iterator, List, Sequence, Set, Union

from theoria.engine.compiler import compile_ontology, skolemize
from theoria.engine.matching import situation_id_of
from theoria.engine.stratify import predicate_strata
from theoria.kernel import (
    CLIPS_PREDICATE,
    DO_FUNCTOR,
    Atom,
    Axiom,
    Compound,
    Constant,
    Equality,
    FactLiteral,
    Holds,
    Literal,
    Ontology,
    PredicateKind,
    Term,
    Variable,
    apply,
    is_ground_literal,
    literal_variables,
)
from theoria.store import FactStore, StoreSnapshot
from theoria.utils.validation import TheoriaError

logger = logging.getLogger(__name__)


def _subterms(term: Term) -> Iterator[Term]:
    yield term
    if isinstance(term, Compound):
        for arg in term.args:
            yield from _subterms(arg)


def _universe(
    models: Dict[str, Set[FactLiteral]],
    scope: Sequence[str],
    snapshot: StoreSnapshot,
) -> List[Term]:
    terms: Set[Term] = set()
    for sid in scope:
        terms.add(Constant(sid))
        action = snapshot.situation(sid).action
        if action is not None:
            terms.update(_subterms(action.as_term()))
        for fact in models.get(sid, ()):
            for arg in fact.atom.args:
                terms.update(_subterms(arg))
    return sorted(terms, key=str)


def _situation_variables(axiom: Axiom) -> Set[Variable]:
    """Variables standing for a situation: sit positions and do(...) parents."""
    found: Set[Variable] = set()

    def visit(term: Term) -> None:
        if isinstance(term, Variable):
            found.add(term)
        elif isinstance(term, Compound) and term.functor == DO_FUNCTOR and term.arity == 2:
            visit(term.args[1])

    for literal in axiom.body:
        if isinstance(literal, Equality):
            visit(literal.lhs)
            visit(literal.rhs)
        else:
            visit(literal.situation)
    return found


def _true(literal: Literal, models: Dict[str, Set[FactLiteral]], scope: Sequence[str]) -> bool:
    if isinstance(literal, Equality):
        sid = situation_id_of(literal.lhs)
        return sid is not None and sid in scope and sid == situation_id_of(literal.rhs)
    sid = situation_id_of(literal.situation)
    if sid is None or sid not in scope:
        present = False
    elif isinstance(literal, Holds):
        present = literal.positive().at(Constant(sid)) in models[sid]
    else:
        present = literal.at(Constant(sid)) in models[sid]
    return not present if literal.negated else present


def _groundings(
    axiom: Axiom,
    universe: Sequence[Term],
    models: Dict[str, Set[FactLiteral]],
    scope: Sequence[str],
) -> Iterator[Dict[Variable, Term]]:
    order: List[Variable] = []
    for literal in axiom.body:
        for var in literal_variables(literal):
            if var not in order:
                order.append(var)
    # checks[k]: literals that become ground once the first k variables are assigned
    checks: List[List[Literal]] = [[] for _ in range(len(order) + 1)]
    for literal in axiom.body:
        names = set(literal_variables(literal))
        depth = max((order.index(v) + 1 for v in names), default=0)
        checks[depth].append(literal)
    # situation variables range over situation ids only, never over action subterms
    situations = [Constant(sid) for sid in scope]
    sit_vars = _situation_variables(axiom)

    def assign(k: int, binding: Dict[Variable, Term]) -> Iterator[Dict[Variable, Term]]:
        for literal in checks[k]:
            if not _true(apply(binding, literal), models, scope):
                return
        if k == len(order):
            yield binding
            return
        for value in situations if order[k] in sit_vars else universe:
            extended = dict(binding)
            extended[order[k]] = value
            yield from assign(k + 1, extended)

    yield from assign(0, {})


def _placed_at(fact: FactLiteral, sid: str) -> FactLiteral:
    return fact.at(Constant(sid))


def naive_saturate(
    store: Union[FactStore, StoreSnapshot],
    ontology: Ontology,
    sit: str,
    max_rounds: int = 10_000,
) -> FrozenSet[FactLiteral]:
    """
    Derived facts of sit (visible facts minus the situation's base facts).

    Same contract as saturate; errors are the same too.
    """
    snapshot = store.snapshot() if isinstance(store, FactStore) else store
    chain = snapshot.ancestors(sit)
    compile_ontology(ontology)

    axioms = [skolemize(a) for a in ontology.axioms]
    strata = predicate_strata(axioms)
    layers: Dict[int, List[Axiom]] = {}
    for axiom in axioms:
        layers.setdefault(strata[axiom.head.predicate], []).append(axiom)

    rigid: Set[FactLiteral] = set()
    for facts in snapshot.base.values():
        for fact in facts:
            if isinstance(fact, Holds) and ontology.kind_of(fact.predicate) == PredicateKind.RIGID:
                rigid.add(fact)

    models: Dict[str, Set[FactLiteral]] = {}
    for depth, sid in enumerate(chain):
        scope = chain[: depth + 1]
        model: Set[FactLiteral] = set(snapshot.base_facts(sid))
        model.update(_placed_at(f, sid) for f in rigid)

        situation = snapshot.situation(sid)
        if situation.parent is not None:
            parent_facts = models[situation.parent]
            action = situation.action.as_term()
            for fact in parent_facts:
                if not isinstance(fact, Holds) or fact.predicate == CLIPS_PREDICATE:
                    continue
                if ontology.kind_of(fact.predicate) == PredicateKind.RIGID:
                    continue
                blocker = Holds(
                    Atom(CLIPS_PREDICATE, (action, Constant(fact.predicate))),
                    Constant(situation.parent),
                )
                if blocker in parent_facts:
                    continue
                model.add(_placed_at(fact, sid))
        models[sid] = model

        for level in sorted(layers):
            rounds = 0
            while True:
                rounds += 1
                if rounds > max_rounds:
                    raise TheoriaError(f"naive saturation of {sid} did not converge")
                universe = _universe(models, scope, snapshot)
                new: Set[FactLiteral] = set()
                for axiom in layers[level]:
                    for binding in _groundings(axiom, universe, models, scope):
                        head = apply(binding, axiom.head)
                        if not is_ground_literal(head) or situation_id_of(head.situation) != sid:
                            continue
                        placed = _placed_at(head, sid)
                        if placed not in model:
                            new.add(placed)
                if not new:
                    break
                model.update(new)

    derived = frozenset(models[sit] - snapshot.base_facts(sit))
    logger.debug(f"Naive saturation of {sit}: {len(derived)} derived facts")
    return derived
