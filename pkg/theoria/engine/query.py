"""
Query answering and proof lookup over saturated stores.

Queries are answered by forward saturation of every situation followed by
matching the query body against the saturated models (closed world).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from theoria.dsl import parse_body, parse_term
from theoria.engine.compiler import plan_body
from theoria.engine.evaluator import DEFAULT_MAX_ROUNDS, Evaluator, saturate
from theoria.engine.proofs import (
    EQUALITY,
    NAF,
    NotDerivable,
    NotDerivableType,
    ProofNode,
    proof_from_json,
    proof_to_json,
)
from theoria.kernel import (
    Constant,
    Equality,
    Holds,
    Literal,
    Ontology,
    Substitution,
    Variable,
    check_literal_kinds,
    check_query_body,
    check_situation_actions,
    is_ground,
    is_ground_atom,
    literal_variables,
    term_text,
)
from theoria.store import FactStore, StoreSnapshot
from theoria.utils.validation import ValidationError

logger = logging.getLogger(__name__)

QueryBody = Union[str, Sequence[Literal]]


@dataclass(frozen=True)
class Answer:
    """
    One distinct solution of a query.

    bindings: query variables only
    proofs: one proof per query literal, in written order
    situation: where the first positive literal matched
    """
    bindings: Substitution
    proofs: Tuple[ProofNode, ...] = field(default=(), compare=False)
    situation: str = ""

    def bindings_text(self) -> Dict[str, str]:
        return {var.name: term_text(term) for var, term in self.bindings.bindings}


def query_variables(body: Sequence[Literal]) -> List[Variable]:
    """Variables in order of first appearance."""
    ordered: List[Variable] = []
    for literal in body:
        for var in literal_variables(literal):
            if var not in ordered:
                ordered.append(var)
    return ordered


def check_query(body: Sequence[Literal], ontology: Ontology, snapshot: StoreSnapshot) -> None:
    """
    Static checks on an ad-hoc query.

    Raises:
        ValidationError: unsafe variables, undeclared or misused predicates,
            or a ground situation term naming no known situation
    """
    check_query_body("query", tuple(body))
    for literal in body:
        check_literal_kinds(literal, ontology)
        check_situation_actions(literal, ontology)
        terms = [literal.lhs, literal.rhs] if isinstance(literal, Equality) else [literal.situation]
        for term in terms:
            if is_ground(term) and snapshot.resolve_situation(term) is None:
                raise ValidationError(f"unknown situation '{term}'")


def _resolve_body(body: QueryBody, ontology: Ontology) -> Tuple[Literal, ...]:
    if isinstance(body, str):
        return parse_body(body, ontology)
    return tuple(body)


def answers(evaluator: Evaluator, body: Sequence[Literal]) -> List[Answer]:
    """Answers of a checked query body against an evaluator's models."""
    snapshot = evaluator.snapshot
    evaluator.saturate_all()
    scope = snapshot.situations_in_order()
    planned, written = plan_body(tuple(body))
    variables = query_variables(body)

    found: Dict[Tuple, Answer] = {}
    for binding, premises in evaluator.solve(planned, written, scope):
        key = tuple(binding[v] for v in variables)
        if key in found:
            continue
        located = next(
            (p.situation for p in premises if p.rule not in (EQUALITY, NAF)),
            premises[0].situation if premises else "",
        )
        found[key] = Answer(
            bindings=Substitution(tuple(zip(variables, key))),
            proofs=premises,
            situation=located,
        )

    ordered = sorted(
        found.values(),
        key=lambda a: (tuple(term_text(t) for _, t in a.bindings.bindings), a.situation),
    )
    return ordered


def query(
    store: Union[FactStore, StoreSnapshot],
    ontology: Ontology,
    body: QueryBody,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> List[Answer]:
    """
    All distinct answers to a query body, deterministically ordered.

    A ground query has exactly one answer (with empty bindings) when it is
    derivable and none otherwise.

    Raises:
        ParseError: malformed query text
        ValidationError: undeclared predicate, malformed situation term
    """
    snapshot = store.snapshot() if isinstance(store, FactStore) else store
    literals = _resolve_body(body, ontology)
    check_query(literals, ontology, snapshot)
    evaluator = Evaluator(snapshot, ontology, max_rounds)
    result = answers(evaluator, literals)
    if isinstance(store, FactStore):
        for sid, saturation in evaluator.saturate_all().items():
            store.record_derived(sid, saturation.facts)
    logger.info(f"Query returned {len(result)} answers")
    return result


def prove(
    store: Union[FactStore, StoreSnapshot],
    ontology: Ontology,
    literal: Union[str, Literal],
    sit: Optional[str] = None,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Union[ProofNode, NotDerivableType]:
    """
    Proof tree of a ground literal, or NotDerivable.

    Args:
        literal: ground holds/occurs literal (text or value); a negated
            holds literal is proven by the absence of its positive form
        sit: situation id; defaults to the literal's own situation term

    Raises:
        ValidationError: non-ground literal or unknown situation
    """
    snapshot = store.snapshot() if isinstance(store, FactStore) else store
    if isinstance(literal, str):
        literal = parse_body(literal, ontology, allow_reserved=True)[0]
    if isinstance(literal, Equality):
        raise ValidationError("prove expects a holds or occurs literal")
    if not is_ground_atom(literal.atom) or (sit is None and not is_ground(literal.situation)):
        raise ValidationError(f"prove expects a ground literal, got {literal}")
    check_literal_kinds(literal, ontology)

    if sit is None:
        sit = snapshot.resolve_situation(literal.situation)
        if sit is None:
            raise ValidationError(f"unknown situation '{literal.situation}'")
    snapshot.situation(sit)

    result = saturate(store, ontology, sit, max_rounds)
    placed = literal.at(Constant(sit))
    if isinstance(placed, Holds) and placed.negated:
        if placed.positive() in result.proofs:
            return NotDerivable
        return ProofNode(placed, sit, NAF)
    node = result.proofs.get(placed)
    return node if node is not None else NotDerivable


def answer_to_json(answer: Answer, with_proofs: bool = False) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "bindings": answer.bindings_text(),
        "situation": answer.situation,
    }
    if with_proofs:
        data["proofs"] = [proof_to_json(p) for p in answer.proofs]
    return data


def answers_to_json(result: Sequence[Answer], with_proofs: bool = False) -> Dict[str, Any]:
    return {"answers": [answer_to_json(a, with_proofs) for a in result]}


def answers_from_json(data: Dict[str, Any], ontology: Ontology) -> List[Answer]:
    """Inverse of answers_to_json (proofs only when they were emitted)."""
    loaded = []
    for item in data.get("answers", []):
        bindings = []
        for name, text in item["bindings"].items():
            bindings.append((Variable(name), parse_term(text, ontology, allow_reserved=True)))
        proofs = tuple(proof_from_json(p, ontology) for p in item.get("proofs", ()))
        loaded.append(Answer(Substitution(tuple(bindings)), proofs, item["situation"]))
    return loaded
