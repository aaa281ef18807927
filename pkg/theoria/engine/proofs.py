"""
Proof trees: how every fact in a saturated model came to be.

Rule names:
    base-fact   asserted in the store
    rigid       rigid fact asserted in another situation
    frame       inherited from the parent situation by inertia
    equality    situation equality checked against the forest
    naf         negation as failure (absence in the closed-world model)
    <axiom>     an axiom fired; premises follow its body as written
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

from theoria.dsl import parse_literal, print_literal
from theoria.engine.compiler import CompiledRule, compile_ontology
from theoria.engine.matching import (
    Binding,
    match_atom,
    match_situation,
    match_term,
    situation_id_of,
)
from theoria.kernel import (
    CLIPS_PREDICATE,
    EMPTY,
    Equality,
    Holds,
    Literal,
    Occurs,
    Ontology,
    PredicateKind,
    Substitution,
    is_ground_literal,
)
from theoria.store import StoreSnapshot

logger = logging.getLogger(__name__)

BASE_FACT = "base-fact"
RIGID = "rigid"
FRAME = "frame"
EQUALITY = "equality"
NAF = "naf"
BUILTIN_RULES = (BASE_FACT, RIGID, FRAME, EQUALITY, NAF)


@dataclass(frozen=True)
class ProofNode:
    """
    Justification of one ground literal in one situation.

    The substitution is informational; replay recovers it by matching.
    """
    conclusion: Literal
    situation: str
    rule: str
    premises: Tuple["ProofNode", ...] = ()
    substitution: Substitution = field(default=EMPTY, compare=False)

    def leaves(self) -> Tuple["ProofNode", ...]:
        if not self.premises:
            return (self,)
        found = ()
        for premise in self.premises:
            found += premise.leaves()
        return found

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)


class NotDerivableType:
    """Distinguished result of prove() for literals with no derivation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NotDerivable"


NotDerivable = NotDerivableType()


def _same_fact(literal: Literal, node: ProofNode) -> bool:
    """True when the premise node concludes exactly this ground fact literal."""
    if not isinstance(node.conclusion, (Holds, Occurs)):
        return False
    return (
        type(literal) is type(node.conclusion)
        and literal.atom == node.conclusion.atom
        and literal.negated == node.conclusion.negated
    )


def _replay_axiom(node: ProofNode, rule: CompiledRule, snapshot: StoreSnapshot) -> bool:
    body = rule.written_body()
    if len(body) != len(node.premises):
        return False
    binding: Optional[Binding] = {}
    for literal, premise in zip(body, node.premises):
        if isinstance(literal, Equality):
            if premise.rule != EQUALITY or not isinstance(premise.conclusion, Equality):
                return False
            binding = match_term(literal.lhs, premise.conclusion.lhs, binding)
            if binding is not None:
                binding = match_term(literal.rhs, premise.conclusion.rhs, binding)
        else:
            if type(literal) is not type(premise.conclusion):
                return False
            if literal.negated != (premise.rule == NAF):
                return False
            binding = match_atom(literal.atom, premise.conclusion.atom, binding)
            if binding is not None:
                binding = match_situation(literal.situation, premise.situation, binding, snapshot)
        if binding is None:
            return False
    head_binding = match_atom(rule.head.atom, node.conclusion.atom, binding)
    if head_binding is None or head_binding != binding:
        return False
    return match_situation(rule.head.situation, node.situation, binding, snapshot) is not None


def _verify(
    node: ProofNode,
    rules: Mapping[str, CompiledRule],
    ontology: Ontology,
    snapshot: StoreSnapshot,
) -> bool:
    conclusion = node.conclusion
    if not is_ground_literal(conclusion):
        return False

    if node.rule == BASE_FACT:
        return (
            not node.premises
            and snapshot.has_situation(node.situation)
            and conclusion in snapshot.base_facts(node.situation)
        )

    if node.rule == EQUALITY:
        return (
            not node.premises
            and isinstance(conclusion, Equality)
            and situation_id_of(conclusion.lhs) == situation_id_of(conclusion.rhs) == node.situation
        )

    if node.rule == NAF:
        return (
            not node.premises
            and isinstance(conclusion, Holds)
            and conclusion.negated
            and situation_id_of(conclusion.situation) == node.situation
        )

    if not isinstance(conclusion, (Holds, Occurs)) or conclusion.negated:
        return False
    if situation_id_of(conclusion.situation) != node.situation:
        return False

    if node.rule == RIGID:
        if len(node.premises) != 1 or ontology.kind_of(conclusion.predicate) != PredicateKind.RIGID:
            return False
        premise = node.premises[0]
        return (
            premise.rule == BASE_FACT
            and _same_fact(conclusion, premise)
            and _verify(premise, rules, ontology, snapshot)
        )

    if node.rule == FRAME:
        if len(node.premises) != 1 or not snapshot.has_situation(node.situation):
            return False
        premise = node.premises[0]
        parent = snapshot.situation(node.situation).parent
        return (
            parent is not None
            and premise.situation == parent
            and _same_fact(conclusion, premise)
            and conclusion.predicate != CLIPS_PREDICATE
            and ontology.kind_of(conclusion.predicate) != PredicateKind.RIGID
            and _verify(premise, rules, ontology, snapshot)
        )

    rule = rules.get(node.rule)
    if rule is None or not _replay_axiom(node, rule, snapshot):
        return False
    return all(_verify(p, rules, ontology, snapshot) for p in node.premises)


def verify_proof(node: ProofNode, ontology: Ontology, snapshot: StoreSnapshot) -> bool:
    """
    Replay a proof bottom-up against the store and the compiled axioms.

    Every leaf must be a base fact (or a builtin check that holds), and
    every axiom node must be an instance of its rule whose body instances
    are exactly the premise conclusions.
    """
    rules = {rule.name: rule for rule in compile_ontology(ontology)}
    ok = _verify(node, rules, ontology, snapshot)
    if not ok:
        logger.debug(f"Proof of {node.conclusion} @ {node.situation} failed replay")
    return ok


def proof_to_json(node: ProofNode) -> Dict[str, Any]:
    return {
        "fact": print_literal(node.conclusion),
        "situation": node.situation,
        "rule": node.rule,
        "premises": [proof_to_json(p) for p in node.premises],
    }


def proof_from_json(data: Mapping[str, Any], ontology: Ontology) -> ProofNode:
    """Inverse of proof_to_json; literal text is re-parsed against the ontology."""
    return ProofNode(
        conclusion=parse_literal(data["fact"], ontology, allow_reserved=True),
        situation=data["situation"],
        rule=data["rule"],
        premises=tuple(proof_from_json(p, ontology) for p in data.get("premises", ())),
    )
