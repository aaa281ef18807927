"""
Semi-naive saturation, one situation at a time.

Architecture:
    model(sit) = base(sit) + rigid facts + frame(model(parent)) + rule heads

Situations are evaluated root to target along the situation forest.
Ancestor models are final before a situation is evaluated, so body literals
may read any situation on the chain while rule heads only ever land in the
situation being saturated. Nothing flows from a child back to its parent.

Within a situation, strata run lowest first. Round 1 of a stratum fires
every rule against the whole model; later rounds re-fire only rules with a
same-stratum holds literal, with that literal restricted to the facts the
previous round produced.
"""

import asyncio
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from theoria.engine.compiler import CompiledRule, compile_ontology
from theoria.engine.matching import (
    Binding,
    eval_equality,
    match_atom,
    match_situation,
    situation_candidates,
    situation_id_of,
)
from theoria.engine.proofs import BASE_FACT, EQUALITY, FRAME, NAF, RIGID, ProofNode
from theoria.engine.stratify import stratify
from theoria.kernel import (
    CLIPS_PREDICATE,
    Atom,
    Constant,
    Equality,
    FactLiteral,
    Holds,
    Literal,
    Occurs,
    Ontology,
    PredicateKind,
    Substitution,
    apply,
)
from theoria.store import FactStore, StoreSnapshot
from theoria.utils.validation import TheoriaError

logger = logging.getLogger(__name__)

DEFAULT_MAX_ROUNDS = 10_000

FactKey = Tuple[str, str]
Solution = Tuple[Binding, Tuple[ProofNode, ...]]


def fact_key(literal: Union[Holds, Occurs]) -> FactKey:
    return ("occurs" if isinstance(literal, Occurs) else "holds", literal.predicate)


class _Model:
    """Facts of one situation with their first proof, indexed by predicate."""

    def __init__(self, sid: str):
        self.sid = sid
        self.proofs: Dict[FactLiteral, ProofNode] = {}
        self.index: Dict[FactKey, List[FactLiteral]] = defaultdict(list)

    def add(self, fact: FactLiteral, node: ProofNode) -> bool:
        if fact in self.proofs:
            return False
        self.proofs[fact] = node
        self.index[fact_key(fact)].append(fact)
        return True

    def facts(self, key: FactKey) -> List[FactLiteral]:
        return self.index.get(key, [])

    def __contains__(self, fact: FactLiteral) -> bool:
        return fact in self.proofs

    def __len__(self) -> int:
        return len(self.proofs)


@dataclass(frozen=True)
class Saturation:
    """
    Saturated model of one situation.

    facts: every fact visible in the situation, in derivation order
    derived: facts that are not base facts of the situation (inherited,
        rigid, or produced by an axiom)
    proofs: one proof per fact
    """
    situation: str
    facts: Tuple[FactLiteral, ...] = ()
    derived: FrozenSet[FactLiteral] = frozenset()
    proofs: Mapping[FactLiteral, ProofNode] = field(default_factory=dict, compare=False)

    def holds(self, fact: FactLiteral) -> bool:
        return fact.at(Constant(self.situation)) in self.proofs

    def proof(self, fact: FactLiteral) -> Optional[ProofNode]:
        return self.proofs.get(fact.at(Constant(self.situation)))

    def __len__(self) -> int:
        return len(self.facts)


class Evaluator:
    """
    Saturates situations of one snapshot under one ontology.

    Models are cached per situation, so saturating a situation also
    saturates (once) every ancestor on its chain.

    Operations:
        - saturation(sid) -> Saturation
        - saturate_all() -> {sid: Saturation}
        - solve(body, written_index, scope) -> (binding, premises) solutions
    """

    def __init__(
        self,
        snapshot: StoreSnapshot,
        ontology: Ontology,
        max_rounds: int = DEFAULT_MAX_ROUNDS,
        rules: Optional[List[CompiledRule]] = None,
    ):
        self.snapshot = snapshot
        self.ontology = ontology
        self.max_rounds = max_rounds
        self.rules = compile_ontology(ontology) if rules is None else rules
        self.strata = stratify(self.rules)
        self._models: Dict[str, _Model] = {}
        self._rigid = self._collect_rigid()

    def _collect_rigid(self) -> List[Tuple[FactLiteral, str]]:
        found: Dict[Atom, Tuple[FactLiteral, str]] = {}
        for sid in sorted(self.snapshot.base):
            for fact in sorted(self.snapshot.base[sid], key=str):
                if not isinstance(fact, Holds):
                    continue
                if self.ontology.kind_of(fact.predicate) != PredicateKind.RIGID:
                    continue
                found.setdefault(fact.atom, (fact, sid))
        return sorted(found.values(), key=lambda pair: str(pair[0].atom))

    # ------------------------------------------------------------------
    # public

    def saturation(self, sid: str) -> Saturation:
        chain = self.snapshot.ancestors(sid)
        for ancestor in chain:
            if ancestor not in self._models:
                self._saturate(ancestor, chain[: chain.index(ancestor) + 1])
        return self._result(sid)

    def saturate_all(self) -> Dict[str, Saturation]:
        return {sid: self.saturation(sid) for sid in self.snapshot.situations_in_order()}

    def solve(
        self,
        body: Sequence[Literal],
        written_index: Sequence[int],
        scope: Sequence[str],
        delta_position: Optional[int] = None,
        delta: Optional[_Model] = None,
    ) -> Iterator[Solution]:
        """
        Enumerate solutions of a planned body against saturated models.

        Yields:
            (binding, premise proofs in written order)
        """
        n = len(body)

        def step(i: int, binding: Binding, premises: Tuple) -> Iterator[Solution]:
            if i == n:
                ordered = tuple(node for _, node in sorted(premises, key=lambda p: p[0]))
                yield binding, ordered
                return
            literal = body[i]
            position = written_index[i]

            if isinstance(literal, Equality):
                for sid, extended in eval_equality(literal, binding, scope, self.snapshot):
                    node = ProofNode(apply(extended, literal), sid, EQUALITY)
                    yield from step(i + 1, extended, premises + ((position, node),))
                return

            if literal.negated:
                ground = apply(binding, literal)
                sid = situation_id_of(ground.situation)
                model = self._models.get(sid) if sid in scope else None
                if model is not None and ground.positive().at(Constant(sid)) in model:
                    return
                node = ProofNode(ground, sid or str(ground.situation), NAF)
                yield from step(i + 1, binding, premises + ((position, node),))
                return

            restricted = delta if i == delta_position else None
            key = fact_key(literal)
            for sid in situation_candidates(literal.situation, binding, scope):
                if restricted is not None and sid != restricted.sid:
                    continue
                located = match_situation(literal.situation, sid, binding, self.snapshot)
                if located is None:
                    continue
                model = self._models[sid]
                source = restricted if restricted is not None else model
                for fact in source.facts(key):
                    extended = match_atom(literal.atom, fact.atom, located)
                    if extended is None:
                        continue
                    node = model.proofs[fact]
                    yield from step(i + 1, extended, premises + ((position, node),))

        yield from step(0, {}, ())

    # ------------------------------------------------------------------
    # saturation of one situation

    def _saturate(self, sid: str, scope: List[str]) -> None:
        model = _Model(sid)
        self._models[sid] = model

        for fact in sorted(self.snapshot.base_facts(sid), key=str):
            model.add(fact, ProofNode(fact, sid, BASE_FACT))

        here = Constant(sid)
        for fact, origin in self._rigid:
            placed = fact.at(here)
            if placed not in model:
                model.add(placed, ProofNode(placed, sid, RIGID, (ProofNode(fact, origin, BASE_FACT),)))

        situation = self.snapshot.situation(sid)
        if situation.parent is not None:
            self._inherit(model, self._models[situation.parent], situation.action)

        for stratum in self.strata:
            self._fixpoint(model, stratum, scope)

        logger.debug(f"Saturated {sid}: {len(model)} facts")

    def _inherit(self, model: _Model, parent: _Model, action: Atom) -> None:
        action_term = action.as_term()
        clipped = {
            fact.atom.args[1]
            for fact in parent.facts(("holds", CLIPS_PREDICATE))
            if fact.atom.args[0] == action_term
        }
        here = Constant(model.sid)
        for fact, node in list(parent.proofs.items()):
            if not isinstance(fact, Holds) or fact.predicate == CLIPS_PREDICATE:
                continue
            if self.ontology.kind_of(fact.predicate) == PredicateKind.RIGID:
                continue
            if Constant(fact.predicate) in clipped:
                continue
            placed = fact.at(here)
            if placed not in model:
                model.add(placed, ProofNode(placed, model.sid, FRAME, (node,)))

    def _fixpoint(self, model: _Model, rules: List[CompiledRule], scope: List[str]) -> None:
        heads = {rule.head.predicate for rule in rules}
        here = Constant(model.sid)
        delta: Optional[_Model] = None
        rounds = 0

        while True:
            rounds += 1
            if rounds > self.max_rounds:
                raise TheoriaError(
                    f"saturation of {model.sid} did not converge within {self.max_rounds} rounds"
                )
            fresh: Dict[FactLiteral, ProofNode] = {}
            for rule in rules:
                if delta is None:
                    positions: List[Optional[int]] = [None]
                else:
                    positions = [
                        i
                        for i, literal in enumerate(rule.body)
                        if isinstance(literal, Holds)
                        and not literal.negated
                        and literal.predicate in heads
                    ]
                for position in positions:
                    solutions = self.solve(rule.body, rule.written_index, scope, position, delta)
                    for binding, premises in solutions:
                        head = apply(binding, rule.head)
                        if situation_id_of(head.situation) != model.sid:
                            continue
                        fact = head.at(here)
                        if fact in model or fact in fresh:
                            continue
                        fresh[fact] = ProofNode(
                            fact,
                            model.sid,
                            rule.name,
                            premises,
                            Substitution(tuple(binding.items())),
                        )

            if not fresh:
                break
            delta = _Model(model.sid)
            for fact, node in fresh.items():
                model.add(fact, node)
                delta.add(fact, node)
            logger.debug(f"{model.sid}: round {rounds} derived {len(fresh)} facts")

    def _result(self, sid: str) -> Saturation:
        model = self._models[sid]
        base = self.snapshot.base_facts(sid)
        return Saturation(
            situation=sid,
            facts=tuple(model.proofs),
            derived=frozenset(f for f in model.proofs if f not in base),
            proofs=dict(model.proofs),
        )


def _as_snapshot(store: Union[FactStore, StoreSnapshot]) -> StoreSnapshot:
    return store.snapshot() if isinstance(store, FactStore) else store


def saturate(
    store: Union[FactStore, StoreSnapshot],
    ontology: Ontology,
    sit: str,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Saturation:
    """
    Stratified least fixpoint of the ontology's axioms at one situation.

    Args:
        store: populated model (a FactStore also receives the derived facts)
        ontology: axioms to apply
        sit: situation id
        max_rounds: guard on semi-naive rounds per stratum

    Returns:
        Saturation with the visible facts, the derived subset and proofs

    Raises:
        ValidationError: unknown situation or unsupported existential use
        StratificationError: negative cycle in the ontology
    """
    snapshot = _as_snapshot(store)
    snapshot.situation(sit)
    evaluator = Evaluator(snapshot, ontology, max_rounds)
    result = evaluator.saturation(sit)
    if isinstance(store, FactStore):
        for sid in snapshot.ancestors(sit):
            store.record_derived(sid, evaluator.saturation(sid).facts)
    logger.info(f"Saturated {sit}: {len(result.derived)} derived of {len(result)} facts")
    return result


def saturate_all(
    store: Union[FactStore, StoreSnapshot],
    ontology: Ontology,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Dict[str, Saturation]:
    """Saturate every situation of the store, parents first."""
    snapshot = _as_snapshot(store)
    results = Evaluator(snapshot, ontology, max_rounds).saturate_all()
    if isinstance(store, FactStore):
        for sid, result in results.items():
            store.record_derived(sid, result.facts)
    logger.info(f"Saturated {len(results)} situations")
    return results


async def saturate_many(
    snapshot: StoreSnapshot,
    ontology: Ontology,
    sids: Iterable[str],
    concurrency: int = 4,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Dict[str, Saturation]:
    """
    Saturate distinct situations concurrently on worker threads.

    Each situation gets its own evaluator over the same immutable
    snapshot; results come back keyed in the order requested.
    """
    ordered = list(dict.fromkeys(sids))
    for sid in ordered:
        snapshot.situation(sid)
    semaphore = asyncio.Semaphore(max(1, concurrency))

    async def run(sid: str) -> Saturation:
        async with semaphore:
            return await asyncio.to_thread(saturate, snapshot, ontology, sid, max_rounds)

    results = await asyncio.gather(*(run(sid) for sid in ordered))
    return dict(zip(ordered, results))
