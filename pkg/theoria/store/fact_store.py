"""
Fact Store: the populated model.

Architecture:
    situations     id -> Situation (a forest: bases plus do(action, parent))
    base facts     id -> ground positive holds/occurs literals asserted there
    derived facts  id -> engine-owned cache of saturation results

A situation is a database instance: the set of populated predicates that
hold in it. Rigid predicates are situation-independent, so a rigid fact
asserted anywhere is visible everywhere.

Single writer, many readers: mutations take the store lock; readers work
on immutable snapshots.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from theoria.kernel import (
    Atom,
    Constant,
    FactLiteral,
    Holds,
    Occurs,
    Ontology,
    PredicateKind,
    Situation,
    check_literal_kinds,
    is_do_term,
    is_ground_atom,
    is_ground_literal,
)
from theoria.kernel.terms import Term
from theoria.utils.validation import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StoreSnapshot:
    """Immutable view of a store; what the engine reads from."""
    ontology: Ontology = field(compare=False)
    situations: Mapping[str, Situation] = field(default_factory=dict)
    base: Mapping[str, FrozenSet[FactLiteral]] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StoreSnapshot):
            return NotImplemented
        return dict(self.situations) == dict(other.situations) and dict(self.base) == dict(other.base)

    def __hash__(self) -> int:
        return hash(frozenset(self.situations))

    def situation(self, sid: str) -> Situation:
        try:
            return self.situations[sid]
        except KeyError:
            raise ValidationError(f"unknown situation '{sid}'") from None

    def has_situation(self, sid: str) -> bool:
        return sid in self.situations

    def base_facts(self, sid: str) -> FrozenSet[FactLiteral]:
        self.situation(sid)
        return self.base.get(sid, frozenset())

    def ancestors(self, sid: str) -> List[str]:
        """Chain from the root base situation down to sid (inclusive)."""
        chain = [sid]
        current = self.situation(sid)
        while current.parent is not None:
            chain.append(current.parent)
            current = self.situation(current.parent)
        chain.reverse()
        return chain

    def children(self, sid: str) -> List[str]:
        return sorted(s.id for s in self.situations.values() if s.parent == sid)

    def descendants(self, sid: str) -> List[str]:
        found: List[str] = []
        frontier = [sid]
        while frontier:
            current = frontier.pop()
            for child in self.children(current):
                found.append(child)
                frontier.append(child)
        return sorted(found)

    def situations_in_order(self) -> List[str]:
        """Parents before children; ties broken by id."""
        ordered: List[str] = []
        roots = sorted(s.id for s in self.situations.values() if s.parent is None)
        stack = list(reversed(roots))
        while stack:
            current = stack.pop()
            ordered.append(current)
            stack.extend(reversed(self.children(current)))
        return ordered

    def rigid_facts(self) -> FrozenSet[FactLiteral]:
        """Rigid holds facts from every situation."""
        rigid = set()
        for facts in self.base.values():
            for fact in facts:
                if isinstance(fact, Holds) and (
                    self.ontology.kind_of(fact.predicate) == PredicateKind.RIGID
                ):
                    rigid.add(fact)
        return frozenset(rigid)

    def resolve_situation(self, term: Term) -> Optional[str]:
        """Id of a ground situation term, or None if it names no known situation."""
        if isinstance(term, Constant):
            return term.symbol if term.symbol in self.situations else None
        if is_do_term(term):
            parent = self.resolve_situation(term.args[1])
            if parent is None:
                return None
            sid = Situation.successor(Atom.from_term(term.args[0]), parent).id
            return sid if sid in self.situations else None
        return None


class FactStore:
    """
    Mutable populated model.

    Operations:
        - add_situation(name) -> id
        - assert_fact(literal, sit) -> store
        - successor(action, parent) -> id
        - facts_in(sit) -> base and derived facts
        - snapshot() -> StoreSnapshot
    """

    def __init__(self, ontology: Ontology, base_situations: Iterable[str] = ()):
        self.ontology = ontology
        self._situations: Dict[str, Situation] = {}
        self._base: Dict[str, Set[FactLiteral]] = {}
        self._derived: Dict[str, FrozenSet[FactLiteral]] = {}
        self._lock = threading.RLock()

        for name in base_situations:
            self.add_situation(name)

    # ------------------------------------------------------------------
    # situations

    def add_situation(self, name: str) -> str:
        """Create a base situation (idempotent)."""
        situation = Situation.base(name)
        with self._lock:
            if situation.id not in self._situations:
                self._situations[situation.id] = situation
                self._base[situation.id] = set()
                logger.debug(f"Added base situation {situation.id}")
        return situation.id

    def has_situation(self, sid: str) -> bool:
        return sid in self._situations

    def situation(self, sid: str) -> Situation:
        try:
            return self._situations[sid]
        except KeyError:
            raise ValidationError(f"unknown situation '{sid}'") from None

    @property
    def situation_ids(self) -> List[str]:
        return self.snapshot().situations_in_order()

    def successor(self, action: Atom, parent: str) -> str:
        """
        Create (or return) do(action, parent) and record occurs(action, parent).

        Raises:
            ValidationError: non-ground action, unknown parent, or an action
                predicate not declared with kind action
        """
        if not is_ground_atom(action):
            raise ValidationError(f"successor situations require ground actions, got {action}")
        self.situation(parent)
        check_literal_kinds(Occurs(action, Constant(parent)), self.ontology)

        situation = Situation.successor(action, parent)
        with self._lock:
            existing = self._situations.get(situation.id)
            if existing is not None and existing != situation:
                raise ValidationError(
                    f"situation id '{situation.id}' already names a different situation"
                )
            if existing is None:
                self._situations[situation.id] = situation
                self._base[situation.id] = set()
                logger.debug(f"Created successor situation {situation.id}")
            self._add_base(Occurs(action, Constant(parent)), parent)
        return situation.id

    def resolve_situation(self, term: Term, create: bool = False) -> str:
        """
        Id for a ground situation term; with create=True, missing do(...)
        successors (and base constants) are created on the way.
        """
        if isinstance(term, Constant):
            if term.symbol not in self._situations:
                if not create:
                    raise ValidationError(f"unknown situation '{term.symbol}'")
                return self.add_situation(term.symbol)
            return term.symbol
        if is_do_term(term):
            parent = self.resolve_situation(term.args[1], create)
            action = Atom.from_term(term.args[0])
            if create:
                return self.successor(action, parent)
            sid = Situation.successor(action, parent).id
            self.situation(sid)
            return sid
        raise ValidationError(f"'{term}' is not a ground situation term")

    # ------------------------------------------------------------------
    # facts

    def assert_fact(self, literal: FactLiteral, sit: str) -> "FactStore":
        """
        Populate a predicate in a situation.

        The literal's own situation term is replaced by sit. Re-asserting is
        a no-op; derived facts of sit and its descendants are invalidated.

        Raises:
            ValidationError: non-ground or negated literal, undeclared
                predicate, kind mismatch, unknown situation
        """
        if not isinstance(literal, (Holds, Occurs)):
            raise ValidationError(f"only holds/occurs literals can be asserted, got {literal}")
        if literal.negated:
            raise ValidationError(f"cannot assert a negated literal: {literal}")
        placed = literal.at(Constant(sit))
        if not is_ground_literal(placed):
            raise ValidationError(f"fact {placed} is not ground")
        check_literal_kinds(placed, self.ontology)
        self.situation(sit)
        with self._lock:
            self._add_base(placed, sit)
        return self

    def _add_base(self, literal: FactLiteral, sit: str) -> None:
        facts = self._base[sit]
        if literal in facts:
            return
        facts.add(literal)
        if isinstance(literal, Holds) and (
            self.ontology.kind_of(literal.predicate) == PredicateKind.RIGID
        ):
            self._derived.clear()
        else:
            self._invalidate(sit)

    def _invalidate(self, sit: str) -> None:
        stale = [sit] + self.snapshot().descendants(sit)
        for sid in stale:
            self._derived.pop(sid, None)

    def load_ground_facts(self, facts: Iterable[FactLiteral]) -> int:
        """Assert program facts, creating named and do(...) situations as needed."""
        count = 0
        for fact in facts:
            sid = self.resolve_situation(fact.situation, create=True)
            self.assert_fact(fact, sid)
            count += 1
        return count

    def base_facts(self, sit: str) -> FrozenSet[FactLiteral]:
        self.situation(sit)
        return frozenset(self._base[sit])

    def derived_facts(self, sit: str) -> Optional[FrozenSet[FactLiteral]]:
        """Cached saturation result, or None when stale/never computed."""
        self.situation(sit)
        return self._derived.get(sit)

    def record_derived(self, sit: str, facts: Iterable[FactLiteral]) -> None:
        """Engine hook: store derived facts (kept disjoint from base facts)."""
        with self._lock:
            self._derived[sit] = frozenset(facts) - frozenset(self._base[sit])

    def facts_in(self, sit: str) -> FrozenSet[FactLiteral]:
        """Base plus derived facts of sit; never mutates."""
        self.situation(sit)
        return frozenset(self._base[sit]) | self._derived.get(sit, frozenset())

    def fact_count(self) -> int:
        return sum(len(facts) for facts in self._base.values())

    def snapshot(self) -> StoreSnapshot:
        with self._lock:
            return StoreSnapshot(
                ontology=self.ontology,
                situations=dict(self._situations),
                base={sid: frozenset(facts) for sid, facts in self._base.items()},
            )

    def with_ontology(self, ontology: Ontology) -> "FactStore":
        """Copy of the store's data under a different ontology."""
        clone = FactStore(ontology)
        with self._lock:
            clone._situations = dict(self._situations)
            clone._base = {sid: set(facts) for sid, facts in self._base.items()}
        return clone

    def __repr__(self) -> str:
        return (
            f"FactStore(situations={len(self._situations)}, "
            f"base_facts={self.fact_count()})"
        )


def situation_pairs(store: FactStore) -> List[Tuple[str, Optional[str]]]:
    """(id, parent) pairs in topological order, for display."""
    snap = store.snapshot()
    return [(sid, snap.situation(sid).parent) for sid in snap.situations_in_order()]
