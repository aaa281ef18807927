"""Parsed program representation."""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from theoria.kernel import (
    Axiom,
    Constant,
    Declaration,
    FactLiteral,
    NamedQuery,
    Ontology,
    Term,
)


@dataclass(frozen=True)
class GroundFact:
    literal: FactLiteral

    @property
    def situation(self) -> Term:
        return self.literal.situation

    @property
    def situation_id(self) -> Optional[str]:
        """Id when the situation is a plain constant; None for do(...) terms."""
        sit = self.literal.situation
        return sit.symbol if isinstance(sit, Constant) else None


Item = Union[Declaration, Axiom, GroundFact, NamedQuery]


@dataclass(frozen=True)
class SourceProgram:
    """Items in source order; spans[i] is the (line, column) of items[i]."""
    items: Tuple[Item, ...] = ()
    spans: Tuple[Tuple[int, int], ...] = field(default=(), compare=False)
    path: str = field(default="<input>", compare=False)

    def span_of(self, index: int) -> Tuple[int, int]:
        return self.spans[index] if index < len(self.spans) else (0, 0)

    @property
    def declarations(self) -> Tuple[Declaration, ...]:
        return tuple(i for i in self.items if isinstance(i, Declaration))

    @property
    def axioms(self) -> Tuple[Axiom, ...]:
        return tuple(i for i in self.items if isinstance(i, Axiom))

    @property
    def facts(self) -> Tuple[GroundFact, ...]:
        return tuple(i for i in self.items if isinstance(i, GroundFact))

    @property
    def queries(self) -> Tuple[NamedQuery, ...]:
        return tuple(i for i in self.items if isinstance(i, NamedQuery))

    def to_ontology(self, base: Optional[Ontology] = None) -> Ontology:
        """Fold the program into an ontology, on top of base if given."""
        ontology = Ontology(
            declarations=self.declarations,
            axioms=self.axioms,
            ground_facts=tuple(f.literal for f in self.facts),
            queries=self.queries,
        )
        return base.merge(ontology) if base is not None else ontology
