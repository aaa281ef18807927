"""Core domain types shared by every other package.

Terms, atoms, literals, axioms, ontologies, situations and substitutions.
All values are immutable after construction.
"""

from theoria.kernel.axioms import (
    CLIPS_PREDICATE,
    Axiom,
    Declaration,
    NamedQuery,
    Ontology,
    PredicateKind,
    check_axiom,
    check_literal_kinds,
    check_query_body,
    check_situation_actions,
)
from theoria.kernel.literals import (
    DO_FUNCTOR,
    Equality,
    FactLiteral,
    Holds,
    Literal,
    Occurs,
    do_term,
    is_ground_literal,
    is_positive_atomic,
    literal_variables,
)
from theoria.kernel.situations import (
    Base,
    Do,
    Situation,
    action_slug,
    canonical_situation_id,
    is_do_term,
    parse_situation_id,
)
from theoria.kernel.terms import (
    Atom,
    Compound,
    Constant,
    Term,
    Variable,
    atom_variables,
    is_ground,
    is_ground_atom,
    term_text,
    term_variables,
)
from theoria.kernel.unify import EMPTY, Substitution, apply, compose, unify

__all__ = [
    # Terms
    "Term",
    "Constant",
    "Variable",
    "Compound",
    "Atom",
    "term_variables",
    "atom_variables",
    "is_ground",
    "is_ground_atom",
    "term_text",

    # Literals
    "Literal",
    "FactLiteral",
    "Holds",
    "Occurs",
    "Equality",
    "DO_FUNCTOR",
    "do_term",
    "is_ground_literal",
    "is_positive_atomic",
    "literal_variables",

    # Ontology
    "CLIPS_PREDICATE",
    "PredicateKind",
    "Declaration",
    "Axiom",
    "NamedQuery",
    "Ontology",
    "check_axiom",
    "check_literal_kinds",
    "check_query_body",
    "check_situation_actions",

    # Situations
    "Base",
    "Do",
    "Situation",
    "action_slug",
    "canonical_situation_id",
    "parse_situation_id",
    "is_do_term",

    # Substitutions
    "Substitution",
    "EMPTY",
    "apply",
    "compose",
    "unify",
]
