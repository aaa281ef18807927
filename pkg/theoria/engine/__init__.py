"""Inference engine.

Skolemization, stratification, semi-naive saturation with the built-in
frame rule, query answering, proof trees and a brute-force oracle.

Usage:
    from theoria.engine import saturate, query, prove

    result = saturate(store, ontology, "sc")
    for answer in query(store, ontology, "holds(auditor(X), S)"):
        print(answer.bindings_text())
"""

from theoria.engine.competency import CompetencyReport, QuestionResult, check_competency
from theoria.engine.compiler import (
    CompiledRule,
    compile_ontology,
    compile_rules,
    plan_body,
    skolem_functor,
    skolemize,
)
from theoria.engine.evaluator import (
    DEFAULT_MAX_ROUNDS,
    Evaluator,
    Saturation,
    saturate,
    saturate_all,
    saturate_many,
)
from theoria.engine.matching import match_situation, match_term, situation_id_of
from theoria.engine.naive import naive_saturate
from theoria.engine.proofs import (
    BUILTIN_RULES,
    NotDerivable,
    NotDerivableType,
    ProofNode,
    proof_from_json,
    proof_to_json,
    verify_proof,
)
from theoria.engine.query import (
    Answer,
    answer_to_json,
    answers_from_json,
    answers_to_json,
    prove,
    query,
)
from theoria.engine.stratify import predicate_strata, stratify

__all__ = [
    # Compilation
    "CompiledRule",
    "skolemize",
    "skolem_functor",
    "plan_body",
    "compile_rules",
    "compile_ontology",
    "stratify",
    "predicate_strata",

    # Saturation
    "DEFAULT_MAX_ROUNDS",
    "Evaluator",
    "Saturation",
    "saturate",
    "saturate_all",
    "saturate_many",
    "naive_saturate",
    "match_term",
    "match_situation",
    "situation_id_of",

    # Proofs
    "ProofNode",
    "NotDerivable",
    "NotDerivableType",
    "BUILTIN_RULES",
    "verify_proof",
    "proof_to_json",
    "proof_from_json",

    # Queries
    "Answer",
    "query",
    "prove",
    "answer_to_json",
    "answers_to_json",
    "answers_from_json",
    "QuestionResult",
    "CompetencyReport",
    "check_competency",
]
