"""
Competency suites: named queries with expected outcomes, run as the
ontology's acceptance tests.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Union

from theoria.engine.evaluator import DEFAULT_MAX_ROUNDS, Evaluator
from theoria.engine.query import Answer, answers, check_query
from theoria.kernel import NamedQuery, Ontology
from theoria.store import FactStore, StoreSnapshot
from theoria.utils.validation import TheoriaError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuestionResult:
    """Outcome of one competency question."""
    name: str
    expect: bool
    satisfied: bool
    answers: List[Answer] = field(default_factory=list, compare=False)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.satisfied == self.expect

    @property
    def outcome(self) -> str:
        if self.error is not None:
            return "error"
        return "sat" if self.satisfied else "unsat"


@dataclass(frozen=True)
class CompetencyReport:
    results: List[QuestionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[QuestionResult]:
        return [r for r in self.results if not r.passed]

    def summary(self) -> str:
        total = len(self.results)
        return f"{total - len(self.failures)}/{total} competency questions passed"


def check_competency(
    store: Union[FactStore, StoreSnapshot],
    ontology: Ontology,
    queries: Optional[Iterable[NamedQuery]] = None,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> CompetencyReport:
    """
    Run every named query and compare against its expectation.

    Questions without an expect annotation are expected to be sat. Query
    errors are reported as failures, never raised.
    """
    snapshot = store.snapshot() if isinstance(store, FactStore) else store
    questions = list(ontology.queries if queries is None else queries)
    evaluator: Optional[Evaluator] = None

    results: List[QuestionResult] = []
    for question in questions:
        expect = True if question.expect is None else question.expect
        try:
            check_query(question.body, ontology, snapshot)
            # built lazily so a non-stratifiable ontology fails per question
            if evaluator is None:
                evaluator = Evaluator(snapshot, ontology, max_rounds)
            found = answers(evaluator, question.body)
        except TheoriaError as e:
            logger.warning(f"Competency question {question.name} failed to run: {e}")
            results.append(QuestionResult(question.name, expect, False, error=str(e)))
            continue
        results.append(QuestionResult(question.name, expect, bool(found), found))

    report = CompetencyReport(results)
    logger.info(report.summary())
    return report
