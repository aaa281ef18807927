"""
Scenario harness for the 2 x 3 auditor design.

Manipulations:
    standard type        rules_based | principles_based
    auditor orientation  rules_oriented | principles_oriented | client_oriented
    client preference    opportunistic | nonopportunistic

Each scenario becomes a store with two situations:

    sc                              client1 prefers the given treatment
    do(audits(auditor1, client1), sc)
                                    ifrs with the given standard type,
                                    auditor1 with the given orientation
"""

import asyncio
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional

from theoria.engine import DEFAULT_MAX_ROUNDS, saturate_many
from theoria.kernel import Atom, Constant, Holds, Ontology, do_term
from theoria.library.bundles import load_builtin
from theoria.store import FactStore
from theoria.utils.validation import ValidationError

logger = logging.getLogger(__name__)

STANDARD_TYPES = ("rules_based", "principles_based")
AUDITOR_ORIENTATIONS = ("rules_oriented", "principles_oriented", "client_oriented")
CLIENT_PREFERENCES = ("opportunistic", "nonopportunistic")

BASE_SITUATION = "sc"
AUDITOR = "auditor1"
CLIENT = "client1"
STANDARD = "ifrs"


def _check_choice(value: str, choices: Iterable[str], what: str) -> None:
    choices = tuple(choices)
    if value not in choices:
        raise ValidationError(f"invalid {what} '{value}' (valid values: {', '.join(choices)})")


@dataclass(frozen=True)
class Scenario:
    """One cell of the design."""
    name: str
    standard_type: str
    auditor_orientation: str
    client_preference: str = "opportunistic"

    def __post_init__(self):
        _check_choice(self.standard_type, STANDARD_TYPES, "standard type")
        _check_choice(self.auditor_orientation, AUDITOR_ORIENTATIONS, "auditor orientation")
        _check_choice(self.client_preference, CLIENT_PREFERENCES, "client preference")

    @classmethod
    def of(
        cls,
        standard_type: str,
        auditor_orientation: str,
        client_preference: str = "opportunistic",
    ) -> "Scenario":
        name = f"{standard_type}/{auditor_orientation}/{client_preference}"
        return cls(name, standard_type, auditor_orientation, client_preference)


@dataclass(frozen=True)
class DesignRow:
    scenario: Scenario
    enforces_nonopportunistic: bool


def audit_action() -> Atom:
    return Atom("audits", (Constant(AUDITOR), Constant(CLIENT)))


def enforcement_fact(situation: str) -> Holds:
    """The enforcement axiom's conclusion for the scenario auditor."""
    return Holds(
        Atom("enforces_preferred_treatment", (Constant(AUDITOR), Constant("nonopportunistic"))),
        Constant(situation),
    )


def _fact(predicate: str, *args: str) -> Holds:
    return Holds(Atom(predicate, tuple(Constant(a) for a in args)), Constant(BASE_SITUATION))


def scenario_terminology(ontology: Optional[Ontology] = None) -> Ontology:
    """
    Declarations a scenario store validates against.

    Always the auditor terminology, extended with the declarations of
    ontology when they agree with it. Axioms and queries are left out.
    """
    terminology = Ontology(load_builtin("auditor").declarations)
    if ontology is None:
        return terminology
    try:
        return terminology.merge(Ontology(ontology.declarations))
    except ValidationError as e:
        logger.warning(f"Ignoring declarations that conflict with the auditor terminology: {e}")
        return terminology


def build_scenario(scenario: Scenario, ontology: Optional[Ontology] = None) -> FactStore:
    """
    Populated model for one manipulation.

    Args:
        scenario: design cell
        ontology: program whose extra declarations the store should also
            accept (see scenario_terminology)

    Returns:
        Store with situations sc and do(audits(auditor1, client1), sc)
    """
    store = FactStore(scenario_terminology(ontology), [BASE_SITUATION])
    store.assert_fact(
        _fact("client_preferred_treatment", CLIENT, scenario.client_preference), BASE_SITUATION
    )
    audited = store.successor(audit_action(), BASE_SITUATION)
    for fact in (
        _fact("accounting_standard", STANDARD),
        _fact("accounting_standard_type", STANDARD, scenario.standard_type),
        _fact("auditor", AUDITOR),
        _fact("has_auditor_orientation", AUDITOR, scenario.auditor_orientation),
    ):
        store.assert_fact(fact, audited)
    logger.debug(f"Built scenario {scenario.name}: {store}")
    return store


def audited_situation(store: FactStore) -> str:
    """Id of the successor situation of a scenario store."""
    return store.resolve_situation(do_term(audit_action(), Constant(BASE_SITUATION)))


def design_cells(client_preference: str = "opportunistic") -> List[Scenario]:
    """All six manipulations, standard type major."""
    return [
        Scenario.of(standard, orientation, client_preference)
        for standard in STANDARD_TYPES
        for orientation in AUDITOR_ORIENTATIONS
    ]


async def run_design_async(
    ontology: Ontology,
    client_preference: str = "opportunistic",
    scenarios: Optional[Iterable[Scenario]] = None,
    concurrency: int = 1,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> List[DesignRow]:
    """
    Saturate the audited situation of every manipulation and report
    whether the enforcement conclusion is derived there.

    Cells are independent stores; at most `concurrency` of them saturate
    at once, each on a worker thread. Rows keep the order of the cells.
    """
    cells = list(scenarios) if scenarios is not None else design_cells(client_preference)
    semaphore = asyncio.Semaphore(max(1, concurrency))

    async def run(scenario: Scenario) -> DesignRow:
        store = build_scenario(scenario, ontology)
        audited = audited_situation(store)
        async with semaphore:
            results = await saturate_many(
                store.snapshot(), ontology, [audited], concurrency=1, max_rounds=max_rounds
            )
        return DesignRow(scenario, enforcement_fact(audited) in results[audited].proofs)

    rows = list(await asyncio.gather(*(run(scenario) for scenario in cells)))
    logger.info(
        f"Design run: {sum(r.enforces_nonopportunistic for r in rows)}/{len(rows)} cells enforce"
    )
    return rows


def run_design(
    ontology: Ontology,
    client_preference: str = "opportunistic",
    scenarios: Optional[Iterable[Scenario]] = None,
    concurrency: int = 1,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> List[DesignRow]:
    """
    Blocking wrapper around run_design_async.

    Any ontology is accepted: an ontology without the enforcement axiom
    simply reports every cell as false.
    """
    return asyncio.run(
        run_design_async(ontology, client_preference, scenarios, concurrency, max_rounds)
    )
