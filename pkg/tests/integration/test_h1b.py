"""
End-to-end reasoning over the auditor ontology: the enforcement
conclusion, the bridge derivations, the design contrast and the
competency suite.
"""

import pytest

from theoria.dsl import parse_program
from theoria.engine import (
    answers_from_json,
    answers_to_json,
    check_competency,
    naive_saturate,
    proof_from_json,
    proof_to_json,
    prove,
    query,
    saturate,
    verify_proof,
)
from theoria.engine.proofs import EQUALITY, FRAME
from theoria.kernel import Atom, Compound, Constant, Holds
from theoria.library import Scenario, build_scenario, design_cells, enforcement_fact, run_design
from theoria.store import FactStore
from tests.conftest import AUDITED

EVIDENCE_SC = Compound(
    "sk_bridge_preference_B",
    (Constant("client1"), Constant("opportunistic"), Constant("sc")),
)


def fact(predicate, *args, sit=AUDITED):
    return Holds(Atom(predicate, tuple(Constant(a) for a in args)), Constant(sit))


class TestEnforcement:
    """The principles-based / principles-oriented / opportunistic cell."""

    def test_enforcement_is_derived(self, h1b_store, auditor_ontology):
        """Test that enforcement is derived after the audit."""
        result = saturate(h1b_store, auditor_ontology, AUDITED)
        assert result.holds(enforcement_fact(AUDITED))

    def test_enforcement_proof(self, h1b_store, auditor_ontology):
        """Test the proof of enforcement."""
        node = prove(h1b_store, auditor_ontology, enforcement_fact(AUDITED))
        assert node.rule == "h1b"
        assert node.situation == AUDITED
        assert len(node.premises) == 6
        preference = node.premises[4]
        assert preference.conclusion == fact(
            "client_preferred_treatment", "client1", "opportunistic", sit="sc"
        )
        assert preference.situation == "sc"
        assert node.premises[5].rule == EQUALITY
        assert verify_proof(node, auditor_ontology, h1b_store.snapshot())

    def test_not_derived_in_base_situation(self, h1b_store, auditor_ontology):
        """Test that enforcement does not hold before the audit."""
        result = saturate(h1b_store, auditor_ontology, "sc")
        assert not result.holds(enforcement_fact("sc"))

    def test_rules_based_variant(self, rules_based_store, auditor_ontology):
        """Test that the rules-based variant derives no enforcement."""
        result = prove(rules_based_store, auditor_ontology, enforcement_fact(AUDITED))
        assert not result

    def test_design_contrast(self, auditor_ontology):
        """Test the design table over the auditor ontology."""
        rows = run_design(auditor_ontology)
        assert [r.enforces_nonopportunistic for r in rows] == [
            False, False, False, False, True, False
        ]


class TestBridges:
    """Bridge axioms into the BDI vocabulary."""

    def test_deliberate_theory_reference(self, h1b_store, auditor_ontology):
        """Test the derived theory reference."""
        result = saturate(h1b_store, auditor_ontology, AUDITED)
        assert result.proof(fact("deliberate_theory_reference", "ifrs")).rule == "bridge_standard"

    def test_desire(self, h1b_store, auditor_ontology):
        """Test the derived auditor desire."""
        result = saturate(h1b_store, auditor_ontology, AUDITED)
        assert result.proof(fact("desire", "principles_oriented")).rule == "bridge_orientation"

    def test_evidence_has_skolem_belief(self, h1b_store, auditor_ontology):
        """Test that evidence names a Skolem belief."""
        answers = query(
            h1b_store,
            auditor_ontology,
            "holds(has_evidence(B, client_preferred_treatment, opportunistic), sc)",
        )
        assert len(answers) == 1
        (variable, belief), = answers[0].bindings.bindings
        assert (variable.name, belief) == ("B", EVIDENCE_SC)
        assert answers[0].bindings_text()["B"].startswith("sk_")

    def test_evidence_inherited_and_rederived(self, h1b_store, auditor_ontology):
        """Test that evidence carries over and is derived again."""
        answers = query(
            h1b_store,
            auditor_ontology,
            f"holds(has_evidence(B, client_preferred_treatment, opportunistic), {AUDITED})",
        )
        beliefs = [a.bindings_text()["B"] for a in answers]
        assert beliefs == [
            f"sk_bridge_preference_B(client1, opportunistic, {AUDITED})",
            "sk_bridge_preference_B(client1, opportunistic, sc)",
        ]

    def test_preference_persists_into_audit(self, h1b_store, auditor_ontology):
        """Test that the client preference carries into the audit."""
        result = saturate(h1b_store, auditor_ontology, AUDITED)
        node = result.proof(fact("client_preferred_treatment", "client1", "opportunistic"))
        assert node.rule == FRAME

    def test_every_derivation_replays(self, h1b_store, auditor_ontology):
        """Test that every derivation replays."""
        snapshot = h1b_store.snapshot()
        for sid in snapshot.situations_in_order():
            result = saturate(snapshot, auditor_ontology, sid)
            for derived in result.derived:
                assert verify_proof(result.proof(derived), auditor_ontology, snapshot), derived

    @pytest.mark.parametrize("scenario", design_cells(), ids=lambda s: s.name)
    def test_matches_brute_force(self, scenario, auditor_ontology):
        """Test the scenario models against brute-force grounding."""
        snapshot = build_scenario(scenario, auditor_ontology).snapshot()
        for sid in snapshot.situations_in_order():
            derived = saturate(snapshot, auditor_ontology, sid).derived
            assert derived == naive_saturate(snapshot, auditor_ontology, sid)


class TestSerialization:
    """JSON forms of Skolem-bearing answers and proofs."""

    def test_answers_round_trip(self, h1b_store, auditor_ontology):
        """Test the JSON form of scenario answers."""
        answers = query(
            h1b_store,
            auditor_ontology,
            "holds(has_evidence(B, client_preferred_treatment, P), S)",
        )
        data = answers_to_json(answers, with_proofs=True)
        assert answers_from_json(data, auditor_ontology) == answers

    def test_proof_round_trip(self, h1b_store, auditor_ontology):
        """Test the JSON form of scenario proofs."""
        node = prove(h1b_store, auditor_ontology, enforcement_fact(AUDITED))
        data = proof_to_json(node)
        assert data["fact"] == (
            f"holds(enforces_preferred_treatment(auditor1, nonopportunistic), {AUDITED})"
        )
        assert proof_from_json(data, auditor_ontology) == node


class TestCompetency:
    """The bundled competency questions as acceptance tests."""

    def test_suite_passes_on_h1b(self, h1b_store, auditor_ontology):
        """Test that the competency suite passes on the audit scenario."""
        report = check_competency(h1b_store, auditor_ontology)
        assert report.passed, [r.name for r in report.failures]
        assert report.summary() == "5/5 competency questions passed"

    def test_enforcement_question_unsat_on_rules_based(self, rules_based_store, auditor_ontology):
        """Test that the enforcement question fails on the rules-based variant."""
        report = check_competency(rules_based_store, auditor_ontology)
        assert [r.name for r in report.failures] == ["auditor_enforces_nonopportunistic"]
        assert report.failures[0].outcome == "unsat"

    def test_expect_unsat_on_rules_based(self, rules_based_store, auditor_ontology):
        """Test an unsat expectation on the rules-based variant."""
        question = auditor_ontology.query("auditor_enforces_nonopportunistic")
        flipped = type(question)(question.name, question.body, False)
        report = check_competency(rules_based_store, auditor_ontology, [flipped])
        assert report.passed

    def test_empty_store_fails_sat_questions(self, auditor_ontology):
        """Test that an empty store fails the sat questions."""
        report = check_competency(FactStore(auditor_ontology), auditor_ontology)
        assert not report.passed
        assert len(report.failures) == 5

    def test_broken_question_reported_not_raised(self, h1b_store, auditor_ontology):
        """Test that a broken question is reported as an error."""
        question = auditor_ontology.query("ifrs_is_accounting_standard")
        broken = type(question)(
            "elsewhere",
            (Holds(Atom("auditor", (Constant("auditor1"),)), Constant("nowhere")),),
            True,
        )
        report = check_competency(h1b_store, auditor_ontology, [broken])
        assert report.failures[0].outcome == "error"
        assert "unknown situation" in report.failures[0].error

    def test_unstratifiable_ontology_reported_per_question(self):
        """Test that a negative cycle fails each question instead of raising."""
        ontology = parse_program(
            "decl p/1.\ndecl q/1.\n"
            "axiom loop: forall X, S: holds(q(X), S) & not holds(p(X), S) -> holds(p(X), S).\n"
            "query some_p: holds(p(X), S) expect sat.\n"
            "query no_q: holds(q(X), S) expect unsat.\n"
        ).to_ontology()
        report = check_competency(FactStore(ontology, ["s0"]), ontology)
        assert [r.name for r in report.results] == ["some_p", "no_q"]
        assert [r.outcome for r in report.results] == ["error", "error"]
        assert all("negative cycle: p" in r.error for r in report.results)

    def test_scenario_variants_are_independent(self, auditor_ontology):
        """Test that scenario variants do not share facts."""
        first = build_scenario(Scenario.of("principles_based", "principles_oriented"))
        second = build_scenario(Scenario.of("rules_based", "principles_oriented"))
        assert first.snapshot() != second.snapshot()
        assert check_competency(first, auditor_ontology).passed
        assert not check_competency(second, auditor_ontology).passed
