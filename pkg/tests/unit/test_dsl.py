"""Unit tests for the .onto lexer, parser and printer."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theoria.dsl import (
    parse_body,
    parse_literal,
    parse_program,
    parse_term,
    print_item,
    print_program,
    tokenize,
)
from theoria.kernel import (
    Atom,
    Compound,
    Constant,
    Declaration,
    Equality,
    Holds,
    NamedQuery,
    PredicateKind,
    Variable,
)
from theoria.library import export_builtin, load_builtin
from theoria.utils.validation import ParseError
from tests.conftest import TOY_PROGRAM
from tests.fixtures.programs import program_text


class TestLexer:
    """Test tokenization."""

    def test_comments_and_whitespace_dropped(self):
        """Test that comments and blank space produce no tokens."""
        tokens = tokenize("% header\ndecl p/1. % trailing\n")
        assert [t.value for t in tokens[:-1]] == ["decl", "p", "/", "1", "."]
        assert tokens[0].line == 2

    def test_arrow_is_one_token(self):
        """Test that '->' lexes as a single token."""
        values = [t.value for t in tokenize("a -> b")]
        assert "->" in values

    def test_unexpected_character(self):
        """Test the location of a stray character."""
        with pytest.raises(ParseError) as info:
            tokenize("decl p/1. $", path="bad.onto")
        assert info.value.line == 1
        assert info.value.column == 11
        assert str(info.value).startswith("bad.onto:1:11:")


class TestParser:
    """Test program parsing and static checks."""

    def test_toy_program(self):
        """Test parsing declarations and axioms of a small program."""
        program = parse_program(TOY_PROGRAM)
        assert len(program.declarations) == 5
        assert [a.name for a in program.axioms] == ["base_case", "step"]
        assert program.declarations[2] == Declaration("person", 1, PredicateKind.RIGID)

    def test_spans_follow_items(self):
        """Test that item spans report their starting line."""
        program = parse_program("decl p/1.\n\ndecl q/1.")
        assert program.span_of(1) == (3, 1)

    def test_fact_and_query(self):
        """Test parsing ground facts and named queries."""
        program = parse_program(
            "decl p/1.\nfact holds(p(a), s0).\nquery has_p: holds(p(X), S) expect unsat."
        )
        assert program.facts[0].literal == Holds(Atom("p", (Constant("a"),)), Constant("s0"))
        assert program.facts[0].situation_id == "s0"
        assert program.queries[0] == NamedQuery(
            "has_p", (Holds(Atom("p", (Variable("X"),)), Variable("S")),), False
        )

    def test_undeclared_predicate_location(self):
        """Test that an undeclared predicate is reported where it is used."""
        with pytest.raises(ParseError) as info:
            parse_program("decl p/1.\nfact holds(q(a), s0).", path="x.onto")
        error = info.value
        assert "undeclared predicate q/1" in error.message
        assert (error.line, error.column) == (2, 12)

    def test_expected_set(self):
        """Test the expected-token set of a syntax error."""
        with pytest.raises(ParseError) as info:
            parse_program("decl p/1 kind blue.")
        assert info.value.expected == ["'action'", "'fluent'", "'rigid'"]
        assert "(expected: 'action', 'fluent', 'rigid')" in str(info.value)

    def test_reserved_prefix(self):
        """Test that user symbols cannot use the Skolem prefix."""
        with pytest.raises(ParseError, match="reserved prefix"):
            parse_program("decl sk_p/1.")

    def test_reserved_prefix_allowed_when_rereading(self):
        """Test that Skolem symbols parse when re-reading output."""
        term = parse_term("sk_bridge_preference_B(client1, opportunistic, sc)", allow_reserved=True)
        assert isinstance(term, Compound)
        assert term.functor == "sk_bridge_preference_B"

    def test_fact_must_be_ground(self):
        """Test that facts reject variables."""
        with pytest.raises(ParseError, match="capital letter"):
            parse_program("decl p/1.\nfact holds(p(X), s0).")

    def test_fact_cannot_be_negated(self):
        """Test that facts reject negation."""
        with pytest.raises(ParseError, match="negated"):
            parse_program("decl p/1.\nfact not holds(p(a), s0).")

    def test_arity_mismatch(self):
        """Test the error for a predicate used with the wrong arity."""
        with pytest.raises(ParseError, match="arity 1"):
            parse_program("decl p/1.\nfact holds(p(a, b), s0).")

    def test_action_inside_holds(self):
        """Test that actions cannot appear inside holds."""
        with pytest.raises(ParseError, match="cannot appear inside holds"):
            parse_program("decl go/1 kind action.\nfact holds(go(a), s0).")

    def test_fluent_inside_do(self):
        """Test that fluents cannot appear as do(...) actions."""
        with pytest.raises(ParseError, match="cannot appear inside occurs or do"):
            parse_program("decl p/1.\nfact holds(p(a), do(p(a), s0)).")

    def test_conflicting_redeclaration(self):
        """Test the error for a predicate declared twice differently."""
        with pytest.raises(ParseError, match="already declared"):
            parse_program("decl p/1.\ndecl p/2.")

    def test_duplicate_axiom_name(self):
        """Test the error for two axioms with one name."""
        text = (
            "decl p/1.\ndecl q/1.\n"
            "axiom x: forall X, S: holds(p(X), S) -> holds(q(X), S).\n"
            "axiom x: forall X, S: holds(q(X), S) -> holds(p(X), S).\n"
        )
        with pytest.raises(ParseError, match="duplicate axiom name 'x'"):
            parse_program(text)

    def test_range_restriction_reported_at_axiom(self):
        """Test that unsafe variables are reported at their axiom."""
        text = (
            "decl p/1.\ndecl q/1.\ndecl r/1.\n"
            "axiom bad: forall X, Y, S: holds(p(X), S) & not holds(q(Y), S) -> holds(r(X), S).\n"
        )
        with pytest.raises(ParseError, match="range-restricted") as info:
            parse_program(text)
        assert (info.value.line, info.value.column) == (4, 1)

    def test_rigid_head_rejected(self):
        """Test that rigid predicates cannot be axiom heads."""
        text = (
            "decl e/1 kind rigid.\ndecl p/1.\n"
            "axiom bad: forall X, S: holds(p(X), S) -> holds(e(X), S).\n"
        )
        with pytest.raises(ParseError, match="cannot be derived"):
            parse_program(text)

    def test_existential_head(self):
        """Test parsing an existential in an axiom head."""
        program = parse_program(
            "decl p/1.\ndecl q/2.\n"
            "axiom ex: forall X, S: holds(p(X), S) -> exists B: holds(q(X, B), S)."
        )
        axiom = program.axioms[0]
        assert axiom.head_existentials == (Variable("B"),)
        assert print_item(axiom).endswith("-> exists B: holds(q(X, B), S).")

    def test_known_ontology_in_scope(self, bdi_ontology):
        """Test that declarations of a known ontology are visible."""
        program = parse_program("fact holds(desire(growth), s0).", known=bdi_ontology)
        assert program.facts[0].literal.predicate == "desire"


class TestBodies:
    """Test ad-hoc query and literal parsing."""

    def test_body_with_equality(self, auditor_ontology):
        """Test parsing a body with a situation equality."""
        body = parse_body(
            "holds(auditor(A), S) & S = do(audits(A, C), Sc) & "
            "holds(client_preferred_treatment(C, P), Sc).",
            auditor_ontology,
        )
        assert len(body) == 3
        assert isinstance(body[1], Equality)
        assert body[1].rhs == Compound(
            "do", (Compound("audits", (Variable("A"), Variable("C"))), Variable("Sc"))
        )

    def test_ground_equality(self, auditor_ontology):
        """Test parsing an equality between ground situations."""
        literal = parse_literal("sc = sc", auditor_ontology)
        assert literal == Equality(Constant("sc"), Constant("sc"))

    def test_unsafe_query(self, auditor_ontology):
        """Test that unsafe query variables are rejected."""
        with pytest.raises(ParseError, match="never bound"):
            parse_body("not holds(auditor(A), S)", auditor_ontology)

    def test_malformed_query(self, auditor_ontology):
        """Test the error for malformed query text."""
        with pytest.raises(ParseError):
            parse_body("holds(auditor(A) S)", auditor_ontology)


class TestPrinter:
    """Test the canonical printer."""

    @pytest.mark.parametrize("name", ["bdi", "auditor"])
    def test_bundle_round_trip(self, name, bdi_ontology):
        """Test that printing a bundle and parsing it again is stable."""
        known = bdi_ontology if name == "auditor" else None
        program = parse_program(export_builtin(name), known=known)
        printed = print_program(program)
        again = parse_program(printed, known=known)
        assert again == program
        assert print_program(again) == printed

    def test_printed_bundle_loads_like_original(self, auditor_ontology):
        """Test that the printed auditor bundle loads to the same ontology."""
        program = parse_program(export_builtin("auditor"), known=load_builtin("bdi"))
        assert program.to_ontology(load_builtin("bdi")) == auditor_ontology

    @settings(max_examples=100, deadline=None)
    @given(program_text())
    def test_fuzzed_round_trip(self, text):
        """Test print/parse stability on random programs."""
        program = parse_program(text)
        printed = print_program(program)
        again = parse_program(printed)
        assert again == program
        assert print_program(again) == printed


class TestErrorLocality:
    """Errors point at the line that introduced them."""

    LINES = TOY_PROGRAM.strip("\n").split("\n")

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, len(TOY_PROGRAM.strip("\n").split("\n")) - 1))
    def test_stray_character_reported_on_its_line(self, index):
        """Test that an inserted error is reported on its own line."""
        lines = list(self.LINES)
        lines[index] = "$ " + lines[index]
        with pytest.raises(ParseError) as info:
            parse_program("\n".join(lines), path="toy.onto")
        assert (info.value.line, info.value.column) == (index + 1, 1)
