"""Command-line front-end, driven through main() with captured streams."""

import io
import json

import pytest

from theoria.cli import EXIT_EXPECTATION, EXIT_IO, EXIT_OK, EXIT_USAGE, Repl, main
from theoria.dsl import parse_program
from theoria.library import export_builtin
from theoria.store import FactStore
from theoria.utils.validation import StratificationError, ValidationError
from tests.conftest import AUDITED

H1B = "principles_based,principles_oriented"
RULES = "rules_based,principles_oriented"
ENFORCES = "holds(enforces_preferred_treatment(A, nonopportunistic), S)"


@pytest.fixture(autouse=True)
def quiet_env(monkeypatch, tmp_path):
    for name in ("THEORIA_LOG_LEVEL", "THEORIA_DEBUG", "THEORIA_LOG_FILE", "THEORIA_MAX_ROUNDS"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("THEORIA_NO_COLOR", "1")
    # No config/theoria.yaml or .env from the checkout.
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    """theoria check"""

    def test_files_in_any_order(self, capsys, auditor_files, auditor_ontology):
        """Test that bundle files load in any order."""
        code, out, _ = run(capsys, "check", str(auditor_files["auditor"]), str(auditor_files["bdi"]))
        assert code == EXIT_OK
        assert out == (
            f"ok: {len(auditor_ontology.declarations)} declarations, "
            f"{len(auditor_ontology.axioms)} axioms, 0 facts, "
            f"{len(auditor_ontology.queries)} queries, 1 strata\n"
        )

    def test_json(self, capsys, auditor_files):
        """Test the JSON output of check."""
        code, out, _ = run(
            capsys, "check", "--json", str(auditor_files["bdi"]), str(auditor_files["auditor"])
        )
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["ok"] is True
        assert data["axioms"] == 4

    def test_json_flag_before_command(self, capsys):
        """Test the global JSON flag before the command."""
        code, out, _ = run(capsys, "--json", "check", "--builtin", "bdi")
        assert code == EXIT_OK
        assert json.loads(out)["declarations"] == 4

    def test_missing_file(self, capsys):
        """Test the exit code for a missing file."""
        code, out, err = run(capsys, "check", "/nonexistent/theory.onto")
        assert code == EXIT_IO
        assert out == ""
        assert err.startswith("error:")

    def test_parse_error_location(self, capsys, tmp_path):
        """Test that parse errors print their location."""
        path = tmp_path / "bad.onto"
        path.write_text("decl p/1.\nfact holds(q(a), s0).\n", encoding="utf-8")
        code, _, err = run(capsys, "check", str(path))
        assert code == EXIT_USAGE
        assert f"{path}:2:12:" in err

    def test_negative_cycle(self, capsys, tmp_path):
        """Test that a negative cycle is reported."""
        path = tmp_path / "cycle.onto"
        path.write_text(
            "decl p/1.\ndecl q/1.\n"
            "axiom loop: forall X, S: holds(q(X), S) & not holds(p(X), S) -> holds(p(X), S).\n",
            encoding="utf-8",
        )
        code, _, err = run(capsys, "check", str(path))
        assert code == EXIT_USAGE
        assert "negative cycle: p" in err

    def test_unused_declaration_warns(self, capsys, tmp_path):
        """Test the warning for an unused declaration."""
        path = tmp_path / "lonely.onto"
        path.write_text("decl lonely/1.\n", encoding="utf-8")
        code, _, err = run(capsys, "check", str(path))
        assert code == EXIT_OK
        assert "lonely/1 is declared but never used" in err

    def test_unknown_command(self, capsys):
        """Test the exit code for an unknown command."""
        code, _, _ = run(capsys, "frobnicate")
        assert code == EXIT_USAGE

    def test_bad_config(self, capsys, tmp_path):
        """Test the exit code for an invalid config file."""
        config = tmp_path / "theoria.yaml"
        config.write_text("engine:\n  max_rounds: 0\n", encoding="utf-8")
        code, _, err = run(capsys, "--config", str(config), "check", "--builtin", "bdi")
        assert code == EXIT_USAGE
        assert "max_rounds" in err


class TestQuery:
    """theoria query"""

    def test_scenario_json(self, capsys):
        """Test query output for a scenario in JSON."""
        code, out, _ = run(capsys, "query", ENFORCES, "--scenario", H1B, "--json")
        assert code == EXIT_OK
        assert json.loads(out) == {
            "answers": [
                {"bindings": {"A": "auditor1", "S": AUDITED}, "situation": AUDITED}
            ]
        }

    def test_text_output(self, capsys):
        """Test query output as text."""
        code, out, _ = run(capsys, "query", ENFORCES, "--scenario", H1B)
        assert code == EXIT_OK
        assert out == f"A = auditor1, S = {AUDITED}  @ {AUDITED}\n"

    def test_expectations(self, capsys):
        """Test query expectations in the exit code."""
        assert run(capsys, "query", ENFORCES, "--scenario", H1B, "--expect", "sat")[0] == EXIT_OK
        assert (
            run(capsys, "query", ENFORCES, "--scenario", H1B, "--expect", "unsat")[0]
            == EXIT_EXPECTATION
        )
        code, out, _ = run(capsys, "query", ENFORCES, "--scenario", RULES, "--expect", "unsat")
        assert code == EXIT_OK
        assert out == "no answers\n"

    def test_situation_filter(self, capsys):
        """Test restricting answers to one situation."""
        body = "holds(client_preferred_treatment(C, P), S)"
        _, out, _ = run(capsys, "query", body, "--scenario", H1B, "--json")
        assert len(json.loads(out)["answers"]) == 2
        _, out, _ = run(capsys, "query", body, "--scenario", H1B, "--json", "--situation", "sc")
        assert [a["situation"] for a in json.loads(out)["answers"]] == ["sc"]

    def test_unknown_situation_filter(self, capsys):
        """Test the error for an unknown situation filter."""
        code, _, err = run(capsys, "query", ENFORCES, "--scenario", H1B, "--situation", "elsewhere")
        assert code == EXIT_USAGE
        assert "unknown situation 'elsewhere'" in err

    def test_proofs(self, capsys):
        """Test query output with proofs."""
        code, out, _ = run(capsys, "query", ENFORCES, "--scenario", H1B, "--json", "--proofs")
        assert code == EXIT_OK
        proof = json.loads(out)["answers"][0]["proofs"][0]
        assert proof["rule"] == "h1b"
        assert len(proof["premises"]) == 6

    def test_bad_scenario_flag(self, capsys):
        """Test the error for an unknown scenario cell."""
        code, _, err = run(capsys, "query", ENFORCES, "--scenario", "principles_based")
        assert code == EXIT_USAGE
        assert "STANDARD,ORIENTATION" in err

    def test_facts_from_tables(self, capsys, tmp_path):
        """Test loading facts from CSV tables."""
        table = tmp_path / "orientations.csv"
        table.write_text("auditor,orientation\nJohn Jones,Principles Oriented\n", encoding="utf-8")
        mapping = tmp_path / "tables.map"
        mapping.write_text("orientations:has_auditor_orientation:auditor,orientation\n")
        code, out, _ = run(
            capsys,
            "query",
            "holds(has_auditor_orientation(A, O), S)",
            "--builtin", "auditor",
            "--facts", str(table),
            "--map", str(mapping),
            "--json",
        )
        assert code == EXIT_OK
        assert json.loads(out)["answers"] == [
            {
                "bindings": {"A": "john_jones", "O": "principles_oriented", "S": "sigma0"},
                "situation": "sigma0",
            }
        ]

    def test_facts_need_map(self, capsys, tmp_path):
        """Test that table facts need a mapping."""
        table = tmp_path / "orientations.csv"
        table.write_text("auditor,orientation\n", encoding="utf-8")
        code, _, err = run(
            capsys, "query", ENFORCES, "--builtin", "auditor", "--facts", str(table)
        )
        assert code == EXIT_USAGE
        assert "--map" in err


class TestProve:
    """theoria prove / trace"""

    def test_proof_tree(self, capsys):
        """Test the printed proof tree."""
        target = (
            "holds(enforces_preferred_treatment(auditor1, nonopportunistic), "
            "do(audits(auditor1, client1), sc))"
        )
        code, out, _ = run(capsys, "prove", target, "--scenario", H1B)
        assert code == EXIT_OK
        first = out.splitlines()[0]
        assert first == (
            f"holds(enforces_preferred_treatment(auditor1, nonopportunistic), {AUDITED})"
            f"  @ {AUDITED}  [h1b]"
        )
        assert "  holds(client_preferred_treatment(client1, opportunistic), sc)  @ sc" in out

    def test_trace_with_situation_suffix(self, capsys):
        """Test tracing a literal with an @ situation."""
        target = f"holds(desire(principles_oriented), S) @ {AUDITED}"
        code, out, _ = run(capsys, "trace", target, "--scenario", H1B, "--json")
        assert code == EXIT_OK
        assert json.loads(out)["rule"] == "bridge_orientation"

    def test_not_derivable(self, capsys):
        """Test the exit code for a literal that does not hold."""
        target = f"holds(enforces_preferred_treatment(auditor1, nonopportunistic), S) @ {AUDITED}"
        code, out, _ = run(capsys, "prove", target, "--scenario", RULES)
        assert code == EXIT_EXPECTATION
        assert out == "not derivable\n"

    def test_not_derivable_json(self, capsys):
        """Test the JSON error for a literal that does not hold."""
        target = "holds(auditor(nobody), sc)"
        code, out, _ = run(capsys, "prove", target, "--scenario", H1B, "--json")
        assert code == EXIT_EXPECTATION
        assert json.loads(out) == {"fact": target, "derivable": False}


class TestCompetencyAndScenarios:
    """theoria competency / scenario / export-builtin"""

    def test_competency_passes(self, capsys):
        """Test that the competency suite passes on the full design."""
        code, out, _ = run(capsys, "competency", "--scenario", H1B)
        assert code == EXIT_OK
        assert out.splitlines()[-1] == "5/5 competency questions passed"

    def test_competency_fails_on_rules_based(self, capsys):
        """Test that the suite fails on the rules-based variant."""
        code, out, _ = run(capsys, "competency", "--scenario", RULES, "--json")
        assert code == EXIT_EXPECTATION
        data = json.loads(out)
        failed = [q["name"] for q in data["questions"] if not q["passed"]]
        assert failed == ["auditor_enforces_nonopportunistic"]

    def test_scenario_all(self, capsys):
        """Test running every design cell."""
        code, out, _ = run(capsys, "scenario", "--all", "--json")
        assert code == EXIT_OK
        rows = json.loads(out)["rows"]
        assert len(rows) == 6
        assert [r["scenario"] for r in rows if r["enforces_nonopportunistic"]] == [
            "principles_based/principles_oriented/opportunistic"
        ]

    def test_scenario_table(self, capsys):
        """Test the design table output."""
        code, out, _ = run(capsys, "scenario", "--standard", "principles_based")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0].split() == [
            "standard_type",
            "auditor_orientation",
            "client_preference",
            "enforces_nonopportunistic",
        ]
        assert len(lines) == 5
        assert lines[3].split()[-1] == "true"

    def test_scenario_invalid_choice(self, capsys):
        """Test the error for an invalid preference."""
        code, _, err = run(capsys, "scenario", "--standard", "brules")
        assert code == EXIT_USAGE
        assert "invalid choice" in err

    def test_export_builtin(self, capsys, tmp_path):
        """Test exporting a built-in ontology."""
        code, out, _ = run(capsys, "export-builtin", "auditor")
        assert code == EXIT_OK
        assert out == export_builtin("auditor")

        target = tmp_path / "mine.onto"
        assert run(capsys, "export-builtin", "bdi", "-o", str(target))[0] == EXIT_OK
        assert target.read_text(encoding="utf-8") == export_builtin("bdi")

    def test_exported_bundle_checks(self, capsys, tmp_path):
        """Test that an exported bundle passes check."""
        target = tmp_path / "auditor.onto"
        run(capsys, "export-builtin", "auditor", "-o", str(target))
        code, out, _ = run(capsys, "check", "--builtin", "bdi", str(target))
        assert code == EXIT_OK
        assert out.startswith("ok: ")


class TestRepl:
    """Interactive session driven from a script."""

    SCRIPT = "\n".join(
        [
            "% family session",
            "decl parent/2",
            "decl ancestor/2.",
            "decl moves/1 kind action",
            "axiom base: forall X, Y, S: holds(parent(X, Y), S) -> holds(ancestor(X, Y), S)",
            "fact holds(parent(a, b), s0)",
            "query holds(ancestor(X, Y), S)",
            "trace holds(ancestor(a, b), s0) @ s0",
            "successor moves(a) @ s0",
            "situations",
            "bogus",
            "query holds(sibling(X), S)",
            "quit",
            "query holds(ancestor(X, Y), S)",
        ]
    )

    def session(self, test_config):
        ontology = parse_program("").to_ontology()
        return Repl(ontology, FactStore(ontology), test_config)

    def test_script(self, test_config):
        """Test running a REPL script."""
        stdout = io.StringIO()
        code = self.session(test_config).run(io.StringIO(self.SCRIPT + "\n"), stdout)
        assert code == 0
        lines = stdout.getvalue().splitlines()
        assert lines[:5] == ["ok", "ok", "ok", "ok", "ok: 1 fact(s)"]
        assert lines[5] == "X = a, Y = b, S = s0  @ s0"
        assert lines[6] == "holds(ancestor(a, b), s0)  @ s0  [base]"
        assert lines[7] == "  holds(parent(a, b), s0)  @ s0  [base-fact]"
        assert lines[8] == "do__moves_a__s0"
        assert lines[9:11] == ["s0", "do__moves_a__s0  (parent s0)"]
        assert lines[11] == "error: unknown command 'bogus' (try 'help')"
        assert lines[12].startswith("error: ")
        assert "undeclared predicate sibling/1" in lines[12]
        assert len(lines) == 13

    def test_bad_axiom_keeps_session(self, test_config):
        """Test that a bad axiom leaves the session usable."""
        repl = self.session(test_config)
        repl.execute("decl p/1")
        repl.execute("decl q/1")
        with pytest.raises(StratificationError, match="negative cycle"):
            repl.execute(
                "axiom loop: forall X, S: holds(q(X), S) & not holds(p(X), S) -> holds(p(X), S)"
            )
        assert repl.ontology.axioms == ()
        assert repl.execute("query holds(p(X), S)") == "no answers"

    def test_trace_needs_situation(self, test_config):
        """Test that trace in the REPL needs a situation."""
        repl = self.session(test_config)
        with pytest.raises(ValidationError, match="<term> @ <situation>"):
            repl.execute("trace holds(p(a), s0)")

    def test_situations_as_terms(self, test_config):
        """Test that SIT and PARENT may be ids or do(...) terms."""
        repl = self.session(test_config)
        for line in ("decl p/1", "decl moves/1 kind action", "fact holds(p(a), s0)"):
            repl.execute(line)
        assert repl.execute("successor moves(a) @ s0") == "do__moves_a__s0"
        nested = repl.execute("successor moves(b) @ do(moves(a), s0)")
        assert nested == "do__moves_b__do__moves_a__s0"
        traced = repl.execute("trace holds(p(a), s0) @ do(moves(a), s0)")
        assert traced.startswith("holds(p(a), do__moves_a__s0)")
        with pytest.raises(ValidationError, match="unknown situation"):
            repl.execute("successor moves(a) @ elsewhere")

    def test_help(self, test_config):
        """Test the REPL help text."""
        assert "successor ACTION @ PARENT" in self.session(test_config).execute("help")
