"""
Command-line front-end.

    theoria check FILE...                    parse and validate a program
    theoria query 'BODY' [FILE...]           answer a query
    theoria prove 'LITERAL @ SIT' [FILE...]  print a proof tree (alias: trace)
    theoria competency [FILE...]             run the named competency questions
    theoria scenario --all                   run the 2 x 3 design
    theoria export-builtin NAME              print a bundled ontology
    theoria repl [FILE...]                   interactive session

Exit status: 0 success, 1 expectation failed, 2 usage/parse/validation
error, 3 I/O error. Data goes to stdout, diagnostics to stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from theoria.cli import output
from theoria.core import TheoriaConfig, load_config, validate_config
from theoria.dsl import parse_literal, parse_program
from theoria.engine import (
    check_competency,
    compile_ontology,
    prove,
    query,
    stratify,
)
from theoria.kernel import Holds, Literal, Occurs, Ontology
from theoria.library import (
    AUDITOR_ORIENTATIONS,
    CLIENT_PREFERENCES,
    STANDARD_TYPES,
    Scenario,
    build_scenario,
    bundle_names,
    design_cells,
    export_builtin,
    load_builtin,
    run_design,
)
from theoria.store import FactStore, ingest_csv, load_mapping_file
from theoria.utils import setup_logging
from theoria.utils.validation import ParseError, TheoriaError, ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(ValidationError):
    """Flags that parse but do not make sense together."""
    pass


# ----------------------------------------------------------------------
# program and store loading


def load_program(paths: Sequence[str], builtins: Sequence[str] = ()) -> Ontology:
    """
    Parse program files (and bundles) into one ontology.

    Files may use predicates declared in files listed after them: a file
    that fails on an undeclared predicate is retried once the others have
    loaded.

    Raises:
        OSError: unreadable file
        ParseError: first error of the first file that never loads
    """
    ontology = Ontology()
    for name in builtins:
        ontology = ontology.merge(load_builtin(name))

    texts = {path: Path(path).read_text(encoding="utf-8") for path in paths}
    pending: List[str] = list(paths)
    errors: Dict[str, ParseError] = {}
    while pending:
        progress = False
        for path in list(pending):
            try:
                program = parse_program(texts[path], path=path, known=ontology)
            except ParseError as e:
                errors[path] = e
                continue
            ontology = program.to_ontology(ontology)
            pending.remove(path)
            errors.pop(path, None)
            progress = True
            logger.info(f"Loaded {path}: {len(program.items)} items")
        if not progress:
            raise errors[pending[0]]
    return ontology


def parse_scenario_flag(text: str) -> Scenario:
    """STANDARD,ORIENTATION[,PREFERENCE]"""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 3):
        raise UsageError(
            f"--scenario expects STANDARD,ORIENTATION[,PREFERENCE], got '{text}'"
        )
    return Scenario.of(*parts)


def build_store(ontology: Ontology, args: argparse.Namespace, config: TheoriaConfig) -> FactStore:
    """Store from --scenario, program facts and --facts/--map tables."""
    scenario = getattr(args, "scenario", None)
    if scenario:
        store = build_scenario(parse_scenario_flag(scenario), ontology)
    else:
        store = FactStore(ontology)
    store.load_ground_facts(ontology.ground_facts)

    tables = getattr(args, "facts", None) or []
    if tables:
        if not args.map:
            raise UsageError("--facts needs a --map file describing the tables")
        mappings = load_mapping_file(Path(args.map), config.store.default_situation)
        for table in tables:
            stem = Path(table).stem
            if stem not in mappings:
                raise UsageError(f"no mapping for table '{stem}' in {args.map}")
            ingest_csv(store, Path(table), mappings[stem], config.store.csv_encoding)
    return store


def _session(args: argparse.Namespace, config: TheoriaConfig):
    builtins = list(args.builtin or [])
    if getattr(args, "scenario", None) and not builtins and not args.paths:
        builtins = ["auditor"]
    ontology = load_program(args.paths, builtins)
    return ontology, build_store(ontology, args, config)


def _style(config: TheoriaConfig) -> output.Style:
    return output.Style(config.output.color)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ----------------------------------------------------------------------
# commands


def used_predicates(ontology: Ontology) -> Set[str]:
    literals: List[Literal] = list(ontology.ground_facts)
    for axiom in ontology.axioms:
        literals.extend(axiom.body + (axiom.head,))
    for question in ontology.queries:
        literals.extend(question.body)
    return {lit.predicate for lit in literals if isinstance(lit, (Holds, Occurs))}


def cmd_check(args: argparse.Namespace, config: TheoriaConfig) -> int:
    ontology = load_program(args.paths, args.builtin or [])
    rules = compile_ontology(ontology)
    strata = stratify(rules)
    store = FactStore(ontology)
    facts = store.load_ground_facts(ontology.ground_facts)

    used = used_predicates(ontology)
    for decl in ontology.declarations:
        if decl.predicate not in used:
            logger.warning(f"Predicate {decl.predicate}/{decl.arity} is declared but never used")

    summary = {
        "ok": True,
        "declarations": len(ontology.declarations),
        "axioms": len(ontology.axioms),
        "facts": facts,
        "queries": len(ontology.queries),
        "strata": len(strata),
    }
    if config.output.json:
        _emit(output.dump_json(summary, config.output.indent))
    else:
        _emit(
            f"ok: {summary['declarations']} declarations, {summary['axioms']} axioms, "
            f"{summary['facts']} facts, {summary['queries']} queries, {summary['strata']} strata"
        )
    return EXIT_OK


def cmd_query(args: argparse.Namespace, config: TheoriaConfig) -> int:
    ontology, store = _session(args, config)
    answers = query(store, ontology, args.query, config.engine.max_rounds)
    if args.situation:
        store.situation(args.situation)
        answers = [a for a in answers if a.situation == args.situation]

    if config.output.json:
        _emit(output.render_answers_json(answers, args.proofs, config.output.indent))
    else:
        style = _style(config)
        _emit(output.render_answers(answers, style))
        if args.proofs:
            for answer in answers:
                for node in answer.proofs:
                    _emit(output.render_proof(node, style))

    if args.expect == "sat":
        return EXIT_OK if answers else EXIT_EXPECTATION
    if args.expect == "unsat":
        return EXIT_EXPECTATION if answers else EXIT_OK
    return EXIT_OK


def split_target(text: str) -> Tuple[str, Optional[str]]:
    """'literal @ situation' -> (literal text, situation or None)."""
    literal, sep, situation = text.rpartition("@")
    if not sep:
        return text.strip(), None
    return literal.strip(), situation.strip() or None


def cmd_prove(args: argparse.Namespace, config: TheoriaConfig) -> int:
    ontology, store = _session(args, config)
    text, situation = split_target(args.literal)
    situation = situation or args.situation
    literal = parse_literal(text, ontology, allow_reserved=True)
    node = prove(store, ontology, literal, situation, config.engine.max_rounds)

    if not node:
        if config.output.json:
            _emit(output.dump_json({"fact": text, "derivable": False}, config.output.indent))
        else:
            _emit("not derivable")
        return EXIT_EXPECTATION

    if config.output.json:
        _emit(output.render_proof_json(node, config.output.indent))
    else:
        _emit(output.render_proof(node, _style(config)))
    return EXIT_OK


def cmd_competency(args: argparse.Namespace, config: TheoriaConfig) -> int:
    ontology, store = _session(args, config)
    report = check_competency(store, ontology, max_rounds=config.engine.max_rounds)
    if config.output.json:
        _emit(output.dump_json(output.competency_to_json(report), config.output.indent))
    else:
        _emit(output.render_competency(report, _style(config)))
    return EXIT_OK if report.passed else EXIT_EXPECTATION


def cmd_scenario(args: argparse.Namespace, config: TheoriaConfig) -> int:
    builtins = list(args.builtin or []) or ([] if args.paths else ["auditor"])
    ontology = load_program(args.paths, builtins)

    cells = design_cells(args.preference)
    if not args.all:
        if args.standard:
            cells = [c for c in cells if c.standard_type == args.standard]
        if args.auditor:
            cells = [c for c in cells if c.auditor_orientation == args.auditor]
    rows = run_design(
        ontology,
        args.preference,
        cells,
        concurrency=config.engine.concurrency,
        max_rounds=config.engine.max_rounds,
    )

    if config.output.json:
        _emit(output.dump_json(output.design_to_json(rows), config.output.indent))
    else:
        _emit(output.render_design(rows, _style(config)))
    return EXIT_OK


def cmd_export_builtin(args: argparse.Namespace, config: TheoriaConfig) -> int:
    text = export_builtin(args.name)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote bundle {args.name} to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_repl(args: argparse.Namespace, config: TheoriaConfig) -> int:
    from theoria.cli.repl import Repl

    ontology, store = _session(args, config)
    return Repl(ontology, store, config).run(sys.stdin, sys.stdout)


# ----------------------------------------------------------------------
# argument parsing


def _global_flags(parser: argparse.ArgumentParser, nested: bool) -> None:
    # Subcommands repeat the global flags with suppressed defaults so they
    # may appear on either side of the command name.
    default = (lambda value: argparse.SUPPRESS) if nested else (lambda value: value)
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="Emit JSON on stdout")
    parser.add_argument("--log-level", default=default(None),
                        help="Logging level (DEBUG, INFO, WARNING, ERROR)")
    parser.add_argument("--debug", action="store_true", default=default(False),
                        help="Debug logging")


def _program_flags(parser: argparse.ArgumentParser, stores: bool = True) -> None:
    parser.add_argument("paths", nargs="*", help="Program files (.onto)")
    parser.add_argument("--builtin", action="append", choices=bundle_names(),
                        help="Load a bundled ontology (repeatable)")
    if stores:
        parser.add_argument("--facts", action="append", metavar="CSV",
                            help="Table to ingest (repeatable; needs --map)")
        parser.add_argument("--map", metavar="FILE",
                            help="Mapping file: table:predicate:col1,col2[:sitcol]")
        parser.add_argument("--scenario", metavar="STANDARD,ORIENTATION[,PREFERENCE]",
                            help="Start from a design scenario store")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theoria",
        description="Situation-calculus ontology engine",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    _global_flags(parser, nested=False)
    parser.add_argument("--config", metavar="FILE", help="YAML configuration file")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    check = commands.add_parser("check", help="Parse and validate program files")
    _global_flags(check, nested=True)
    _program_flags(check, stores=False)
    check.set_defaults(handler=cmd_check)

    q = commands.add_parser("query", help="Answer a query body")
    _global_flags(q, nested=True)
    q.add_argument("query", help="Query body, e.g. 'holds(auditor(A), S)'")
    _program_flags(q)
    q.add_argument("--situation", help="Only answers located in this situation")
    q.add_argument("--expect", choices=("sat", "unsat"), help="Exit 1 unless the outcome matches")
    q.add_argument("--proofs", action="store_true", help="Include proof trees")
    q.set_defaults(handler=cmd_query)

    for name, aliases in (("prove", ["trace"]),):
        p = commands.add_parser(name, aliases=aliases, help="Proof tree of a ground literal")
        _global_flags(p, nested=True)
        p.add_argument("literal", help="Ground literal, optionally followed by '@ situation'")
        _program_flags(p)
        p.add_argument("--situation", help="Situation id (instead of '@ situation')")
        p.set_defaults(handler=cmd_prove)

    c = commands.add_parser("competency", help="Run the program's competency questions")
    _global_flags(c, nested=True)
    _program_flags(c)
    c.set_defaults(handler=cmd_competency)

    s = commands.add_parser("scenario", help="Run the standard x orientation design")
    _global_flags(s, nested=True)
    _program_flags(s, stores=False)
    s.add_argument("--all", action="store_true", help="All six manipulations")
    s.add_argument("--standard", choices=STANDARD_TYPES)
    s.add_argument("--auditor", choices=AUDITOR_ORIENTATIONS)
    s.add_argument("--preference", choices=CLIENT_PREFERENCES, default="opportunistic")
    s.set_defaults(handler=cmd_scenario)

    e = commands.add_parser("export-builtin", help="Print a bundled ontology")
    _global_flags(e, nested=True)
    e.add_argument("name", choices=bundle_names())
    e.add_argument("-o", "--output", help="Write to a file instead of stdout")
    e.set_defaults(handler=cmd_export_builtin)

    r = commands.add_parser("repl", help="Interactive session")
    _global_flags(r, nested=True)
    _program_flags(r)
    r.set_defaults(handler=cmd_repl)

    return parser


def _configure(args: argparse.Namespace) -> TheoriaConfig:
    config = load_config(Path(args.config) if args.config else None)
    if args.json:
        config.output.json = True
    if args.log_level:
        config.log_level = args.log_level
    if args.debug:
        config.debug_mode = True
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = _configure(args)
    except ValueError as e:
        print(f"error: bad configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    problems = validate_config(config)
    if problems:
        for problem in problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(config.debug_mode, config.log_level, config.log_file)

    handler: Callable[[argparse.Namespace, TheoriaConfig], int] = args.handler
    try:
        return handler(args, config)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except TheoriaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
