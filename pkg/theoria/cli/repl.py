"""
Line-oriented interactive session over one ontology and store.

Each line is one command; a bad line prints a diagnostic and the session
continues.
"""

import logging
from typing import Callable, Dict, TextIO, Tuple

from theoria.cli import output
from theoria.core import TheoriaConfig
from theoria.dsl import parse_literal, parse_program, parse_situation_term, parse_term
from theoria.engine import compile_ontology, prove, query
from theoria.kernel import Atom, Ontology
from theoria.store import FactStore, situation_pairs
from theoria.utils.validation import TheoriaError, ValidationError

logger = logging.getLogger(__name__)

PROMPT = "theoria> "

# Lines starting with these are parsed as program items.
PROGRAM_ITEMS = ("decl", "axiom", "fact")

HELP = """\
commands:
  decl NAME/ARITY [kind K].        declare a predicate
  axiom NAME: forall ...: ... .    add an axiom
  fact holds(ATOM, SIT).           assert a fact
  query BODY                       answer a query
  trace LITERAL @ SIT              proof tree of a literal
  successor ACTION @ PARENT        create do(ACTION, PARENT)
  situations                       list situations
  help                             this text
  quit                             leave"""


def _split_at(text: str) -> Tuple[str, str]:
    head, sep, tail = text.rpartition("@")
    if not sep or not head.strip() or not tail.strip():
        raise ValidationError("expected '<term> @ <situation>'")
    return head.strip(), tail.strip()


class Repl:
    """
    Interactive session state.

    Operations:
        - execute(line) -> text to print (raises on bad input)
        - run(stdin, stdout) -> exit status
    """

    def __init__(self, ontology: Ontology, store: FactStore, config: TheoriaConfig):
        self.ontology = ontology
        self.store = store
        self.config = config
        self.style = output.Style(config.output.color)
        self.done = False
        self._commands: Dict[str, Callable[[str], str]] = {
            "decl": self._program_item,
            "axiom": self._program_item,
            "fact": self._program_item,
            "query": self._query,
            "trace": self._trace,
            "successor": self._successor,
            "situations": self._situations,
            "help": lambda rest: HELP,
            "quit": self._quit,
            "exit": self._quit,
        }

    def execute(self, line: str) -> str:
        line = line.strip()
        if not line or line.startswith("%"):
            return ""
        command, _, rest = line.partition(" ")
        handler = self._commands.get(command)
        if handler is None:
            raise ValidationError(f"unknown command '{command}' (try 'help')")
        if command in PROGRAM_ITEMS:
            return handler(line)
        return handler(rest.strip())

    def run(self, stdin: TextIO, stdout: TextIO) -> int:
        interactive = stdin.isatty()
        while not self.done:
            if interactive:
                stdout.write(PROMPT)
                stdout.flush()
            line = stdin.readline()
            if not line:
                break
            try:
                text = self.execute(line)
            except TheoriaError as e:
                text = f"error: {e}"
                logger.debug(f"REPL line failed: {line.strip()!r}: {e}")
            if text:
                stdout.write(text + "\n")
        return 0

    # ------------------------------------------------------------------
    # commands

    def _program_item(self, line: str) -> str:
        text = line if line.endswith(".") else line + "."
        program = parse_program(text, path="<repl>", known=self.ontology)
        if program.facts:
            self.store.load_ground_facts(f.literal for f in program.facts)
            return f"ok: {len(program.facts)} fact(s)"

        extended = program.to_ontology(self.ontology)
        compile_ontology(extended)
        self.ontology = extended
        self.store = self.store.with_ontology(extended)
        return "ok"

    def _query(self, rest: str) -> str:
        if not rest:
            raise ValidationError("query needs a body")
        found = query(self.store, self.ontology, rest, self.config.engine.max_rounds)
        return output.render_answers(found, self.style)

    def _situation(self, text: str) -> str:
        """Id of a situation written as an id or as a do(...) term."""
        return self.store.resolve_situation(parse_situation_term(text, self.ontology))

    def _trace(self, rest: str) -> str:
        text, situation_text = _split_at(rest)
        literal = parse_literal(text, self.ontology, allow_reserved=True)
        situation = self._situation(situation_text)
        node = prove(self.store, self.ontology, literal, situation, self.config.engine.max_rounds)
        if not node:
            return "not derivable"
        return output.render_proof(node, self.style)

    def _successor(self, rest: str) -> str:
        text, parent_text = _split_at(rest)
        action = Atom.from_term(parse_term(text, self.ontology))
        return self.store.successor(action, self._situation(parent_text))

    def _situations(self, rest: str) -> str:
        lines = []
        for sid, parent in situation_pairs(self.store):
            lines.append(sid if parent is None else f"{sid}  (parent {parent})")
        return "\n".join(lines) if lines else "no situations"

    def _quit(self, rest: str) -> str:
        self.done = True
        return ""
