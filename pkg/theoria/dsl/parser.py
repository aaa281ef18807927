"""
Recursive-descent parser for the .onto language.

Grammar:
    program    := item* ;
    item       := decl | axiomdef | factdef | querydef ;
    decl       := "decl" IDENT "/" INT ("kind" ("fluent"|"action"|"rigid"))? "." ;
    axiomdef   := "axiom" IDENT ":" "forall" varlist ":" body "->" head "." ;
    head       := ("exists" varlist ":")? holdslit ;
    body       := literal ("&" literal)* ;
    literal    := ("not")? holdslit | occurslit | sitterm "=" sitterm ;
    holdslit   := "holds" "(" atom "," sitterm ")" ;
    occurslit  := "occurs" "(" atom "," sitterm ")" ;
    sitterm    := VAR | IDENT | "do" "(" atom "," sitterm ")" ;
    factdef    := "fact" (holdslit | occurslit) "." ;
    querydef   := "query" IDENT ":" body ("expect" ("sat"|"unsat"))? "." ;

Static checks run while parsing so every error carries the span of the
offending token: declaration before use, arity, predicate kind, ground
facts, reserved Skolem prefix, duplicate axiom names, range restriction.
"""

import logging
from typing import Dict, List, Optional, Set, Tuple

from theoria.dsl.lexer import EOF, IDENT, INT, PUNCT, VAR, Token, tokenize
from theoria.dsl.program import GroundFact, Item, SourceProgram
from theoria.kernel import (
    CLIPS_PREDICATE,
    DO_FUNCTOR,
    Atom,
    Axiom,
    Compound,
    Constant,
    Declaration,
    Equality,
    Holds,
    Literal,
    NamedQuery,
    Occurs,
    Ontology,
    PredicateKind,
    Term,
    Variable,
    check_axiom,
    check_query_body,
)
from theoria.kernel.axioms import CLIPS_DECLARATION
from theoria.utils.validation import (
    SKOLEM_PREFIX,
    ParseError,
    ValidationError,
    is_constant_symbol,
)

logger = logging.getLogger(__name__)

ITEM_KEYWORDS = ("decl", "axiom", "fact", "query")
RESERVED_PREDICATES = {"holds", "occurs", "do", "not"}
KINDS = {k.value: k for k in PredicateKind}


class Parser:
    """
    One-pass parser over a token list.

    Args:
        text: source text
        path: file name used in diagnostics
        known: ontology whose declarations/axiom names are already in scope
            (multi-file loading, REPL sessions, bundles importing bdi)
        allow_reserved: accept sk_-prefixed symbols (re-reading engine output)
    """

    def __init__(
        self,
        text: str,
        path: str = "<input>",
        known: Optional[Ontology] = None,
        allow_reserved: bool = False,
    ):
        self.path = path
        self.tokens = tokenize(text, path)
        self.pos = 0
        self.allow_reserved = allow_reserved
        self.declarations: Dict[str, Declaration] = {CLIPS_PREDICATE: CLIPS_DECLARATION}
        self.axiom_names: Set[str] = set()
        self.query_names: Set[str] = set()
        if known is not None:
            for decl in known.declarations:
                self.declarations[decl.predicate] = decl
            self.axiom_names.update(a.name for a in known.axioms)
            self.query_names.update(q.name for q in known.queries)

    # ------------------------------------------------------------------
    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != EOF:
            self.pos += 1
        return token

    def _error(self, message: str, token: Token, expected=()) -> ParseError:
        return ParseError(message, token.line, token.column, expected, self.path)

    def _at(self, kind: str, value: Optional[str] = None) -> bool:
        token = self.current
        return token.kind == kind and (value is None or token.value == value)

    def _expect(self, kind: str, value: Optional[str] = None, expected=None) -> Token:
        if self._at(kind, value):
            return self._advance()
        label = expected or [f"'{value}'" if value else kind]
        raise self._error(f"unexpected {self.current.describe()}", self.current, label)

    def _keyword(self, word: str) -> Token:
        return self._expect(IDENT, word, [f"'{word}'"])

    def _symbol(self, what: str) -> Token:
        token = self._expect(IDENT, expected=[what])
        self._check_symbol(token, what)
        return token

    def _check_symbol(self, token: Token, what: str) -> None:
        value = token.value
        if value.startswith(SKOLEM_PREFIX):
            if self.allow_reserved:
                return
            raise self._error(
                f"{what} '{value}' uses the reserved prefix '{SKOLEM_PREFIX}'", token
            )
        if not is_constant_symbol(value):
            raise self._error(
                f"{what} '{value}' must be lower case, using underscore for space", token
            )

    # ------------------------------------------------------------------
    # program

    def parse_program(self) -> SourceProgram:
        items: List[Item] = []
        spans: List[Tuple[int, int]] = []
        while not self._at(EOF):
            start = self.current
            items.append(self._item())
            spans.append((start.line, start.column))
        logger.debug(f"Parsed {len(items)} items from {self.path}")
        return SourceProgram(tuple(items), tuple(spans), self.path)

    def _item(self) -> Item:
        token = self.current
        if token.kind == IDENT and token.value in ITEM_KEYWORDS:
            return getattr(self, f"_{token.value}")()
        raise self._error(
            f"unexpected {token.describe()}", token, [f"'{k}'" for k in ITEM_KEYWORDS]
        )

    def _decl(self) -> Declaration:
        self._keyword("decl")
        name_token = self._symbol("predicate")
        if name_token.value in RESERVED_PREDICATES:
            raise self._error(f"'{name_token.value}' is a reserved word", name_token)
        self._expect(PUNCT, "/")
        arity_token = self._expect(INT, expected=["arity"])
        kind = PredicateKind.FLUENT
        if self._at(IDENT, "kind"):
            self._advance()
            kind_token = self._expect(IDENT, expected=[f"'{k}'" for k in KINDS])
            if kind_token.value not in KINDS:
                raise self._error(
                    f"unknown kind '{kind_token.value}'", kind_token, [f"'{k}'" for k in KINDS]
                )
            kind = KINDS[kind_token.value]
        self._expect(PUNCT, ".", ["'.'", "'kind'"])

        decl = Declaration(name_token.value, int(arity_token.value), kind)
        existing = self.declarations.get(decl.predicate)
        if existing is not None and existing != decl:
            raise self._error(
                f"predicate {decl.predicate} already declared as "
                f"{existing.predicate}/{existing.arity} kind {existing.kind.value}",
                name_token,
            )
        self.declarations[decl.predicate] = decl
        return decl

    def _axiom(self) -> Axiom:
        start = self._keyword("axiom")
        name_token = self._symbol("axiom name")
        if name_token.value in self.axiom_names:
            raise self._error(f"duplicate axiom name '{name_token.value}'", name_token)
        self._expect(PUNCT, ":")
        self._keyword("forall")
        universals = self._varlist()
        self._expect(PUNCT, ":")
        body = self._body()
        self._expect(PUNCT, "->", ["'->'", "'&'"])
        existentials: Tuple[Variable, ...] = ()
        if self._at(IDENT, "exists"):
            self._advance()
            existentials = self._varlist()
            self._expect(PUNCT, ":")
        head_token = self.current
        head = self._holds()
        if head.negated:
            raise self._error("axiom head must be positive", head_token)
        self._expect(PUNCT, ".")

        axiom = Axiom(name_token.value, universals, existentials, body, head)
        try:
            check_axiom(axiom)
            if self.declarations[head.predicate].kind == PredicateKind.RIGID:
                raise ValidationError(
                    f"axiom {axiom.name}: rigid predicate {head.predicate} cannot be derived"
                )
        except ValidationError as e:
            raise self._error(str(e), start) from e
        self.axiom_names.add(axiom.name)
        return axiom

    def _fact(self) -> GroundFact:
        self._keyword("fact")
        if self._at(IDENT, "occurs"):
            literal: Literal = self._occurs(ground=True)
        else:
            literal = self._holds(ground=True)
        self._expect(PUNCT, ".")
        return GroundFact(literal)

    def _query(self) -> NamedQuery:
        start = self._keyword("query")
        name_token = self._symbol("query name")
        if name_token.value in self.query_names:
            raise self._error(f"duplicate query name '{name_token.value}'", name_token)
        self._expect(PUNCT, ":")
        body = self._body()
        expect: Optional[bool] = None
        if self._at(IDENT, "expect"):
            self._advance()
            outcome = self._expect(IDENT, expected=["'sat'", "'unsat'"])
            if outcome.value not in ("sat", "unsat"):
                raise self._error(
                    f"unexpected '{outcome.value}'", outcome, ["'sat'", "'unsat'"]
                )
            expect = outcome.value == "sat"
        self._expect(PUNCT, ".", ["'.'", "'&'", "'expect'"])
        try:
            check_query_body(name_token.value, body)
        except ValidationError as e:
            raise self._error(str(e), start) from e
        self.query_names.add(name_token.value)
        return NamedQuery(name_token.value, body, expect)

    # ------------------------------------------------------------------
    # formulas

    def _varlist(self) -> Tuple[Variable, ...]:
        names = [self._expect(VAR, expected=["variable"])]
        while self._at(PUNCT, ","):
            self._advance()
            names.append(self._expect(VAR, expected=["variable"]))
        seen: Set[str] = set()
        for token in names:
            if token.value in seen:
                raise self._error(f"variable {token.value} quantified twice", token)
            seen.add(token.value)
        return tuple(Variable(t.value) for t in names)

    def parse_body(self) -> Tuple[Literal, ...]:
        return self._body()

    def _body(self) -> Tuple[Literal, ...]:
        literals = [self._literal()]
        while self._at(PUNCT, "&"):
            self._advance()
            literals.append(self._literal())
        return tuple(literals)

    def _literal(self) -> Literal:
        token = self.current
        if token.kind == VAR or (
            token.kind == IDENT and token.value not in ("holds", "not", "occurs")
        ):
            lhs = self._sitterm()
            self._expect(PUNCT, "=")
            return Equality(lhs, self._sitterm())
        if self._at(IDENT, "occurs"):
            return self._occurs()
        if self._at(IDENT, "holds") or self._at(IDENT, "not"):
            return self._holds()
        raise self._error(
            f"unexpected {token.describe()}", token, ["'holds'", "'not'", "'occurs'", "variable"]
        )

    def _holds(self, ground: bool = False) -> Holds:
        negated = False
        if self._at(IDENT, "not"):
            not_token = self._advance()
            if ground:
                raise self._error("facts cannot be negated", not_token)
            negated = True
        self._keyword("holds")
        self._expect(PUNCT, "(")
        atom_token = self.current
        atom = self._atom(ground)
        self._check_atom(atom, atom_token, PredicateKind.FLUENT)
        self._expect(PUNCT, ",", ["','", "'('"])
        situation = self._sitterm(ground)
        self._expect(PUNCT, ")")
        return Holds(atom, situation, negated)

    def _occurs(self, ground: bool = False) -> Occurs:
        self._keyword("occurs")
        self._expect(PUNCT, "(")
        atom_token = self.current
        atom = self._atom(ground)
        self._check_atom(atom, atom_token, PredicateKind.ACTION)
        self._expect(PUNCT, ",", ["','", "'('"])
        situation = self._sitterm(ground)
        self._expect(PUNCT, ")")
        return Occurs(atom, situation)

    def _check_atom(self, atom: Atom, token: Token, wanted: PredicateKind) -> None:
        decl = self.declarations.get(atom.predicate)
        if decl is None:
            raise self._error(f"undeclared predicate {atom.predicate}/{atom.arity}", token)
        if decl.arity != atom.arity:
            raise self._error(
                f"predicate {atom.predicate} declared with arity {decl.arity}, "
                f"used with {atom.arity}",
                token,
            )
        if wanted == PredicateKind.ACTION and decl.kind != PredicateKind.ACTION:
            raise self._error(
                f"{decl.kind.value} {atom.predicate} cannot appear inside occurs or do", token
            )
        if wanted == PredicateKind.FLUENT and decl.kind == PredicateKind.ACTION:
            raise self._error(f"action {atom.predicate} cannot appear inside holds", token)

    def _atom(self, ground: bool = False) -> Atom:
        name = self._symbol("predicate")
        args: Tuple[Term, ...] = ()
        if self._at(PUNCT, "("):
            args = self._arguments(ground)
        return Atom(name.value, args)

    def _arguments(self, ground: bool) -> Tuple[Term, ...]:
        self._expect(PUNCT, "(")
        args = [self._term(ground)]
        while self._at(PUNCT, ","):
            self._advance()
            args.append(self._term(ground))
        self._expect(PUNCT, ")", ["')'", "','"])
        return tuple(args)

    def _term(self, ground: bool = False) -> Term:
        token = self.current
        if token.kind == VAR:
            if ground:
                raise self._error(
                    f"'{token.value}' starts with a capital letter, "
                    f"but facts take constants only",
                    token,
                )
            self._advance()
            return Variable(token.value)
        name = self._symbol("constant")
        if self._at(PUNCT, "("):
            return Compound(name.value, self._arguments(ground))
        return Constant(name.value)

    def _sitterm(self, ground: bool = False) -> Term:
        token = self.current
        if token.kind == VAR:
            if ground:
                raise self._error(
                    f"'{token.value}' starts with a capital letter, "
                    f"but facts need a named situation",
                    token,
                )
            self._advance()
            return Variable(token.value)
        if self._at(IDENT, DO_FUNCTOR):
            self._advance()
            self._expect(PUNCT, "(")
            action_token = self.current
            action = self._atom(ground)
            self._check_atom(action, action_token, PredicateKind.ACTION)
            self._expect(PUNCT, ",")
            parent = self._sitterm(ground)
            self._expect(PUNCT, ")")
            return Compound(DO_FUNCTOR, (action.as_term(), parent))
        if token.kind == IDENT:
            name = self._symbol("situation")
            return Constant(name.value)
        raise self._error(
            f"unexpected {token.describe()}", token, ["situation", "variable", "'do'"]
        )

    def finish(self) -> None:
        self._expect(EOF, expected=["end of input"])


def parse_program(
    text: str,
    path: str = "<input>",
    known: Optional[Ontology] = None,
    allow_reserved: bool = False,
) -> SourceProgram:
    """
    Parse a whole .onto program.

    Raises:
        ParseError: with line/column and the expected-token set
    """
    return Parser(text, path, known, allow_reserved).parse_program()


def parse_body(text: str, ontology: Ontology, allow_reserved: bool = False) -> Tuple[Literal, ...]:
    """
    Parse a conjunction such as a query given on the command line.

    A trailing '.' is optional. Capitalized identifiers are answer variables.
    """
    parser = Parser(text.strip().rstrip("."), "<query>", ontology, allow_reserved)
    body = parser.parse_body()
    parser.finish()
    try:
        check_query_body("<query>", body)
    except ValidationError as e:
        raise ParseError(str(e), 1, 1, path="<query>") from e
    return body


def parse_literal(text: str, ontology: Ontology, allow_reserved: bool = False) -> Literal:
    """Parse exactly one literal."""
    parser = Parser(text.strip().rstrip("."), "<literal>", ontology, allow_reserved)
    literal = parser._literal()
    parser.finish()
    return literal


def parse_situation_term(text: str, ontology: Ontology) -> Term:
    """Parse a situation id or a do(...) term, as the REPL accepts them."""
    parser = Parser(text.strip(), "<situation>", ontology)
    term = parser._sitterm()
    parser.finish()
    return term


def parse_term(text: str, ontology: Optional[Ontology] = None, allow_reserved: bool = False) -> Term:
    """Parse one argument term (answer bindings, REPL input)."""
    parser = Parser(text.strip(), "<term>", ontology, allow_reserved)
    term = parser._term()
    parser.finish()
    return term
