"""Lexer for the .onto language: identifiers, variables, integers, punctuation."""

import re
from dataclasses import dataclass
from typing import List

from theoria.utils.validation import ParseError

IDENT = "IDENT"
VAR = "VAR"
INT = "INT"
PUNCT = "PUNCT"
EOF = "EOF"

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<arrow>->)
  | (?P<punct>[().,:&/=])
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == EOF:
            return "end of input"
        return f"'{self.value}'"


def tokenize(text: str, path: str = "<input>") -> List[Token]:
    """
    Split source text into tokens; comments and whitespace are dropped.

    Raises:
        ParseError: on a character that starts no token
    """
    tokens: List[Token] = []
    pos = 0
    line = 1
    line_start = 0
    length = len(text)

    while pos < length:
        match = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if match is None:
            raise ParseError(f"unexpected character '{text[pos]}'", line, column, path=path)
        group = match.lastgroup
        value = match.group()
        if group == "nl":
            line += 1
            line_start = match.end()
        elif group in ("arrow", "punct"):
            tokens.append(Token(PUNCT, value, line, column))
        elif group == "ident":
            tokens.append(Token(IDENT, value, line, column))
        elif group == "var":
            tokens.append(Token(VAR, value, line, column))
        elif group == "int":
            tokens.append(Token(INT, value, line, column))
        pos = match.end()

    tokens.append(Token(EOF, "", line, pos - line_start + 1))
    return tokens
