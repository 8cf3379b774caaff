"""Surface syntax for ground CR-Prolog programs.

::

    a.
    -a :- not b, not c.
    p | q :- r, not s.
    b :+ c.          % cr-rule
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

from .model import Literal, Program, Rule, RuleKind


class ParseErrorKind(enum.Enum):
    LEX = "lex"
    SYNTAX = "syntax"
    EMPTY_HEAD = "empty_head"
    CR_DISJUNCTIVE_HEAD = "cr_disjunctive_head"


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str, kind: ParseErrorKind):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message
        self.kind = kind


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<ident>[a-z][a-zA-Z0-9_]*)
  | (?P<crarrow>:\+)
  | (?P<arrow>:-)
  | (?P<punct>[-|,.])
    """,
    re.VERBOSE,
)


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        column = pos - line_start + 1
        if m is None:
            ch = src[pos]
            hint = " (variables are not supported)" if ch.isupper() or ch == "_" else ""
            raise ParseError(line, column, f"illegal character {ch!r}{hint}", ParseErrorKind.LEX)
        kind = m.lastgroup
        text = m.group()
        if kind == "ident":
            tokens.append(Token("not" if text == "not" else "ident", text, line, column))
        elif kind in ("crarrow", "arrow", "punct"):
            tokens.append(Token(text, text, line, column))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class _Parser:
    tokens: List[Token]
    pos: int = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[Token] = None, kind=ParseErrorKind.SYNTAX):
        tok = tok or self.peek()
        raise ParseError(tok.line, tok.column, message, kind)

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.error(f"expected {what}, found {found}")
        return self.advance()

    def literal(self) -> Literal:
        negated = False
        if self.peek().kind == "-":
            self.advance()
            negated = True
            if self.peek().kind == "not":
                self.error("'not' cannot appear under strong negation")
        tok = self.peek()
        if tok.kind == "not":
            self.error("'not' is not allowed here")
        name = self.expect("ident", "an atom").text
        return Literal(name, negated)

    def body(self, pos_body: list, neg_body: list) -> None:
        while True:
            if self.peek().kind == "not":
                self.advance()
                neg_body.append(self.literal())
            else:
                pos_body.append(self.literal())
            if self.peek().kind != ",":
                return
            self.advance()

    def statement(self, rule_id: int) -> Rule:
        start = self.peek()
        if start.kind in (":-", ":+"):
            self.error("rule head is empty (constraints are not supported)", start,
                       ParseErrorKind.EMPTY_HEAD)
        head = [self.literal()]
        bar = None
        while self.peek().kind == "|":
            bar = bar or self.peek()
            self.advance()
            head.append(self.literal())
        tok = self.advance()
        if tok.kind == ".":
            return Rule(tuple(head), id=rule_id)
        if tok.kind not in (":-", ":+"):
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.error(f"expected '.', ':-' or ':+', found {found}", tok)
        if tok.kind == ":+" and bar is not None:
            self.error("cr-rule head must be a single literal", bar,
                       ParseErrorKind.CR_DISJUNCTIVE_HEAD)
        pos_body: list = []
        neg_body: list = []
        # bodies may be empty after either arrow ("a :- ." / "b :+.")
        if self.peek().kind != ".":
            self.body(pos_body, neg_body)
        self.expect(".", "',' or '.'")
        kind = RuleKind.CR if tok.kind == ":+" else RuleKind.REGULAR
        return Rule(tuple(head), tuple(pos_body), tuple(neg_body), kind, rule_id)

    def program(self) -> Program:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.statement(len(rules)))
        return Program(tuple(rules))


def parse_program(src: str) -> Program:
    """Parse program text; raises :class:`ParseError` with a 1-based position."""
    return _Parser(tokenize(src)).program()


def parse_rule(src: str, rule_id: int = 0) -> Rule:
    """Parse a single statement, e.g. ``"b :- c."``."""
    program = parse_program(src)
    if len(program) != 1:
        raise ValueError(f"expected exactly one rule, got {len(program)}")
    return program[0].with_id(rule_id)


def parse_literal(src: str) -> Literal:
    parser = _Parser(tokenize(src))
    lit = parser.literal()
    parser.expect("eof", "end of input")
    return lit


def render_program(p: Program) -> str:
    return str(p)
