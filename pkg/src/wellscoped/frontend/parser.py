"""Parser for ``.lam`` files.

Grammar::

    term    ::= '\\' ident+ '.' term
              | 'let' binding (';' binding)* ';'? 'in' term
              | 'split' term 'as' '(' ident ',' ident ')' 'in' term
              | app
    binding ::= ident '=' term | pattern '=' term
    pattern ::= ident | '(' pattern ')' | '(' pattern ',' pattern ')'
    app     ::= atom+
    atom    ::= ident | 'true' | 'false' | '(' term ')' | '(' term ',' term ')'

``let`` is sequential and non-recursive; ``let x = e in b`` is read as
``(\\x. b) e``, while ``let (x) = e in b`` keeps a one-variable pattern
binding. Line comments start with ``--``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from wellscoped.frontend.named import (
    NBool, NLam, NPPair, NPVar, NPair, NSplit, NVar, NamedPat, NamedTerm, Pos, n_app, n_let,
)

KEYWORDS = frozenset({"let", "in", "true", "false", "split", "as"})

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|--[^\n]*)
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
  | (?P<sym>[\\λ.();,=])
""", re.VERBOSE)


class ParseError(Exception):
    def __init__(self, message: str, pos: Pos) -> None:
        super().__init__(f"{pos}: {message}")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'kw', 'sym', 'eof'
    text: str
    pos: Pos


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", Pos(line, i - line_start + 1))
        pos = Pos(line, i - line_start + 1)
        kind = m.lastgroup
        word = m.group()
        if kind == "ws":
            newlines = word.count("\n")
            if newlines:
                line += newlines
                line_start = i + word.rindex("\n") + 1
        elif kind == "ident":
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, pos))
        else:
            tokens.append(Token("sym", "\\" if word == "λ" else word, pos))
        i = m.end()
    tokens.append(Token("eof", "", Pos(line, i - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("sym", "kw") and tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {self.describe(self.peek)}", self.peek.pos)
        return self.advance()

    def ident(self) -> Token:
        tok = self.peek
        if tok.kind != "ident":
            raise ParseError(f"expected an identifier, found {self.describe(tok)}", tok.pos)
        return self.advance()

    @staticmethod
    def describe(tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def term(self) -> NamedTerm:
        if self.at("\\"):
            self.advance()
            names = [self.ident().text]
            while self.peek.kind == "ident":
                names.append(self.advance().text)
            self.expect(".")
            body = self.term()
            for name in reversed(names):
                body = NLam(name, body)
            return body
        if self.at("let"):
            self.advance()
            bindings = [self.binding()]
            while self.at(";"):
                self.advance()
                if self.at("in"):
                    break
                bindings.append(self.binding())
            self.expect("in")
            return n_let(bindings, self.term())
        if self.at("split"):
            self.advance()
            scrutinee = self.term()
            self.expect("as")
            self.expect("(")
            first = self.ident().text
            self.expect(",")
            second = self.ident().text
            self.expect(")")
            self.expect("in")
            return NSplit(scrutinee, first, second, self.term())
        return self.application()

    def binding(self) -> tuple[str | NamedPat, NamedTerm]:
        if self.at("("):
            lhs: str | NamedPat = self.pattern()
        else:
            lhs = self.ident().text
        self.expect("=")
        return lhs, self.term()

    def pattern(self) -> NamedPat:
        if self.at("("):
            self.advance()
            left = self.pattern()
            if self.at(")"):
                self.advance()
                return left
            self.expect(",")
            right = self.pattern()
            self.expect(")")
            return NPPair(left, right)
        return NPVar(self.ident().text)

    def starts_atom(self) -> bool:
        tok = self.peek
        return tok.kind == "ident" or self.at("(") or self.at("true") or self.at("false")

    def application(self) -> NamedTerm:
        if not self.starts_atom():
            raise ParseError(f"expected a term, found {self.describe(self.peek)}", self.peek.pos)
        head = self.atom()
        args = []
        while self.starts_atom():
            args.append(self.atom())
        # a trailing lambda/let/split may be the last argument: f x \y. y
        if self.at("\\") or self.at("let") or self.at("split"):
            args.append(self.term())
        return n_app(head, *args)

    def atom(self) -> NamedTerm:
        tok = self.advance()
        if tok.kind == "ident":
            return NVar(tok.text, tok.pos)
        if tok.text == "true":
            return NBool(True)
        if tok.text == "false":
            return NBool(False)
        inner = self.term()
        if self.at(","):
            self.advance()
            second = self.term()
            self.expect(")")
            return NPair(inner, second)
        self.expect(")")
        return inner


def parse(text: str) -> NamedTerm:
    p = _Parser(tokenize(text))
    t = p.term()
    if p.peek.kind != "eof":
        raise ParseError(f"unexpected {p.describe(p.peek)} after the end of the term", p.peek.pos)
    return t
