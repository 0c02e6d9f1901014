"""Recursive-descent parser producing a :class:`SourceProgram`."""

from __future__ import annotations

from ..core import Fn, Var
from .ast import SBuiltin, SCmp, SDemand, SForbid, SHead, SRel, SRule, SourceProgram
from .diagnostics import ParseError, error
from .lexer import Token, tokenize

COMPARISONS = ("==", "!=", "<", ">")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_punct(self, *texts: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text in texts

    def expect_punct(self, text: str) -> Token:
        if not self.at_punct(text):
            self.fail(f"expected '{text}'")
        return self.advance()

    def fail(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError([error(f"{message}, found {found}", t.loc)])

    # -- declarations -----------------------------------------------------

    def program(self) -> SourceProgram:
        decls = []
        while not self.at("eof"):
            decls.append(self.decl())
        return SourceProgram(tuple(decls))

    def decl(self):
        t = self.tok
        if t.kind == "directive":
            self.advance()
            if t.text == "builtin":
                return self.builtin_directive(t)
            premises = self.premises()
            self.expect_punct(".")
            cls = SForbid if t.text == "forbid" else SDemand
            return cls(premises, t.loc)
        head = self.head()
        premises = ()
        if self.at_punct(":-"):
            self.advance()
            premises = self.premises()
        self.expect_punct(".")
        return SRule(head, premises, t.loc)

    def builtin_directive(self, start: Token) -> SBuiltin:
        if not self.at("var"):
            self.fail("expected a builtin identifier such as INT_PLUS")
        builtin = self.advance().text
        if self.at("var"):  # optional secondary tag, ignored
            self.advance()
        if not self.at("ident"):
            self.fail("expected a lowercase name for the builtin")
        name = self.advance().text
        if self.at_punct("."):
            self.advance()
        return SBuiltin(builtin, name, start.loc)

    def head(self) -> SHead:
        if not self.at("ident"):
            self.fail("expected a predicate name")
        start = self.advance()
        args = self.termargs()
        if self.at("isq"):
            self.advance()
            return SHead(start.text, args, "open", (self.term(),), start.loc)
        if self.at("is"):
            self.advance()
            if self.at_punct("{"):
                self.advance()
                values = [self.term()]
                while self.at_punct(","):
                    self.advance()
                    values.append(self.term())
                self.expect_punct("}")
                return SHead(start.text, args, "closed", tuple(values), start.loc)
            return SHead(start.text, args, "is", (self.term(),), start.loc)
        return SHead(start.text, args, "plain", (), start.loc)

    def premises(self) -> tuple:
        out = [self.premise()]
        while self.at_punct(","):
            self.advance()
            out.append(self.premise())
        return tuple(out)

    def premise(self):
        start = self.tok
        if start.kind == "ident":
            self.advance()
            args = self.termargs()
            if self.at_punct(*COMPARISONS):
                op = self.advance().text
                left = Fn(start.text, args) if args else start.text
                return SCmp(op, left, self.term(), start.loc)
            if self.at("is"):
                self.advance()
                return SRel(start.text, args, self.term(), start.loc)
            return SRel(start.text, args, None, start.loc)
        left = self.term()
        if not self.at_punct(*COMPARISONS):
            self.fail("expected a comparison operator")
        op = self.advance().text
        return SCmp(op, left, self.term(), start.loc)

    # -- terms ------------------------------------------------------------

    def termargs(self) -> tuple:
        out = []
        while True:
            t = self.tok
            if t.kind in ("var", "wild"):
                out.append(Var(self.advance().text))
            elif t.kind == "int":
                out.append(int(self.advance().text))
            elif t.kind == "ident":
                out.append(self.advance().text)
            elif self.at_punct("("):
                self.advance()
                out.append(self.term())
                self.expect_punct(")")
            else:
                return tuple(out)

    def term(self):
        t = self.tok
        if t.kind in ("var", "wild"):
            return Var(self.advance().text)
        if t.kind == "int":
            return int(self.advance().text)
        if t.kind == "ident":
            self.advance()
            args = self.termargs()
            return Fn(t.text, args) if args else t.text
        if self.at_punct("("):
            self.advance()
            inner = self.term()
            self.expect_punct(")")
            return inner
        self.fail("expected a term")


def parse(text: str) -> SourceProgram:
    """Parse program text; raises :class:`ParseError` with located diagnostics."""
    return _Parser(text).program()
