"""A small answer-set-programming dialect: rule types, a text parser, grounding.

Accepted lines::

    h :- p1, ..., not q1, ..., X != Y.    % normal rule
    {h} :- body.                          % choice rule
    :- body.                              % constraint
    h.                                    % fact

Atoms use the usual ``pred(arg, ...)`` notation; ``%`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .core import Attribute, Fn, Var, apply_subst, is_ground, term_vars

_CMP_OPS = ("==", "!=", "<", ">", "=")


@dataclass(frozen=True)
class AspRule:
    head: Attribute | None  # None for a constraint
    pos: tuple = ()
    neg: tuple = ()
    choice: bool = False
    cmps: tuple = ()  # (op, left, right); op in == != < >

    def is_ground(self) -> bool:
        atoms = ([self.head] if self.head else []) + list(self.pos) + list(self.neg)
        terms = [t for a in atoms for t in a.args] + [t for _, l, r in self.cmps for t in (l, r)]
        return all(is_ground(t) for t in terms)

    def atoms(self):
        if self.head is not None:
            yield self.head
        yield from self.pos
        yield from self.neg


@dataclass(frozen=True)
class AspProgram:
    rules: tuple = ()

    def is_ground(self) -> bool:
        return all(r.is_ground() for r in self.rules)

    def atoms(self) -> set:
        return {a for r in self.rules for a in r.atoms()}


GroundAspProgram = AspProgram


class AspSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(:-)|(not)\b|(==|!=|=|<|>)|([{}(),.])|(-?\d+)|([A-Z_][A-Za-z0-9_]*)|([a-z][A-Za-z0-9_]*))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    """(kind, text, line) triples; ``%`` comments are dropped line by line."""
    kinds = ("neck", "not", "cmp", "punct", "int", "var", "ident")
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("%", 1)[0].rstrip()
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None or m.end() == pos:
                raise AspSyntaxError(f"line {lineno}: cannot read {line[pos:]!r}")
            kind, val = next((k, v) for k, v in zip(kinds, m.groups()) if v is not None)
            out.append((kind, val, lineno))
            pos = m.end()
    return out


class _AspParser:
    def __init__(self, toks):
        self.toks, self.i = toks, 0

    @property
    def lineno(self) -> int:
        return self.toks[min(self.i, len(self.toks) - 1)][2] if self.toks else 1

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j][:2] if j < len(self.toks) else ("eof", "")

    def take(self, val: str | None = None):
        tok = self.peek()
        if val is not None and tok[1] != val:
            raise AspSyntaxError(f"line {self.lineno}: expected {val!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def term(self):
        kind, val = self.take()
        if kind == "int":
            return int(val)
        if kind == "var":
            return Var(val)
        if kind != "ident":
            raise AspSyntaxError(f"line {self.lineno}: expected a term, found {val!r}")
        if self.peek()[1] == "(":
            return Fn(val, self.args())
        return val

    def args(self) -> tuple:
        self.take("(")
        out = [self.term()]
        while self.peek()[1] == ",":
            self.take(",")
            out.append(self.term())
        self.take(")")
        return tuple(out)

    def atom(self) -> Attribute:
        kind, val = self.take()
        if kind != "ident":
            raise AspSyntaxError(f"line {self.lineno}: expected an atom, found {val!r}")
        return Attribute(val, self.args() if self.peek()[1] == "(" else ())

    def rule(self) -> AspRule:
        head, choice = None, False
        if self.peek()[1] == "{":
            self.take("{")
            head, choice = self.atom(), True
            self.take("}")
        elif self.peek()[0] != "neck":
            head = self.atom()
        pos, neg, cmps = [], [], []
        if self.peek()[0] == "neck":
            self.take()
            while True:
                if self.peek()[0] == "not":
                    self.take()
                    neg.append(self.atom())
                elif self.peek(1)[0] == "cmp" or self.peek()[0] in ("var", "int"):
                    left = self.term()
                    op = self.take()[1]
                    cmps.append(("==" if op == "=" else op, left, self.term()))
                else:
                    pos.append(self.atom())
                if self.peek()[1] != ",":
                    break
                self.take(",")
        self.take(".")
        if head is None and not (pos or neg or cmps):
            raise AspSyntaxError(f"line {self.lineno}: empty constraint")
        return AspRule(head, tuple(pos), tuple(neg), choice, tuple(cmps))


def parse_asp(text: str) -> AspProgram:
    """Parse a sequence of '.'-terminated statements; layout is free."""
    p = _AspParser(_tokens(text))
    rules = []
    while p.peek()[0] != "eof":
        rules.append(p.rule())
    return AspProgram(tuple(rules))


def format_atom(a: Attribute) -> str:
    if not a.args:
        return a.pred
    return f"{a.pred}({','.join(_fmt(t) for t in a.args)})"


def _fmt(t) -> str:
    if type(t) is Fn:
        return f"{t.name}({','.join(_fmt(x) for x in t.args)})"
    if type(t) is Var:
        return t.name
    return str(t)


def format_asp(program: AspProgram) -> str:
    lines = []
    for r in program.rules:
        body = [format_atom(a) for a in r.pos] + [f"not {format_atom(a)}" for a in r.neg]
        body += [f"{_fmt(l)} {op} {_fmt(rt)}" for op, l, rt in r.cmps]
        head = "" if r.head is None else format_atom(r.head)
        if r.choice:
            head = "{" + head + "}"
        lines.append(f"{head} :- {', '.join(body)}." if body else f"{head}.")
    return "\n".join(lines) + ("\n" if lines else "")


def _compare(op: str, left, right) -> bool:
    if op == "==":
        return left == right
    if op == "!=":
        return left != right
    if type(left) is not int or type(right) is not int:
        return False
    return left < right if op == "<" else left > right


def instantiate(program: AspProgram, universe) -> AspProgram:
    """Ground every rule over ``universe`` and evaluate comparisons away."""
    universe = list(universe)
    out = []
    for r in program.rules:
        names = sorted({v for a in r.atoms() for t in a.args for v in term_vars(t)}
                       | {v for _, l, rt in r.cmps for t in (l, rt) for v in term_vars(t)})
        for combo in product(universe, repeat=len(names)):
            sigma = dict(zip(names, combo))
            if not all(_compare(op, apply_subst(sigma, l), apply_subst(sigma, rt)) for op, l, rt in r.cmps):
                continue

            def g(a: Attribute) -> Attribute:
                return Attribute(a.pred, tuple(apply_subst(sigma, t) for t in a.args))

            out.append(AspRule(g(r.head) if r.head else None, tuple(map(g, r.pos)),
                               tuple(map(g, r.neg)), r.choice))
    return AspProgram(tuple(dict.fromkeys(out)))
