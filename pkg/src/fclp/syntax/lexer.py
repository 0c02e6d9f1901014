"""Tokenizer for the rule language."""

from __future__ import annotations

import re
from typing import NamedTuple

from ..core import Loc
from .diagnostics import ParseError, error

DIRECTIVES = ("builtin", "forbid", "demand")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<directive>\#(?:builtin|forbid|demand)(?![A-Za-z0-9_]))
  | (?P<comment>\#[^\n]*)
  | (?P<int>-?[0-9]+)
  | (?P<isq>is\?)
  | (?P<punct>:-|==|!=|[.,{}()<>])
  | (?P<wild>_[A-Za-z0-9_]*)
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str  # int, var, wild, ident, punct, is, isq, directive, eof
    text: str
    loc: Loc


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        loc = Loc(line, pos - line_start + 1)
        if m is None:
            raise ParseError([error(f"unexpected character {text[pos]!r}", loc)])
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "directive":
            tokens.append(Token(kind, m.group()[1:], loc))
        elif kind == "ident" and m.group() == "is":
            tokens.append(Token("is", "is", loc))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), loc))
        pos = m.end()
    tokens.append(Token("eof", "", Loc(line, pos - line_start + 1)))
    return tokens
