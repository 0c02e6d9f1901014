"""Render surface programs back to source text."""

from __future__ import annotations

from ..core import format_term
from .ast import SBuiltin, SCmp, SDemand, SForbid, SHead, SourceProgram, SRule


def _t(t) -> str:
    return format_term(t, nested=True)


def format_head(h: SHead) -> str:
    text = " ".join([h.pred, *map(_t, h.args)])
    if h.kind == "open":
        return f"{text} is? {_t(h.values[0])}"
    if h.kind == "is":
        return f"{text} is {_t(h.values[0])}"
    if h.kind == "closed":
        return f"{text} is {{ {', '.join(map(_t, h.values))} }}"
    return text


def format_premise(p) -> str:
    if isinstance(p, SCmp):
        return f"{_t(p.left)} {p.op} {_t(p.right)}"
    text = " ".join([p.pred, *map(_t, p.args)])
    return text if p.value is None else f"{text} is {_t(p.value)}"


def format_decl(d) -> str:
    if isinstance(d, SRule):
        head = format_head(d.head)
        if not d.premises:
            return head + "."
        return f"{head} :- {', '.join(map(format_premise, d.premises))}."
    if isinstance(d, SBuiltin):
        return f"#builtin {d.builtin} {d.name}."
    keyword = "#forbid" if isinstance(d, SForbid) else "#demand"
    assert isinstance(d, (SForbid, SDemand))
    return f"{keyword} {', '.join(map(format_premise, d.premises))}."


def format_source(src: SourceProgram) -> str:
    return "".join(format_decl(d) + "\n" for d in src.decls)
