"""JSON encoding of facts and solutions.

A term is an integer, a string (constant) or ``{"name": ..., "args": [...]}``.
A fact is ``{"name": pred, "args": [terms], "value": term}``; a solution
document is a canonically sorted list of facts.
"""

from __future__ import annotations

from .core import Attribute, Fact, Fn, fact_key, is_reserved


class DocumentError(ValueError):
    pass


def term_to_json(t):
    if type(t) is Fn:
        return {"name": t.name, "args": [term_to_json(a) for a in t.args]}
    return t


def term_from_json(obj):
    if isinstance(obj, bool):
        raise DocumentError("booleans are not terms")
    if isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict) and isinstance(obj.get("name"), str):
        args = obj.get("args", [])
        if not isinstance(args, list):
            raise DocumentError("term args must be a list")
        return Fn(obj["name"], tuple(term_from_json(a) for a in args)) if args else obj["name"]
    raise DocumentError(f"not a term: {obj!r}")


def fact_to_json(f: Fact) -> dict:
    return {"name": f.attr.pred, "args": [term_to_json(a) for a in f.attr.args], "value": term_to_json(f.value)}


def fact_from_json(obj) -> Fact:
    if not isinstance(obj, dict) or not isinstance(obj.get("name"), str) or "value" not in obj:
        raise DocumentError(f"not a fact: {obj!r}")
    args = obj.get("args", [])
    if not isinstance(args, list):
        raise DocumentError("fact args must be a list")
    return Fact(Attribute(obj["name"], tuple(term_from_json(a) for a in args)), term_from_json(obj["value"]))


def solution_document(facts, hide_reserved: bool = True) -> list[dict]:
    shown = [f for f in facts if not (hide_reserved and is_reserved(f.attr.pred))]
    return [fact_to_json(f) for f in sorted(shown, key=fact_key)]


def facts_from_document(doc) -> frozenset:
    if not isinstance(doc, list):
        raise DocumentError("a fact document is a JSON array")
    return frozenset(fact_from_json(o) for o in doc)
