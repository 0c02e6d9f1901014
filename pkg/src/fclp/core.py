"""Terms, facts, the desugared rule IR, substitutions and one-way matching.

Ground terms use plain Python values:

* ``int`` for integer literals,
* ``str`` for constants (``tt``, ``unit``, ``a`` ...),
* :class:`Fn` for compound terms such as ``s (s z)``.

Variables only occur in patterns and are :class:`Var` instances.  A
substitution is an ordinary mapping from variable *names* to ground terms.
"""

from __future__ import annotations

import weakref
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from typing import NamedTuple, Union


class Var(NamedTuple):
    """A pattern variable, identified by name."""

    name: str

    def __repr__(self) -> str:
        return self.name


class Fn:
    """A compound term ``name(args...)``; constants are plain strings instead.

    Instances are hash-consed: structurally equal terms are the same object,
    so hashing and equality stay O(arity) even for very deep terms such as
    ``s (s (... z))``.
    """

    __slots__ = ("name", "args", "_hash", "__weakref__")
    _table: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()

    def __new__(cls, name: str, args=()):
        args = tuple(args)
        key = (name, args)
        obj = cls._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "name", name)
            object.__setattr__(obj, "args", args)
            object.__setattr__(obj, "_hash", hash(key))
            cls._table[key] = obj
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("terms are immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other

    def __ne__(self, other) -> bool:
        return self is not other

    def __reduce__(self):
        return (Fn, (self.name, self.args))

    def __repr__(self) -> str:
        return format_term(self)


Term = Union[int, str, Fn, Var]
Substitution = Mapping[str, Term]


class UnboundVariable(Exception):
    """Raised when instantiating a pattern whose variable has no binding."""

    def __init__(self, name: str):
        super().__init__(f"unbound variable {name}")
        self.name = name


class FuelExhausted(Exception):
    """A step budget ran out.  ``partial`` carries whatever was found so far."""

    def __init__(self, message: str = "fuel exhausted", partial=None):
        super().__init__(message)
        self.partial = partial


def const(name: str) -> str:
    return name


def fn(name: str, *args: Term) -> Term:
    """Build a term, collapsing the zero-argument case to a constant."""
    return Fn(name, tuple(args)) if args else name


def is_ground(t: Term) -> bool:
    if type(t) is Var:
        return False
    if type(t) is Fn:
        return all(is_ground(a) for a in t.args)
    return True


def term_vars(t: Term) -> Iterator[str]:
    """Yield variable names of ``t`` left to right (with repeats)."""
    if type(t) is Var:
        yield t.name
    elif type(t) is Fn:
        for a in t.args:
            yield from term_vars(a)


def term_key(t: Term) -> tuple:
    """Canonical, hash-independent sort key: ints < constants < compounds."""
    if type(t) is int:
        return (0, t)
    if type(t) is str:
        return (1, t)
    if type(t) is Fn:
        return (2, t.name, len(t.args), tuple(term_key(a) for a in t.args))
    return (3, t.name)


def format_term(t: Term, nested: bool = False) -> str:
    """Render a term in source syntax; compound arguments get parentheses."""
    if type(t) is Fn:
        if not t.args:
            return t.name
        body = " ".join([t.name] + [format_term(a, True) for a in t.args])
        return f"({body})" if nested else body
    if type(t) is Var:
        return t.name
    return str(t)


def apply_subst(sigma: Substitution, t: Term) -> Term:
    if type(t) is Var:
        try:
            return sigma[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if type(t) is Fn:
        return Fn(t.name, tuple(apply_subst(sigma, a) for a in t.args))
    return t


def match(pattern: Term, ground: Term, sigma: Substitution) -> dict | None:
    """One-way matching; returns the minimal extension of ``sigma`` or ``None``."""
    out = dict(sigma)
    return out if _match_into(pattern, ground, out) else None


def match_all(patterns, grounds, sigma: Substitution) -> dict | None:
    """Match a sequence of patterns against an equally long sequence of terms."""
    if len(patterns) != len(grounds):
        return None
    out = dict(sigma)
    for p, g in zip(patterns, grounds):
        if not _match_into(p, g, out):
            return None
    return out


def _match_into(p: Term, g: Term, out: dict) -> bool:
    tp = type(p)
    if tp is Var:
        bound = out.get(p.name, _MISSING)
        if bound is _MISSING:
            out[p.name] = g
            return True
        return _same(bound, g)
    if tp is Fn:
        if type(g) is not Fn or g.name != p.name or len(g.args) != len(p.args):
            return False
        return all(_match_into(a, b, out) for a, b in zip(p.args, g.args))
    return _same(p, g)


def _same(a: Term, b: Term) -> bool:
    # ``1 == "1"`` is already False, but keep ints and constants apart explicitly.
    return type(a) is type(b) and a == b


_MISSING = object()


# ---------------------------------------------------------------------------
# Facts and the rule IR


class Attribute(NamedTuple):
    pred: str
    args: tuple = ()

    def __repr__(self) -> str:
        return format_attribute(self)


class Fact(NamedTuple):
    attr: Attribute
    value: Term

    def __repr__(self) -> str:
        return f"{format_attribute(self.attr)} is {format_term(self.value, True)}"


def format_attribute(a: Attribute) -> str:
    return " ".join([a.pred] + [format_term(t, True) for t in a.args])


def attribute_key(a: Attribute) -> tuple:
    return (a.pred, len(a.args), tuple(term_key(t) for t in a.args))


def fact_key(f: Fact) -> tuple:
    return (attribute_key(f.attr), term_key(f.value))


class Loc(NamedTuple):
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class RelPremise(NamedTuple):
    """``pred args is value``"""

    pred: str
    args: tuple
    value: Term


class BuiltinPremise(NamedTuple):
    """A builtin relation instance.

    Comparisons (``EQ``, ``NEQ``, ``LT``, ``GT``) have two arguments and a
    ``None`` value; arithmetic relations relate two arguments to a value.
    """

    builtin: str
    args: tuple
    value: Term | None = None


Premise = Union[RelPremise, BuiltinPremise]


class RuleHead(NamedTuple):
    pred: str
    args: tuple
    values: tuple
    is_open: bool = False

    @classmethod
    def open(cls, pred: str, args, value: Term) -> "RuleHead":
        return cls(pred, tuple(args), (value,), True)

    @classmethod
    def closed(cls, pred: str, args, values) -> "RuleHead":
        values = tuple(values)
        if not values:
            raise ValueError("a closed head needs at least one value")
        return cls(pred, tuple(args), values, False)


class GroundHead(NamedTuple):
    attr: Attribute
    values: tuple
    is_open: bool


@dataclass(frozen=True)
class Rule:
    head: RuleHead
    premises: tuple = ()
    loc: Loc | None = field(default=None, compare=False)

    def variables(self) -> set[str]:
        out: set[str] = set()
        for t in (*self.head.args, *self.head.values):
            out.update(term_vars(t))
        for p in self.premises:
            for t in p.args:
                out.update(term_vars(t))
            if p.value is not None:
                out.update(term_vars(p.value))
        return out


@dataclass(frozen=True)
class Program:
    rules: tuple = ()
    demands: tuple = ()  # reserved nullary Attributes that must be `yes`


def ground_head(sigma: Substitution, h: RuleHead) -> GroundHead:
    attr = Attribute(h.pred, tuple(apply_subst(sigma, a) for a in h.args))
    values = tuple(dict.fromkeys(apply_subst(sigma, v) for v in h.values))
    return GroundHead(attr, values, h.is_open)


def fact_rule(fact: Fact) -> Rule:
    """A ground fact as a premise-free closed rule."""
    return Rule(RuleHead.closed(fact.attr.pred, fact.attr.args, (fact.value,)))


def with_facts(program: Program, facts) -> Program:
    extra = tuple(fact_rule(f) for f in facts)
    return Program(program.rules + extra, program.demands)


RESERVED_PREFIX = "$"


def is_reserved(pred: str) -> bool:
    return pred.startswith(RESERVED_PREFIX)
