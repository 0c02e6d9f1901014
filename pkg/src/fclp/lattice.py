"""Constraints, constraint databases and choice sets with their orders and lubs.

``INCOMPATIBLE`` is returned (never raised) when no upper bound exists.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import NamedTuple, Union

import immutables

from .core import Attribute, Fact, Term, attribute_key, fact_key, format_attribute, format_term, term_key


class Just(NamedTuple):
    value: Term

    def __repr__(self) -> str:
        return f"just({format_term(self.value)})"


class NoneOf(NamedTuple):
    values: frozenset = frozenset()

    def __repr__(self) -> str:
        inner = ", ".join(format_term(v) for v in sorted(self.values, key=term_key))
        return f"noneOf{{{inner}}}"


Constraint = Union[Just, NoneOf]
BOTTOM = NoneOf(frozenset())


class _Incompatible:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INCOMPATIBLE"

    def __bool__(self) -> bool:
        return False


INCOMPATIBLE = _Incompatible()


class InconsistentFactSet(ValueError):
    pass


def constraint_key(c: Constraint) -> tuple:
    if type(c) is Just:
        return (0, term_key(c.value))
    return (1, tuple(sorted(term_key(v) for v in c.values)))


def constraint_leq(c1: Constraint, c2: Constraint) -> bool:
    if type(c1) is Just:
        return type(c2) is Just and c1.value == c2.value
    if type(c2) is Just:
        return c2.value not in c1.values
    return c1.values <= c2.values


def constraint_lub(cs: Iterable[Constraint]):
    just = None
    excluded: set = set()
    for c in cs:
        if type(c) is Just:
            if just is not None and just.value != c.value:
                return INCOMPATIBLE
            just = c
        else:
            excluded |= c.values
    if just is not None:
        return INCOMPATIBLE if just.value in excluded else just
    return NoneOf(frozenset(excluded))


def constraint_compatible(c1: Constraint, c2: Constraint) -> bool:
    return constraint_lub((c1, c2)) is not INCOMPATIBLE


class ConstraintDatabase:
    """Persistent map from attributes to constraints; bottom entries are never stored."""

    __slots__ = ("_map", "_key")

    def __init__(self, entries=None):
        if isinstance(entries, immutables.Map):
            self._map = entries
        else:
            pairs = entries.items() if isinstance(entries, dict) else (entries or ())
            self._map = immutables.Map((a, c) for a, c in pairs if c != BOTTOM)
        self._key = None

    @classmethod
    def of(cls, **named: Constraint) -> "ConstraintDatabase":
        """Shorthand for nullary attributes: ``ConstraintDatabase.of(p=Just('tt'))``."""
        return cls({Attribute(k): v for k, v in named.items()})

    def __getitem__(self, a: Attribute) -> Constraint:
        return self._map.get(a, BOTTOM)

    def set(self, a: Attribute, c: Constraint) -> "ConstraintDatabase":
        if c == BOTTOM:
            return ConstraintDatabase(self._map.delete(a)) if a in self._map else self
        return ConstraintDatabase(self._map.set(a, c))

    def items(self):
        return sorted(self._map.items(), key=lambda kv: attribute_key(kv[0]))

    def keys(self):
        return self._map.keys()

    def __len__(self) -> int:
        return len(self._map)

    def __iter__(self):
        return iter(a for a, _ in self.items())

    def __contains__(self, a) -> bool:
        return a in self._map

    def raw(self) -> immutables.Map:
        return self._map

    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = tuple((attribute_key(a), constraint_key(c)) for a, c in self.items())
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, ConstraintDatabase) and self._map == other._map

    def __hash__(self) -> int:
        return hash(self._map)

    def __repr__(self) -> str:
        if not self._map:
            return "⊥"
        inner = ", ".join(f"{format_attribute(a)}↦{c!r}" for a, c in self.items())
        return f"({inner})"


EMPTY_DB = ConstraintDatabase()


def db_leq(d: ConstraintDatabase, e: ConstraintDatabase) -> bool:
    # Keys missing from ``e`` are bottom there, so d's entry must be bottom too,
    # which elision rules out; hence every key of d must appear in e.
    for a, c in d.raw().items():
        if a not in e or not constraint_leq(c, e[a]):
            return False
    return True


def db_lub(ds: Iterable[ConstraintDatabase]):
    merged: dict[Attribute, Constraint] = {}
    for d in ds:
        for a, c in d.raw().items():
            prev = merged.get(a)
            if prev is None:
                merged[a] = c
            else:
                lub = constraint_lub((prev, c))
                if lub is INCOMPATIBLE:
                    return INCOMPATIBLE
                merged[a] = lub
    return ConstraintDatabase(merged)


def compatible(d: ConstraintDatabase, e: ConstraintDatabase) -> bool:
    small, big = (d, e) if len(d) <= len(e) else (e, d)
    for a, c in small.raw().items():
        other = big[a]
        if not constraint_compatible(c, other):
            return False
    return True


class ChoiceSet:
    """A pairwise-incompatible set of databases, iterated in canonical order."""

    __slots__ = ("_dbs",)

    def __init__(self, dbs: Iterable[ConstraintDatabase] = (), *, check: bool = False):
        unique = {d: None for d in dbs}
        ordered = tuple(sorted(unique, key=ConstraintDatabase.sort_key))
        if check:
            for i, d in enumerate(ordered):
                for e in ordered[i + 1:]:
                    if compatible(d, e):
                        raise ValueError(f"choice set members {d} and {e} are compatible")
        self._dbs = ordered

    def __iter__(self):
        return iter(self._dbs)

    def __len__(self) -> int:
        return len(self._dbs)

    def __contains__(self, d) -> bool:
        return d in self._dbs

    def __eq__(self, other) -> bool:
        return isinstance(other, ChoiceSet) and self._dbs == other._dbs

    def __hash__(self) -> int:
        return hash(self._dbs)

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self._dbs)) + "}"


CHOICE_BOTTOM = ChoiceSet([EMPTY_DB])
CHOICE_TOP = ChoiceSet()


def is_pairwise_incompatible(dbs) -> bool:
    dbs = list(dbs)
    return all(not compatible(d, e) for i, d in enumerate(dbs) for e in dbs[i + 1:])


def choice_leq(c1: ChoiceSet, c2: ChoiceSet) -> bool:
    return all(any(db_leq(d1, d2) for d1 in c1) for d2 in c2)


def choice_lub(cs: Iterable[ChoiceSet]) -> ChoiceSet:
    acc = [EMPTY_DB]
    for c in cs:
        nxt = []
        for d in acc:
            for e in c:
                lub = db_lub((d, e))
                if lub is not INCOMPATIBLE:
                    nxt.append(lub)
        acc = nxt
        if not acc:
            break
    return ChoiceSet(acc)


def erase(delta: ConstraintDatabase) -> frozenset:
    return frozenset(Fact(a, c.value) for a, c in delta.raw().items() if type(c) is Just)


def promote(facts: Iterable[Fact]) -> ConstraintDatabase:
    seen: dict[Attribute, Constraint] = {}
    for f in facts:
        prev = seen.get(f.attr)
        if prev is not None and prev.value != f.value:
            raise InconsistentFactSet(f"{format_attribute(f.attr)} has two values")
        seen[f.attr] = Just(f.value)
    return ConstraintDatabase(seen)


def is_consistent(facts: Iterable[Fact]) -> bool:
    seen = {}
    for f in facts:
        if seen.setdefault(f.attr, f.value) != f.value:
            return False
    return True


def is_positive(delta: ConstraintDatabase) -> bool:
    return all(type(c) is Just for c in delta.raw().values())


def sorted_facts(facts: Iterable[Fact]) -> list[Fact]:
    return sorted(facts, key=fact_key)
