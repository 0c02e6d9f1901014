"""Surface syntax tree.  Locations are excluded from equality."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import Loc, Term

# Surface terms reuse core terms; a variable whose name starts with ``_`` is a
# wildcard and gets a fresh name during desugaring.


@dataclass(frozen=True)
class SHead:
    pred: str
    args: tuple
    kind: str = "plain"  # plain | is | closed | open
    values: tuple = ()
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SRel:
    """``pred args [is value]``; ``value`` is None for the value-free form."""

    pred: str
    args: tuple
    value: Term | None = None
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SCmp:
    op: str  # == != < >
    left: Term
    right: Term
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SRule:
    head: SHead
    premises: tuple = ()
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SBuiltin:
    builtin: str
    name: str
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SForbid:
    premises: tuple
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SDemand:
    premises: tuple
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SourceProgram:
    decls: tuple = ()

    @property
    def rules(self) -> list[SRule]:
        return [d for d in self.decls if isinstance(d, SRule)]
