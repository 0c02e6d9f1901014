"""Builtin relations: equality, disequality, integer comparison and arithmetic.

Each builtin is finite under an *admissible mode*, i.e. a choice of which
positions must already be ground before the premise is evaluated.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .core import Substitution, Term, UnboundVariable, apply_subst, match, term_vars

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class BuiltinError(Exception):
    pass


class InadmissibleMode(BuiltinError):
    pass


class NonIntegerArgument(BuiltinError):
    pass


class IntegerOverflow(NonIntegerArgument):
    pass


@dataclass(frozen=True)
class BuiltinRelation:
    id: str
    symbol: str  # infix operator, or "" for functional builtins
    functional: bool


BUILTINS = {
    b.id: b
    for b in (
        BuiltinRelation("EQ", "==", False),
        BuiltinRelation("NEQ", "!=", False),
        BuiltinRelation("LT", "<", False),
        BuiltinRelation("GT", ">", False),
        BuiltinRelation("INT_PLUS", "", True),
        BuiltinRelation("INT_MINUS", "", True),
    )
}
INFIX = {b.symbol: b.id for b in BUILTINS.values() if b.symbol}
FUNCTIONAL = frozenset(k for k, b in BUILTINS.items() if b.functional)


def _vars(t: Term) -> set[str]:
    return set(term_vars(t))


def _positions(args, value) -> list:
    return [*args, value] if value is not None else list(args)


def admissible(builtin: str, args, value, bound: set[str]) -> bool:
    """Can the premise be evaluated once the variables in ``bound`` are known?"""
    groundable = [_vars(t) <= bound for t in _positions(args, value)]
    if builtin == "EQ":
        return groundable[0] or groundable[1]
    if builtin in ("NEQ", "LT", "GT"):
        return all(groundable)
    if builtin in FUNCTIONAL:
        return sum(groundable) >= 2
    raise InadmissibleMode(f"unknown builtin {builtin}")


def bound_after(builtin: str, args, value, bound: set[str]) -> set[str]:
    out = set(bound)
    for t in _positions(args, value):
        out |= _vars(t)
    return out


def _checked(n: int) -> int:
    if not INT64_MIN <= n <= INT64_MAX:
        raise IntegerOverflow(f"integer overflow: {n}")
    return n


def _as_int(t: Term) -> int:
    if type(t) is not int:
        raise NonIntegerArgument(f"expected an integer, got {t!r}")
    return t


def _ground_or_none(sigma: Substitution, t: Term):
    try:
        return apply_subst(sigma, t)
    except UnboundVariable:
        return None


def solve_builtin(builtin: str, args, value, sigma: Substitution) -> list[dict]:
    """Return every minimal extension of ``sigma`` satisfying the builtin (0 or 1 here)."""
    args = tuple(args)
    if builtin == "EQ":
        left, right = (_ground_or_none(sigma, t) for t in args)
        if left is not None:
            out = match(args[1], left, sigma)
        elif right is not None:
            out = match(args[0], right, sigma)
        else:
            raise InadmissibleMode("== needs one ground side")
        return [out] if out is not None else []

    if builtin in ("NEQ", "LT", "GT"):
        left, right = (_ground_or_none(sigma, t) for t in args)
        if left is None or right is None:
            raise InadmissibleMode(f"{BUILTINS[builtin].symbol} needs both sides ground")
        if builtin == "NEQ":
            ok = left != right or type(left) is not type(right)
        elif builtin == "LT":
            ok = _as_int(left) < _as_int(right)
        else:
            ok = _as_int(left) > _as_int(right)
        return [dict(sigma)] if ok else []

    if builtin in FUNCTIONAL:
        if len(args) != 2 or value is None:
            raise InadmissibleMode(f"{builtin} takes two arguments and a result")
        a, b, c = (_ground_or_none(sigma, t) for t in (*args, value))
        known = [x is not None for x in (a, b, c)]
        if sum(known) < 2:
            raise InadmissibleMode(f"{builtin} needs two of its three positions ground")
        plus = builtin == "INT_PLUS"
        if a is not None and b is not None:
            x, y = _as_int(a), _as_int(b)
            result = _checked(x + y if plus else x - y)
            out = match(value, result, sigma)
        elif a is not None:  # solve for b
            x, z = _as_int(a), _as_int(c)
            out = match(args[1], _checked(z - x if plus else x - z), sigma)
        else:  # solve for a
            y, z = _as_int(b), _as_int(c)
            out = match(args[0], _checked(z - y if plus else z + y), sigma)
        return [out] if out is not None else []

    raise InadmissibleMode(f"unknown builtin {builtin}")


def evaluate(builtin: str, args: Iterable[Term]) -> Term:
    """Apply a functional builtin to ground arguments (used by tests and printers)."""
    a, b = (_as_int(t) for t in args)
    return _checked(a + b if builtin == "INT_PLUS" else a - b)
