"""Static checks on desugared programs: range restriction and builtin modes."""

from __future__ import annotations

from ..builtins import BUILTINS, admissible, bound_after
from ..core import BuiltinPremise, Program, term_vars
from .diagnostics import Diagnostic, error


def _describe(p: BuiltinPremise) -> str:
    sym = BUILTINS[p.builtin].symbol
    if sym:
        return f"{p.args[0]!r} {sym} {p.args[1]!r}"
    return f"{p.builtin} {' '.join(map(repr, p.args))} is {p.value!r}"


def check_program(program: Program) -> list[Diagnostic]:
    """Return diagnostics; an empty list means the program is acceptable."""
    diags: list[Diagnostic] = []
    for rule in program.rules:
        if rule.head.pred in BUILTINS:
            diags.append(error(f"builtin {rule.head.pred} in rule head", rule.loc, "BuiltinInHead"))
        bound: set[str] = set()
        for p in rule.premises:
            if isinstance(p, BuiltinPremise):
                if not admissible(p.builtin, p.args, p.value, bound):
                    diags.append(error(
                        f"builtin premise {_describe(p)} cannot be evaluated left to right "
                        f"(bound so far: {', '.join(sorted(bound)) or 'nothing'})",
                        rule.loc, "UngroundableBuiltin"))
                bound = bound_after(p.builtin, p.args, p.value, bound)
            else:
                for t in (*p.args, p.value):
                    bound.update(term_vars(t))
        head_vars = []
        for t in (*rule.head.args, *rule.head.values):
            head_vars.extend(term_vars(t))
        for v in dict.fromkeys(head_vars):
            if v not in bound:
                diags.append(error(f"head variable {v} is not bound by any premise", rule.loc, "RangeRestriction"))
    return diags
