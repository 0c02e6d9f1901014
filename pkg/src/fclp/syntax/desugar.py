"""Lower the surface tree to the core rule IR."""

from __future__ import annotations

from itertools import count

from ..builtins import BUILTINS, FUNCTIONAL, INFIX
from ..core import Attribute, BuiltinPremise, Fn, Program, RelPremise, Rule, RuleHead, Var
from .ast import SBuiltin, SCmp, SDemand, SForbid, SourceProgram, SRel, SRule
from .diagnostics import DesugarError, error

UNIT = "unit"
OK_PRED = "$ok"
YES, NO = "yes", "no"


def demand_pred(i: int) -> str:
    return f"$demand{i}"


class _RuleContext:
    """Fresh-variable supply and pending builtin premises for one rule."""

    def __init__(self, functions: dict[str, str], diags: list):
        self.functions = functions
        self.diags = diags
        self.fresh = count(1)

    def new_var(self) -> Var:
        return Var(f"_{next(self.fresh)}")

    def term(self, t, out: list, loc, in_head: bool = False):
        if type(t) is Var:
            if t.name.startswith("_"):
                if in_head:
                    self.diags.append(error("wildcard in rule head", loc, "WildcardInHead"))
                return self.new_var()
            return t
        if type(t) is Fn:
            args = tuple(self.term(a, out, loc, in_head) for a in t.args)
            builtin = self.functions.get(t.name)
            if builtin is None:
                return Fn(t.name, args)
            if len(args) != 2:
                self.diags.append(error(f"{t.name} expects two arguments", loc, "BuiltinArity"))
            result = self.new_var()
            out.append(BuiltinPremise(builtin, args, result))
            return result
        return t

    def premise(self, p, loc) -> list:
        pre: list = []
        if isinstance(p, SCmp):
            left = self.term(p.left, pre, loc)
            right = self.term(p.right, pre, loc)
            return pre + [BuiltinPremise(INFIX[p.op], (left, right), None)]
        args = tuple(self.term(a, pre, loc) for a in p.args)
        value = UNIT if p.value is None else self.term(p.value, pre, loc)
        builtin = self.functions.get(p.pred)
        if builtin is not None:
            if p.value is None:
                self.diags.append(error(f"builtin {p.pred} needs an 'is' result", loc, "BuiltinArity"))
            return pre + [BuiltinPremise(builtin, args, value)]
        return pre + [RelPremise(p.pred, args, value)]

    def premises(self, ps) -> list:
        out: list = []
        for p in ps:
            out.extend(self.premise(p, p.loc))
        return out


def desugar(src: SourceProgram) -> Program:
    """Lower a parsed program; raises :class:`DesugarError` on bad input."""
    diags: list = []
    functions: dict[str, str] = {}
    for d in src.decls:
        if isinstance(d, SBuiltin):
            if d.builtin not in FUNCTIONAL:
                known = ", ".join(sorted(FUNCTIONAL))
                diags.append(error(f"unknown builtin {d.builtin} (known: {known})", d.loc, "UnknownDirective"))
            else:
                functions[d.name] = d.builtin

    rules: list[Rule] = []
    demands: list[Attribute] = []
    forbids = False
    for d in src.decls:
        if isinstance(d, SRule):
            rules.append(_rule(d, functions, diags))
        elif isinstance(d, SForbid):
            forbids = True
            body = _RuleContext(functions, diags).premises(d.premises)
            rules.append(Rule(RuleHead.closed(OK_PRED, (), (NO,)), tuple(body), d.loc))
        elif isinstance(d, SDemand):
            pred = demand_pred(len(demands))
            body = _RuleContext(functions, diags).premises(d.premises)
            rules.append(Rule(RuleHead.closed(pred, (), (YES,)), tuple(body), d.loc))
            demands.append(Attribute(pred))
    if forbids:
        rules.append(Rule(RuleHead.closed(OK_PRED, (), (YES,))))
    if diags:
        raise DesugarError(diags)
    return Program(tuple(rules), tuple(demands))


def _rule(d: SRule, functions, diags) -> Rule:
    ctx = _RuleContext(functions, diags)
    h = d.head
    if h.pred in functions or h.pred in BUILTINS:
        diags.append(error(f"builtin {h.pred} cannot appear in a rule head", h.loc, "BuiltinInHead"))
    body = ctx.premises(d.premises)
    tail: list = []
    args = tuple(ctx.term(a, tail, h.loc, in_head=True) for a in h.args)
    values = tuple(ctx.term(v, tail, h.loc, in_head=True) for v in h.values)
    if h.kind == "open":
        head = RuleHead.open(h.pred, args, values[0])
    elif h.kind == "plain":
        head = RuleHead.closed(h.pred, args, (UNIT,))
    else:
        head = RuleHead.closed(h.pred, args, values)
    return Rule(head, tuple(body + tail), d.loc)
