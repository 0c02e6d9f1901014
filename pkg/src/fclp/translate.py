"""Answer set programs and datalog programs rewritten as finite-choice programs.

Each ASP rule ``h :- p1..pn, not q1..qm`` becomes ``m`` open rules that allow
``qi`` to be ``ff`` once the positive premises hold and ``q1..q(i-1)`` are
already ``ff``, followed by one closed rule ``h is { tt }`` over every premise.
The ``permissive`` flag instead opens every ``qi is? ff`` unconditionally.
"""

from __future__ import annotations

from .asp import AspProgram, AspRule
from .core import Program, is_ground
from .syntax.ast import SCmp, SForbid, SHead, SourceProgram, SRel, SRule
from .syntax.desugar import desugar

TT, FF = "tt", "ff"


class NonGroundInput(ValueError):
    pass


class NotDatalog(ValueError):
    pass


def _rel(atom, value=None) -> SRel:
    # Both languages capitalise variables, so argument terms carry over as is.
    return SRel(atom.pred, tuple(atom.args), value)


def _cmps(rule: AspRule) -> list:
    return [SCmp(op, left, right) for op, left, right in rule.cmps]


def asp_to_source(program: AspProgram, permissive: bool = False, allow_nonground: bool = False) -> SourceProgram:
    if not allow_nonground and not program.is_ground():
        raise NonGroundInput("ASP input contains variables; pass allow_nonground to translate it anyway")
    decls: dict = {}
    for r in program.rules:
        positive = [_rel(p, TT) for p in r.pos] + _cmps(r)
        negated = [_rel(q, FF) for q in r.neg]
        for i, q in enumerate(r.neg):
            if permissive and all(is_ground(t) for t in q.args):
                body: list = []
            elif permissive:
                body = positive  # keep range restriction for variables
            else:
                body = positive + negated[:i]
            decls.setdefault(SRule(SHead(q.pred, tuple(q.args), "open", (FF,)), tuple(body)), None)
        body = tuple(positive + negated)
        if r.head is None:
            decls.setdefault(SForbid(body), None)
        else:
            values = (TT, FF) if r.choice else (TT,)
            decls.setdefault(SRule(SHead(r.head.pred, tuple(r.head.args), "closed", values), body), None)
    return SourceProgram(tuple(decls))


def asp_to_fclp(program: AspProgram, permissive: bool = False, allow_nonground: bool = False) -> Program:
    return desugar(asp_to_source(program, permissive, allow_nonground))


def datalog_to_source(program: AspProgram) -> SourceProgram:
    decls = []
    for r in program.rules:
        if r.neg or r.choice or r.head is None:
            raise NotDatalog("datalog rules have a head and no negation or choice")
        body = tuple([_rel(p) for p in r.pos] + _cmps(r))
        decls.append(SRule(SHead(r.head.pred, tuple(r.head.args), "plain"), body))
    return SourceProgram(tuple(decls))


def datalog_to_fclp(program: AspProgram) -> Program:
    return desugar(datalog_to_source(program))
