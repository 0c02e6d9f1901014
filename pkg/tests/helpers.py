"""Random generators and small utilities shared by the test modules."""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

from fclp.asp import AspProgram, AspRule
from fclp.core import Attribute, Program, RelPremise, Rule, RuleHead, Var
from fclp.lattice import ChoiceSet, ConstraintDatabase, Just, NoneOf, compatible

DATA = Path(__file__).parent / "data"


def data(name: str) -> str:
    return (DATA / name).read_text()


# -- lattice values over a small universe -------------------------------------------

VALUES = ("a", "b", "c")
ATTRS = (Attribute("p"), Attribute("q"))
ALL_CONSTRAINTS = [Just(v) for v in VALUES] + [
    NoneOf(frozenset(s)) for k in range(len(VALUES) + 1) for s in combinations(VALUES, k)
]


def all_dbs() -> list[ConstraintDatabase]:
    out = [ConstraintDatabase()]
    for a in ATTRS:
        out = [d.set(a, c) for d in out for c in ALL_CONSTRAINTS]
    return out


ALL_DBS = all_dbs()


def rand_constraint(rng: random.Random):
    return rng.choice(ALL_CONSTRAINTS)


def rand_db(rng: random.Random) -> ConstraintDatabase:
    return rng.choice(ALL_DBS)


def rand_choice_set(rng: random.Random, max_size: int = 4) -> ChoiceSet:
    kept: list = []
    for _ in range(rng.randint(0, max_size)):
        d = rand_db(rng)
        if all(not compatible(d, e) for e in kept):
            kept.append(d)
    return ChoiceSet(kept)


# -- random finite-choice programs ------------------------------------------------------

PREDS = ("p", "q", "r")
CONSTS = ("a", "b", "c")


def rand_program(rng: random.Random, n_preds: int = 3, n_consts: int = 3, max_rules: int = 5) -> Program:
    """Programs with at most ``n_preds`` predicates (arity 0 or 1) and ``n_consts`` constants.

    Heads reuse only variables bound by the premises, so every program is
    range-restricted and has a finite Herbrand base.
    """
    preds = PREDS[:n_preds]
    consts = CONSTS[:n_consts]
    arity = {p: rng.randint(0, 1) for p in preds}
    rules = []
    for _ in range(rng.randint(max(1, max_rules - 2), max_rules)):
        premises, bound = [], []
        for _ in range(rng.choice((0, 0, 1, 1, 2, 2))):
            p = rng.choice(preds)
            args = tuple(_pattern(rng, consts, bound, fresh=True) for _ in range(arity[p]))
            value = _pattern(rng, consts, bound, fresh=True)
            premises.append(RelPremise(p, args, value))
        h = rng.choice(preds)
        args = tuple(_pattern(rng, consts, bound, fresh=False) for _ in range(arity[h]))
        if rng.random() < 0.35:
            head = RuleHead.open(h, args, _pattern(rng, consts, bound, fresh=False))
        else:
            values = [_pattern(rng, consts, bound, fresh=False) for _ in range(rng.randint(1, 3))]
            head = RuleHead.closed(h, args, tuple(dict.fromkeys(values)))
        rules.append(Rule(head, tuple(premises)))
    return Program(tuple(rules))


def _pattern(rng, consts, bound: list, fresh: bool):
    if fresh and rng.random() < 0.5:
        v = Var(f"X{len(bound)}")
        bound.append(v)
        return v
    if bound and rng.random() < 0.5:
        return rng.choice(bound)
    return rng.choice(consts)


# -- random ground answer-set programs ------------------------------------------------


def rand_asp(rng: random.Random, max_props: int = 6, max_rules: int = 8, extras: bool = True) -> AspProgram:
    props = [Attribute(f"a{i}") for i in range(rng.randint(1, max_props))]
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        body = rng.sample(props, rng.randint(0, min(3, len(props))))
        split = rng.randint(0, len(body))
        pos, neg = tuple(body[:split]), tuple(body[split:])
        roll = rng.random() if extras else 1.0
        if roll < 0.1 and body:
            rules.append(AspRule(None, pos, neg))
        elif roll < 0.2:
            rules.append(AspRule(rng.choice(props), pos, neg, choice=True))
        else:
            rules.append(AspRule(rng.choice(props), pos, neg))
    return AspProgram(tuple(rules))
