"""Reference semantics used to cross-check the solver.

Everything here is deliberately naive: fact sets are frozensets of
:class:`~fclp.core.Fact`, premises are matched by brute-force nested loops and
search is plain breadth-first exploration of the step relation.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque
from itertools import chain, combinations

from .asp import AspProgram, AspRule
from .builtins import solve_builtin
from .core import (
    Attribute, BuiltinPremise, Fact, FuelExhausted, Program, ground_head, match_all,
)

FactSet = frozenset


def _index(facts) -> dict:
    by_pred = defaultdict(list)
    for f in facts:
        by_pred[f.attr.pred].append(f)
    return by_pred


def satisfying_substitutions(premises, facts, sigma=None):
    """Yield every substitution satisfying ``premises`` against the fact set."""
    by_pred = facts if isinstance(facts, dict) else _index(facts)
    yield from _satisfy(tuple(premises), 0, by_pred, dict(sigma or {}))


def _satisfy(premises, i, by_pred, sigma):
    if i == len(premises):
        yield sigma
        return
    p = premises[i]
    if isinstance(p, BuiltinPremise):
        for s in solve_builtin(p.builtin, p.args, p.value, sigma):
            yield from _satisfy(premises, i + 1, by_pred, s)
        return
    for f in by_pred.get(p.pred, ()):
        s = match_all((*p.args, p.value), (*f.attr.args, f.value), sigma)
        if s is not None:
            yield from _satisfy(premises, i + 1, by_pred, s)


def _values(facts) -> dict:
    return {f.attr: f.value for f in facts}


def evolutions(D: FactSet, P: Program) -> frozenset:
    """All successor sets S with D stepping to S (always including ``{D}``)."""
    D = frozenset(D)
    current = _values(D)
    by_pred = _index(D)
    out = {frozenset({D})}
    for rule in P.rules:
        for sigma in satisfying_substitutions(rule.premises, by_pred):
            gh = ground_head(sigma, rule.head)
            succ = set()
            if gh.is_open:
                succ.add(D)
            for v in gh.values:
                have = current.get(gh.attr)
                if have is None:
                    succ.add(D | {Fact(gh.attr, v)})
                elif have == v:
                    succ.add(D)
            out.add(frozenset(succ))
    return frozenset(out)


def is_saturated(D: FactSet, P: Program) -> bool:
    D = frozenset(D)
    return all(S == {D} for S in evolutions(D, P))


def enumerate_solutions_exhaustive(P: Program, fuel: int = 10_000, rng: random.Random | None = None) -> set:
    """Breadth-first closure of the step relation from the empty database.

    ``fuel`` bounds the number of expanded databases; when it runs out a
    :class:`FuelExhausted` is raised whose ``partial`` holds the solutions
    found so far.  Passing ``rng`` shuffles the frontier order.
    """
    start = frozenset()
    seen = {start}
    frontier = deque([start])
    solutions: set = set()
    expanded = 0
    while frontier:
        if expanded >= fuel:
            raise FuelExhausted("oracle search budget exhausted", partial=solutions)
        if rng is not None and len(frontier) > 1:
            k = rng.randrange(len(frontier))
            frontier.rotate(-k)
        D = frontier.popleft()
        expanded += 1
        evs = evolutions(D, P)
        if all(S == {D} for S in evs):
            solutions.add(D)
            continue
        successors = list(chain.from_iterable(evs))
        if rng is not None:
            rng.shuffle(successors)
        for E in successors:
            if E not in seen:
                seen.add(E)
                frontier.append(E)
    return solutions


def datalog_fixpoint(P: Program, fuel: int = 100_000) -> frozenset:
    """Least model of a value-free program, as a set of attributes."""
    facts: set[Fact] = set()
    while True:
        by_pred = _index(facts)
        derived = {
            Fact(gh.attr, gh.values[0])
            for rule in P.rules
            for sigma in satisfying_substitutions(rule.premises, by_pred)
            for gh in (ground_head(sigma, rule.head),)
        }
        if derived <= facts:
            return frozenset(f.attr for f in facts)
        facts |= derived
        if len(facts) > fuel:
            raise FuelExhausted("datalog fixpoint exceeded its budget", partial=frozenset(f.attr for f in facts))


# ---------------------------------------------------------------------------
# Stable models of ground ASP programs


def reduct(P: AspProgram, X) -> AspProgram:
    """Gelfond-Lifschitz reduct; choice rules keep ``h <- pos`` only when h is in X.

    Constraints are dropped: they filter candidate models rather than derive.
    """
    X = set(X)
    out = []
    for r in P.rules:
        if r.head is None or any(q in X for q in r.neg):
            continue
        if r.choice and r.head not in X:
            continue
        out.append(AspRule(r.head, r.pos))
    return AspProgram(tuple(out))


def least_model(P: AspProgram) -> frozenset:
    """Least model of a negation-free ground program."""
    model: set[Attribute] = set()
    changed = True
    while changed:
        changed = False
        for r in P.rules:
            if r.head is not None and r.head not in model and all(p in model for p in r.pos):
                model.add(r.head)
                changed = True
    return frozenset(model)


def violates_constraints(P: AspProgram, X) -> bool:
    X = set(X)
    return any(
        r.head is None and all(p in X for p in r.pos) and not any(q in X for q in r.neg)
        for r in P.rules
    )


def is_stable_model(P: AspProgram, X) -> bool:
    X = frozenset(X)
    return least_model(reduct(P, X)) == X and not violates_constraints(P, X)


def stable_models_brute_force(P: AspProgram) -> set:
    """Check every subset of head atoms (exponential; tiny programs only)."""
    heads = sorted({r.head for r in P.rules if r.head is not None}, key=repr)
    candidates = chain.from_iterable(combinations(heads, k) for k in range(len(heads) + 1))
    return {frozenset(c) for c in candidates if is_stable_model(P, c)}
