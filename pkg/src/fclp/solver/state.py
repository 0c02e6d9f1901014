"""Persistent solver states and the deduce/choose primitives.

A :class:`SolveState` bundles immutable maps:

``db``
    attribute -> constraint (bottom elided).
``heads``
    attribute -> (closed intersection or None, open values) accumulated from
    every rule head whose premises hold in ``db``.
``prefixes`` / ``matches``
    the semi-naive join indices.  For premise ``i`` of rule ``r`` and a key
    made of the variables that premise shares with the earlier ones,
    ``prefixes`` holds environments satisfying premises ``0..i-1`` and
    ``matches`` holds environments produced by matching database facts
    against premise ``i``.  Adding an item to either side joins it with the
    other side exactly once.
``slots`` / ``slot_of``
    an indexed set of attributes whose consequence is a genuine choice, so a
    uniform random pick is a single lookup.
``pending``
    attributes that may be forced; :func:`deduce` drains it.

Only ``Just`` entries of ``db`` satisfy premises, so inserting a ``NoneOf``
constraint merely re-evaluates that attribute's agenda entry.
"""

from __future__ import annotations

import random
from collections import deque
from typing import NamedTuple

import immutables

from ..builtins import solve_builtin
from ..core import Attribute, BuiltinPremise, Fn, FuelExhausted, Program, Var, term_key, term_vars
from ..lattice import BOTTOM, ChoiceSet, ConstraintDatabase, Just, NoneOf

_EMPTY = immutables.Map()

AGREE, CHOICE, FORCED, CONFLICT = range(4)


class Conflict(NamedTuple):
    attr: Attribute


class Fuel:
    """Global insertion budget shared by one solve session."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    @property
    def remaining(self) -> int:
        return self.limit - self.used

    def spend(self) -> None:
        if self.used >= self.limit:
            raise FuelExhausted(f"fuel exhausted after {self.used} insertions")
        self.used += 1


def as_fuel(fuel) -> Fuel:
    if isinstance(fuel, Fuel):
        return fuel
    return Fuel(10**7 if fuel is None else fuel)


# ---------------------------------------------------------------------------
# Rule compilation: variables become slot numbers in a fixed-size environment


class _Slot(NamedTuple):
    i: int


class _CFn(NamedTuple):
    name: str
    args: tuple


def _compile_term(t, index):
    if type(t) is Var:
        return _Slot(index[t.name])
    if type(t) is Fn:
        args = tuple(_compile_term(a, index) for a in t.args)
        if any(type(a) in (_Slot, _CFn) for a in args):
            return _CFn(t.name, args)
        return Fn(t.name, args)
    return t


def _match(p, g, env) -> bool:
    tp = type(p)
    if tp is _Slot:
        cur = env[p.i]
        if cur is None:
            env[p.i] = g
            return True
        return type(cur) is type(g) and cur == g
    if tp is _CFn:
        if type(g) is not Fn or g.name != p.name or len(g.args) != len(p.args):
            return False
        for a, b in zip(p.args, g.args):
            if not _match(a, b, env):
                return False
        return True
    return type(p) is type(g) and p == g


def _inst(p, env):
    tp = type(p)
    if tp is _Slot:
        return env[p.i]
    if tp is _CFn:
        return Fn(p.name, tuple(_inst(a, env) for a in p.args))
    return p


_BIND, _CHECK, _CONST, _DEEP = range(4)


def _matcher(pat: tuple) -> tuple:
    """Flatten a premise pattern into (op, operand) steps for :meth:`_Builder._arrive`."""
    seen: set[int] = set()
    ops = []
    for p in pat:
        if type(p) is _Slot:
            ops.append((_CHECK if p.i in seen else _BIND, p.i))
            seen.add(p.i)
        elif type(p) is _CFn:
            ops.append((_DEEP, p))
            seen.update(_slots_in(p))
        else:
            ops.append((_CONST, p))
    return tuple(ops)


def _slots_in(p):
    if type(p) is _Slot:
        yield p.i
    elif type(p) is _CFn:
        for a in p.args:
            yield from _slots_in(a)


class _CRule(NamedTuple):
    rule: object
    names: tuple           # slot -> variable name
    kinds: tuple           # per premise: "rel" or "builtin"
    pats: tuple            # per premise: matcher steps, or the builtin premise itself
    join: tuple            # per premise: slots shared with earlier premises
    head_pred: str
    head_args: tuple
    head_values: tuple
    head_open: bool


class CompiledProgram:
    def __init__(self, program: Program):
        self.program = program
        self.rules: list[_CRule] = []
        self.occurrences: dict[str, list[tuple[int, int]]] = {}
        for r, rule in enumerate(program.rules):
            self.rules.append(self._compile(r, rule))

    def _compile(self, r: int, rule) -> _CRule:
        h = rule.head
        if not rule.premises:
            # Range restriction makes premise-free heads ground.
            return _CRule(rule, (), (), (), (), h.pred, h.args, h.values, h.is_open)
        names = list(dict.fromkeys(
            v for p in rule.premises for t in (*p.args, p.value) if t is not None for v in term_vars(t)
        ))
        for t in (*rule.head.args, *rule.head.values):
            names.extend(v for v in term_vars(t) if v not in names)
        index = {n: i for i, n in enumerate(names)}
        kinds, pats, join = [], [], []
        bound: set[int] = set()
        for i, p in enumerate(rule.premises):
            if isinstance(p, BuiltinPremise):
                kinds.append("builtin")
                pats.append(p)
                join.append(())
                for t in (*p.args, p.value):
                    if t is not None:
                        bound.update(index[v] for v in term_vars(t))
                continue
            kinds.append("rel")
            pats.append(_matcher(tuple(_compile_term(t, index) for t in (*p.args, p.value))))
            mine = {index[v] for t in (*p.args, p.value) for v in term_vars(t)}
            join.append(tuple(sorted(mine & bound)))
            bound |= mine
            self.occurrences.setdefault(p.pred, []).append((r, i))
        return _CRule(
            rule, tuple(names), tuple(kinds), tuple(pats), tuple(join), h.pred,
            tuple(_compile_term(t, index) for t in h.args),
            tuple(_compile_term(t, index) for t in h.values), h.is_open,
        )


# ---------------------------------------------------------------------------


class SolveState:
    """An immutable snapshot of the solver; share freely between tree nodes."""

    __slots__ = ("compiled", "db_map", "heads", "prefixes", "matches", "slots", "slot_of", "pending")

    def __init__(self, compiled, db_map, heads, prefixes, matches, slots, slot_of, pending):
        self.compiled = compiled
        self.db_map = db_map
        self.heads = heads
        self.prefixes = prefixes
        self.matches = matches
        self.slots = slots
        self.slot_of = slot_of
        self.pending = pending

    @property
    def db(self) -> ConstraintDatabase:
        return ConstraintDatabase(self.db_map)

    @property
    def choice_count(self) -> int:
        return len(self.slot_of)

    def is_saturated(self) -> bool:
        """No forced work pending and no open choices."""
        return not self.pending and not self.slot_of

    def is_positive(self) -> bool:
        return all(type(c) is Just for c in self.db_map.values())

    @property
    def agenda(self) -> dict:
        """Attributes whose consequence does not agree with the database."""
        out = {}
        for a in (*self.pending, *self.slot_of.keys()):
            cs = immediate_consequence_at(self, a)
            if cs != ChoiceSet([ConstraintDatabase({a: self.db_map.get(a, BOTTOM)})]):
                out[a] = cs
        return out


def _status(info, c):
    """Classify an attribute given its head summary and current constraint."""
    if info is None:
        return AGREE, None
    closed, opens = info
    if closed is not None:
        if type(c) is Just:
            return (AGREE, None) if c.value in closed else (CONFLICT, None)
        allowed = closed - c.values if c.values else closed
        n = len(allowed)
        if n == 0:
            return CONFLICT, None
        if n == 1:
            return FORCED, next(iter(allowed))
        return CHOICE, None
    if type(c) is Just or not opens:
        return AGREE, None
    excluded = c.values
    if not excluded:
        return CHOICE, None
    for v in opens:
        if v not in excluded:
            return CHOICE, None
    return AGREE, None


class _ConflictSignal(Exception):
    def __init__(self, attr):
        self.attr = attr


class _Builder:
    """Batch of in-place edits on copies of a state's maps."""

    def __init__(self, state: SolveState, fuel: Fuel | None):
        self.compiled = state.compiled
        self.db = state.db_map.mutate()
        self.heads = state.heads.mutate()
        self.prefixes = state.prefixes.mutate()
        self.matches = state.matches.mutate()
        self.slots = state.slots.mutate()
        self.slot_of = state.slot_of.mutate()
        self.n_choices = len(state.slot_of)
        self.pending = deque(state.pending)
        self.fuel = fuel
        self.queue: deque = deque()

    def finish(self) -> SolveState:
        return SolveState(
            self.compiled, self.db.finish(), self.heads.finish(), self.prefixes.finish(),
            self.matches.finish(), self.slots.finish(), self.slot_of.finish(), tuple(self.pending),
        )

    # -- agenda bookkeeping ------------------------------------------------

    def _add_choice(self, a):
        if a in self.slot_of:
            return
        n = self.n_choices
        self.slots[n] = a
        self.slot_of[a] = n
        self.n_choices = n + 1

    def _drop_choice(self, a):
        i = self.slot_of.get(a)
        if i is None:
            return
        last = self.n_choices - 1
        moved = self.slots[last]
        self.slots[i] = moved
        self.slot_of[moved] = i
        del self.slots[last]
        del self.slot_of[a]
        self.n_choices = last

    def refresh(self, a):
        kind, _ = _status(self.heads.get(a), self.db.get(a, BOTTOM))
        if kind == CHOICE:
            self._add_choice(a)
            return
        self._drop_choice(a)
        if kind == FORCED:
            self.pending.append(a)
        elif kind == CONFLICT:
            raise _ConflictSignal(a)

    # -- insertion and propagation -------------------------------------------

    def insert(self, a, c):
        if self.db.get(a, BOTTOM) == c:
            return
        if self.fuel is not None:
            self.fuel.spend()
        self.db[a] = c
        if type(c) is Just:
            self._arrive(a, c.value)
            self._drain()
        self.refresh(a)

    def _arrive(self, a, v):
        rules = self.compiled.rules
        ground = (*a.args, v)
        prefixes, matches, queue = self.prefixes, self.matches, self.queue
        for r, i in self.compiled.occurrences.get(a.pred, ()):
            cr = rules[r]
            ops = cr.pats[i]
            if len(ops) != len(ground):
                continue
            env = [None] * len(cr.names)
            for (op, x), g in zip(ops, ground):
                if op == _BIND:
                    env[x] = g
                elif op == _CHECK:
                    if env[x] != g:
                        break
                elif op == _CONST:
                    if x != g:
                        break
                elif not _match(x, g, env):
                    break
            else:
                fenv = tuple(env)
                key = (r, i, tuple([fenv[s] for s in cr.join[i]]))
                matches[key] = (fenv, matches.get(key))
                node = prefixes.get(key)
                while node is not None:
                    penv, node = node
                    queue.append((r, i + 1, _merge(penv, fenv)))

    def _drain(self):
        queue = self.queue
        while queue:
            r, j, env = queue.popleft()
            self.prefix(r, j, env)

    def prefix(self, r, j, env):
        cr = self.compiled.rules[r]
        if j == len(cr.kinds):
            self.fire(cr, env)
            return
        if cr.kinds[j] == "builtin":
            p = cr.pats[j]
            sigma = {n: v for n, v in zip(cr.names, env) if v is not None}
            for out in solve_builtin(p.builtin, p.args, p.value, sigma):
                self.prefix(r, j + 1, tuple(out.get(n) for n in cr.names))
            return
        key = (r, j, tuple([env[s] for s in cr.join[j]]))
        self.prefixes[key] = (env, self.prefixes.get(key))
        node = self.matches.get(key)
        queue = self.queue
        while node is not None:
            fenv, node = node
            queue.append((r, j + 1, _merge(env, fenv)))

    def fire(self, cr: _CRule, env):
        attr = Attribute(cr.head_pred, tuple([_inst(p, env) for p in cr.head_args]))
        info = self.heads.get(attr)
        if cr.head_open:
            v = _inst(cr.head_values[0], env)
            if info is None:
                new = (None, _EMPTY.set(v, True))
            else:
                closed, opens = info
                if closed is not None or v in opens:
                    return  # opens are irrelevant once a closed head exists
                new = (None, opens.set(v, True))
        else:
            vs = frozenset([_inst(p, env) for p in cr.head_values])
            if info is None:
                new = (vs, _EMPTY)
            else:
                closed, _ = info
                if closed is None:
                    new = (vs, _EMPTY)
                else:
                    narrowed = closed & vs
                    if len(narrowed) == len(closed):
                        return
                    new = (narrowed, _EMPTY)
        self.heads[attr] = new
        self.refresh(attr)


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple([x if x is not None else y for x, y in zip(a, b)])


# ---------------------------------------------------------------------------
# Public operations


def initial_state(program_or_compiled, fuel=None) -> SolveState | Conflict:
    """State for the empty database, with premise-free rules already fired."""
    compiled = program_or_compiled
    if not isinstance(compiled, CompiledProgram):
        compiled = CompiledProgram(program_or_compiled)
    empty = SolveState(compiled, _EMPTY, _EMPTY, _EMPTY, _EMPTY, _EMPTY, _EMPTY, ())
    b = _Builder(empty, as_fuel(fuel) if fuel is not None else None)
    try:
        for r, cr in enumerate(compiled.rules):
            b.prefix(r, 0, (None,) * len(cr.names))
            b._drain()
    except _ConflictSignal as sig:
        return Conflict(sig.attr)
    return b.finish()


def insert_fact(s: SolveState, a: Attribute, c, fuel=None) -> SolveState | Conflict:
    """Raise ``db[a]`` to ``c`` (which must be at least the current entry)."""
    b = _Builder(s, as_fuel(fuel) if fuel is not None else None)
    try:
        b.insert(a, c)
    except _ConflictSignal as sig:
        return Conflict(sig.attr)
    return b.finish()


def deduce(s: SolveState, fuel=None) -> SolveState | Conflict:
    """Apply forced consequences until none remain; raises FuelExhausted."""
    if not s.pending:
        return s
    b = _Builder(s, as_fuel(fuel) if fuel is not None else None)
    heads, db, pending = b.heads, b.db, b.pending
    try:
        while pending:
            a = pending.popleft()
            kind, value = _status(heads.get(a), db.get(a, BOTTOM))
            if kind == FORCED:
                b.insert(a, Just(value))
            elif kind == CONFLICT:
                return Conflict(a)
    except _ConflictSignal as sig:
        return Conflict(sig.attr)
    return b.finish()


def step(s: SolveState, a: Attribute, c, fuel=None) -> SolveState | Conflict:
    """One choice followed by deduction."""
    fuel = as_fuel(fuel) if fuel is not None else None
    s2 = insert_fact(s, a, c, fuel)
    return s2 if isinstance(s2, Conflict) else deduce(s2, fuel)


def candidates(s: SolveState, a: Attribute) -> tuple[list, NoneOf | None]:
    """Just-options (canonically sorted) and the optional NoneOf option for ``a``."""
    info = s.heads.get(a)
    c = s.db_map.get(a, BOTTOM)
    if info is None:
        return [], None
    closed, opens = info
    if type(c) is Just:
        return [c], None
    excluded = c.values
    if closed is not None:
        return [Just(v) for v in sorted(closed - excluded, key=term_key)], None
    vals = sorted((v for v in opens.keys() if v not in excluded), key=term_key)
    if not vals:
        return [], None
    return [Just(v) for v in vals], NoneOf(excluded | frozenset(opens.keys()))


def choose(s: SolveState, rng: random.Random):
    """Pick an agenda attribute uniformly; Just candidates shuffled, NoneOf last."""
    if not s.slot_of:
        raise ValueError("choose needs a non-empty agenda")
    a = s.slots[rng.randrange(len(s.slot_of))]
    justs, none_of = candidates(s, a)
    rng.shuffle(justs)
    return a, justs + ([none_of] if none_of is not None else [])


def immediate_consequence_at(s: SolveState, a: Attribute) -> ChoiceSet:
    """The singular choice set the satisfied heads for ``a`` induce, joined with db[a]."""
    c = s.db_map.get(a, BOTTOM)
    info = s.heads.get(a)
    if info is None:
        return ChoiceSet([ConstraintDatabase({a: c})])
    kind, _ = _status(info, c)
    if kind == AGREE:
        return ChoiceSet([ConstraintDatabase({a: c})])
    if kind == CONFLICT:
        return ChoiceSet()
    justs, none_of = candidates(s, a)
    opts = justs + ([none_of] if none_of is not None else [])
    return ChoiceSet(ConstraintDatabase({a: o}) for o in opts)
