"""Persistent decision tree with root restarts, pruning and snapshot replay."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..core import Attribute, FuelExhausted, Program
from ..lattice import Just, erase
from .state import CompiledProgram, Conflict, SolveState, as_fuel, choose, deduce, initial_state, step

DEFAULT_FUEL = 10**7
SNAPSHOT_INTERVAL = 8

_DONE = object()  # child slot whose subtree is fully explored


@dataclass
class SolveStats:
    insertions: int = 0
    nodes: int = 0
    models: int = 0
    solutions: int = 0
    backtracks: int = 0
    rejected: int = 0


class _Node:
    __slots__ = ("parent", "recipe", "depth", "state", "attr", "cands", "children", "exhausted")

    def __init__(self, parent, recipe, depth, state, attr, cands):
        self.parent = parent
        self.recipe = recipe  # constraint chosen at the parent to reach this node
        self.depth = depth
        self.state = state
        self.attr = attr
        self.cands = cands
        self.children: list = [None] * len(cands)
        self.exhausted = False


class Solver:
    """One solve session: a shared decision tree explored by random descents.

    Every call to :meth:`next_solution` starts at the root, walks down by
    picking unexplored or partially explored children (``Just`` options
    first), and backs up to the nearest live ancestor after a dead end.
    Leaves are pairwise incompatible, so no solution is produced twice.
    """

    def __init__(self, program: Program | CompiledProgram, seed: int = 0, fuel: int | None = DEFAULT_FUEL,
                 snapshot_interval: int = SNAPSHOT_INTERVAL):
        self.compiled = program if isinstance(program, CompiledProgram) else CompiledProgram(program)
        self.demands = self.compiled.program.demands
        self.rng = random.Random(seed)
        self.fuel = as_fuel(fuel)
        self.k = max(1, snapshot_interval)
        self.stats = SolveStats()
        self.done = False
        self._root: _Node | None = None
        self.trace = None  # optional callback(state) for every state reached

    # -- helpers --------------------------------------------------------------

    def _sync(self):
        self.stats.insertions = self.fuel.used

    def _step(self, state, attr, c):
        out = step(state, attr, c, self.fuel)
        if self.trace is not None and not isinstance(out, Conflict):
            self.trace(out)
        return out

    def _accepts(self, state: SolveState) -> bool:
        if not state.is_positive():
            return False
        db = state.db_map
        return all(db.get(d) == Just("yes") for d in self.demands)

    def _leaf(self, state):
        """Account for a leaf; return its solution if it is one."""
        if isinstance(state, Conflict):
            self.stats.backtracks += 1
            return None
        self.stats.models += 1
        if self._accepts(state):
            self.stats.solutions += 1
            return erase(state.db)
        self.stats.rejected += 1
        self.stats.backtracks += 1
        return None

    def _node(self, parent, recipe, state) -> _Node:
        depth = 0 if parent is None else parent.depth + 1
        attr, cands = choose(state, self.rng)
        keep = state if depth % self.k == 0 else None
        self.stats.nodes += 1
        return _Node(parent, recipe, depth, keep, attr, cands)

    def _materialize(self, node: _Node) -> SolveState:
        path = []
        while node.state is None:
            path.append(node)
            node = node.parent
        state = node.state
        for n in reversed(path):
            state = self._step(state, n.parent.attr, n.recipe)
            assert not isinstance(state, Conflict), "replay diverged"
        return state

    def _pick(self, node: _Node) -> int:
        live = [i for i, (c, ch) in enumerate(zip(node.cands, node.children))
                if type(c) is Just and ch is not _DONE and (ch is None or not ch.exhausted)]
        if live:
            return self.rng.choice(live)
        for i, ch in enumerate(node.children):
            if ch is not _DONE and (ch is None or not ch.exhausted):
                return i
        raise AssertionError("picked from an exhausted node")

    def _close(self, node: _Node, idx: int):
        """Mark child ``idx`` explored and propagate exhaustion upwards."""
        node.children[idx] = _DONE
        while node is not None and all(ch is _DONE for ch in node.children):
            node.exhausted = True
            node.state = None
            parent = node.parent
            if parent is None:
                self.done = True
                return
            parent.children[parent.children.index(node)] = _DONE
            node = parent

    def _start(self):
        s = initial_state(self.compiled, self.fuel)
        if self.trace is not None and not isinstance(s, Conflict):
            self.trace(s)
        if isinstance(s, Conflict):
            return s
        s = deduce(s, self.fuel)
        if self.trace is not None and not isinstance(s, Conflict):
            self.trace(s)
        return s

    # -- public API -------------------------------------------------------------

    def next_solution(self) -> frozenset | None:
        """Return the next solution, or None once the tree is exhausted.

        Raises :class:`FuelExhausted` when the insertion budget runs out.
        """
        try:
            return self._next()
        finally:
            self._sync()

    def _next(self):
        if self.done:
            return None
        if self._root is None:
            s = self._start()
            if isinstance(s, Conflict) or s.is_saturated():
                self.done = True
                return self._leaf(s)
            self._root = self._node(None, None, s)
            self._root.state = s
        node = self._root
        state = node.state
        while True:
            idx = self._pick(node)
            child = node.children[idx]
            c = node.cands[idx]
            if child is not None:
                state = child.state if child.state is not None else self._step(state, node.attr, c)
                assert not isinstance(state, Conflict), "replay diverged"
                node = child
                continue
            st = self._step(state, node.attr, c)
            if not isinstance(st, Conflict) and not st.is_saturated():
                child = self._node(node, c, st)
                node.children[idx] = child
                node, state = child, st
                continue
            solution = self._leaf(st)
            self._close(node, idx)
            if solution is not None:
                return solution
            here = node
            while node is not None and node.exhausted:
                node = node.parent
            if node is None:
                return None
            if node is not here:
                state = self._materialize(node)

    def solutions(self, limit: int | None = None):
        """Generator over distinct solutions (stops at ``limit`` or exhaustion)."""
        count = 0
        while limit is None or count < limit:
            sol = self.next_solution()
            if sol is None:
                return
            count += 1
            yield sol


@dataclass
class SolveOutcome:
    status: str  # solution | no-solution | fuel-exhausted
    facts: frozenset | None = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def ok(self) -> bool:
        return self.status == "solution"


@dataclass
class Enumeration:
    solutions: list
    status: str  # exhausted | count-reached | fuel-exhausted
    stats: SolveStats

    @property
    def exhausted(self) -> bool:
        return self.status == "exhausted"


def solve_one(program: Program, seed: int = 0, fuel: int | None = DEFAULT_FUEL, **kw) -> SolveOutcome:
    solver = Solver(program, seed, fuel, **kw)
    try:
        sol = solver.next_solution()
    except FuelExhausted:
        return SolveOutcome("fuel-exhausted", None, solver.stats)
    if sol is None:
        return SolveOutcome("no-solution", None, solver.stats)
    return SolveOutcome("solution", sol, solver.stats)


def enumerate_solutions(program: Program, n: int | None = None, seed: int = 0,
                        fuel: int | None = DEFAULT_FUEL, **kw) -> Enumeration:
    """Collect up to ``n`` distinct solutions (all of them when ``n`` is None)."""
    solver = Solver(program, seed, fuel, **kw)
    found: list = []
    try:
        for sol in solver.solutions(n):
            found.append(sol)
    except FuelExhausted:
        return Enumeration(found, "fuel-exhausted", solver.stats)
    if len(set(found)) != len(found):
        raise AssertionError("solver produced a duplicate solution")
    status = "exhausted" if solver.done else "count-reached"
    return Enumeration(found, status, solver.stats)
