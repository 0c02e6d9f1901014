"""Graph instance generators for the benchmark suites, and solution validators."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import Attribute, Fact

FAMILIES = (
    "sparse-linear",
    "sparse-cycles",
    "verysparse-random",
    "sparse-random",
    "mid-random",
    "dense-random",
)

# Target edge count as a function of node count for the random families.
_RANDOM_EDGES = {
    "verysparse-random": lambda n: n // 2,
    "sparse-random": lambda n: n,
    "mid-random": lambda n: 2 * n,
    "dense-random": lambda n: n * n // 8,
}


@dataclass(frozen=True)
class GraphInstance:
    nodes: int
    edges: tuple  # (u, v) pairs with u < v, nodes numbered 1..nodes
    family: str
    seed: int

    def facts(self, with_nodes: bool = True) -> list[Fact]:
        out = [Fact(Attribute("node", (v,)), "unit") for v in range(1, self.nodes + 1)] if with_nodes else []
        out += [Fact(Attribute("edge", (u, v)), "unit") for u, v in self.edges]
        return out


class UnknownFamily(ValueError):
    pass


def _cycle_edges(members: list[int]) -> list[tuple[int, int]]:
    ring = list(zip(members, members[1:] + members[:1]))
    return [(min(u, v), max(u, v)) for u, v in ring]


def gen_graph(family: str, size: int, seed: int = 0) -> GraphInstance:
    """Generate ``size`` nodes of the given family, deterministically per seed.

    * ``sparse-linear``: the path 1-2-...-n.
    * ``sparse-cycles``: disjoint cycles of length ``max(3, isqrt(n))``; the
      leftover nodes join the last cycle (fewer than 3 nodes give a path).
    * random families: ``G(n, m)`` with ``m`` = n/2, n, 2n or n^2/8 (capped at
      the complete graph), edges sampled uniformly without replacement.
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    if family == "sparse-linear":
        edges = [(i, i + 1) for i in range(1, size)]
    elif family == "sparse-cycles":
        if size < 3:
            edges = [(i, i + 1) for i in range(1, size)]
        else:
            length = max(3, math.isqrt(size))
            count = size // length
            edges = []
            for c in range(count):
                lo = c * length + 1
                hi = size + 1 if c == count - 1 else lo + length
                edges += _cycle_edges(list(range(lo, hi)))
    elif family in _RANDOM_EDGES:
        rng = random.Random(f"{family}:{size}:{seed}")
        m = min(_RANDOM_EDGES[family](size), size * (size - 1) // 2)
        chosen: set[tuple[int, int]] = set()
        while len(chosen) < m:
            u, v = rng.randint(1, size), rng.randint(1, size)
            if u != v:
                chosen.add((min(u, v), max(u, v)))
        edges = sorted(chosen)
    else:
        raise UnknownFamily(f"unknown graph family {family!r}; expected one of {', '.join(FAMILIES)}")
    return GraphInstance(size, tuple(sorted(edges)), family, seed)


def nodes_for_edges(family: str, edges: int) -> int:
    """Smallest node count whose instance has roughly ``edges`` edges."""
    if family in ("sparse-linear",):
        return edges + 1
    if family == "sparse-cycles":
        return max(3, edges)
    if family == "dense-random":
        return max(2, math.isqrt(8 * edges))
    factor = {"verysparse-random": 0.5, "sparse-random": 1, "mid-random": 2}[family]
    return max(2, round(edges / factor))


# ---------------------------------------------------------------------------
# Validators over solver output


def components(g: GraphInstance) -> dict[int, int]:
    """Map each node to the smallest node of its connected component."""
    parent = list(range(g.nodes + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return {v: find(v) for v in range(1, g.nodes + 1)}


def _value_map(facts, pred: str) -> dict:
    return {f.attr.args[0]: f.value for f in facts if f.attr.pred == pred and len(f.attr.args) == 1}


def check_spanning_tree(g: GraphInstance, facts) -> str | None:
    """Return None if ``parent`` facts form a tree spanning the root's component."""
    roots = [f.value for f in facts if f.attr.pred == "root"]
    if not g.edges and not roots:
        return None
    if len(roots) != 1:
        return f"expected one root, found {len(roots)}"
    root = roots[0]
    parent = _value_map(facts, "parent")
    comp = components(g)
    expected = {v for v in comp if comp[v] == comp[root]}
    if set(parent) != expected:
        return "parent facts do not cover exactly the root's component"
    adjacent = {(u, v) for u, v in g.edges} | {(v, u) for u, v in g.edges}
    for child, p in parent.items():
        if child == root:
            if p != root:
                return "root must be its own parent"
        elif (p, child) not in adjacent:
            return f"parent edge {p}-{child} is not in the graph"
    for v in expected:  # every node must reach the root without cycling
        seen = set()
        while v != root:
            if v in seen:
                return "parent pointers contain a cycle"
            seen.add(v)
            v = parent[v]
    return None


def check_canonical_reps(g: GraphInstance, facts) -> str | None:
    """Return None if two nodes share a representative exactly when connected."""
    rep = _value_map(facts, "representative")
    comp = components(g)
    if set(rep) != set(comp):
        return "some node lacks a representative"
    by_comp: dict = {}
    for v, c in comp.items():
        by_comp.setdefault(c, set()).add(rep[v])
    if any(len(r) != 1 for r in by_comp.values()):
        return "a component has several representatives"
    reps = [next(iter(r)) for r in by_comp.values()]
    if len(set(reps)) != len(reps):
        return "two components share a representative"
    if any(comp[r] != c for c, rs in by_comp.items() for r in rs):
        return "a representative lies outside its component"
    return None
