"""Benchmark suites: graph programs solved once per instance, timed per run."""

from __future__ import annotations

import csv
import gc
import statistics
import time
from dataclasses import dataclass

from .core import with_facts
from .graphs import GraphInstance, check_canonical_reps, check_spanning_tree, gen_graph
from .solver import solve_one
from .syntax import load_program

SPANNING_TREE = """\
edge X Y :- edge Y X.
root is? X :- edge X Y.
parent X is { X } :- root is X.
parent Y is? X :- edge X Y, parent X is Z.
"""

CANONICAL_REPS = """\
edge X Y :- edge Y X.
representative X is? X :- node X.
representative Y is { Z } :- edge X Y, representative X is Z.
"""

SUITES = {
    "spanning-tree": (SPANNING_TREE, check_spanning_tree, False),
    "canonical-reps": (CANONICAL_REPS, check_canonical_reps, True),
}

CSV_FIELDS = ("family", "size", "nodes", "edges", "run", "ms", "backtracks", "status")


@dataclass
class BenchRow:
    family: str
    size: int
    nodes: int
    edges: int
    run: int
    ms: float
    backtracks: int
    status: str

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in CSV_FIELDS}
        d["ms"] = f"{self.ms:.3f}"
        return d


class UnknownSuite(ValueError):
    pass


def run_instance(suite: str, graph: GraphInstance, seed: int = 0, fuel: int | None = None, run: int = 0) -> BenchRow:
    """Solve one instance once; the timed region covers rule compilation and search."""
    try:
        text, validate, with_nodes = SUITES[suite]
    except KeyError:
        raise UnknownSuite(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}") from None
    program = with_facts(load_program(text), graph.facts(with_nodes))
    # Like timeit, keep the cyclic collector out of the timed region: its full
    # passes scale with heap size and would blur the growth trend.
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        start = time.perf_counter()
        outcome = solve_one(program, seed=seed, fuel=fuel)
        ms = (time.perf_counter() - start) * 1e3
    finally:
        if was_enabled:
            gc.enable()
    status = outcome.status
    if outcome.ok:
        problem = validate(graph, outcome.facts)
        status = "ok" if problem is None else f"invalid: {problem}"
    return BenchRow(graph.family, graph.nodes, graph.nodes, len(graph.edges), run, ms,
                    outcome.stats.backtracks, status)


def run_bench(suite: str, family: str, sizes, seed: int = 0, repeat: int = 3, fuel: int | None = None):
    """Yield one row per (size, run); runs are sequential for stable timing."""
    for size in sizes:
        graph = gen_graph(family, size, seed)
        for run in range(repeat):
            yield run_instance(suite, graph, seed=seed + run, fuel=fuel, run=run)


def medians(rows) -> dict[int, float]:
    by_size: dict[int, list[float]] = {}
    for r in rows:
        by_size.setdefault(r.size, []).append(r.ms)
    return {size: statistics.median(ms) for size, ms in by_size.items()}


def write_csv(rows, stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.as_dict())
