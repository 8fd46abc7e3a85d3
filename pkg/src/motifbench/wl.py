"""Iterated color refinement over a whole dataset with a shared color table.

Every node starts from its discrete label; each round, a node's next color
is determined by its current color together with the multiset of its
neighbors' current colors. Colors are interned exactly (no probabilistic
hashing), so distinct refinement keys can never collide, and ids are
assigned in first-encounter order over a fixed graph/node ordering, which
makes the whole refinement deterministic across runs and machines.

Colors from different rounds are distinct by construction: a color is the
pair (iteration, dense id). A graph's histogram is the multiset of all its
node colors across iterations 0..L; membership of a color in the histogram
is the cheap structural-pattern presence test the rest of the pipeline is
built on.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from motifbench.errors import InputError
from motifbench.graphs import Graph
from motifbench.tu import Dataset

UPDATE_STANDARD = "standard"
UPDATE_NEIGHBORS_ONLY = "neighbors_only"


class WlColor(NamedTuple):
    iteration: int
    id: int


@dataclass(frozen=True)
class WlColoring:
    """Per-iteration color ids for one graph; rows[l][v] is node v's id
    at iteration l (iteration is implicit in the row index)."""

    graph: Graph
    rows: tuple

    @property
    def iterations(self) -> int:
        return len(self.rows) - 1

    def color(self, iteration: int, v: int) -> WlColor:
        return WlColor(iteration, self.rows[iteration][v])

    def occurrences(self, color: WlColor) -> tuple:
        """Nodes carrying `color`, ascending."""
        row = self.rows[color.iteration]
        return tuple(v for v in range(len(row)) if row[v] == color.id)


class ColorTable:
    """Interning table mapping refinement keys to dense per-iteration ids.

    Iteration-0 keys are the dense node labels; for l >= 1 the key is
    (previous own id, sorted tuple of neighbor ids) in `standard` mode, or
    just the sorted neighbor tuple in `neighbors_only` mode.
    """

    def __init__(self, update: str = UPDATE_STANDARD):
        if update not in (UPDATE_STANDARD, UPDATE_NEIGHBORS_ONLY):
            raise InputError(f"unknown update rule {update!r}")
        self.update = update
        self._intern = []  # per iteration: key -> id
        self._keys = []    # per iteration: id -> key
        self._canon = {}   # (iteration, id) -> canonical string
        self._by_canon = None

    def _ensure_iteration(self, iteration: int) -> None:
        while len(self._intern) <= iteration:
            self._intern.append({})
            self._keys.append([])

    def intern(self, iteration: int, key) -> int:
        self._ensure_iteration(iteration)
        table = self._intern[iteration]
        ident = table.get(key)
        if ident is None:
            ident = len(table)
            table[key] = ident
            self._keys[iteration].append(key)
        return ident

    def size(self, iteration: int) -> int:
        return len(self._intern[iteration]) if iteration < len(self._intern) else 0

    @property
    def iterations(self) -> int:
        return len(self._intern) - 1

    def all_colors(self) -> list:
        return [
            WlColor(it, ident)
            for it in range(len(self._intern))
            for ident in range(len(self._intern[it]))
        ]

    def canonical_key(self, color: WlColor) -> str:
        """Serialize a color as its full refinement-key chain.

        Iteration-0 colors render as `l<label>`; later ones as
        `(<own>|<n1>,<n2>,...)` with neighbor chains sorted
        lexicographically. The string identifies the structural pattern
        independent of interning order, so it is stable across runs and
        suitable for persisting in benchmark metadata.
        """
        cached = self._canon.get(color)
        if cached is not None:
            return cached
        iteration, ident = color
        if iteration >= len(self._intern) or ident >= len(self._keys[iteration]):
            raise InputError(f"unknown color {color}")
        key = self._keys[iteration][ident]
        if iteration == 0:
            out = f"l{key}"
        elif self.update == UPDATE_STANDARD:
            own, neigh = key
            parts = sorted(self.canonical_key(WlColor(iteration - 1, n)) for n in neigh)
            out = f"({self.canonical_key(WlColor(iteration - 1, own))}|{','.join(parts)})"
        else:
            parts = sorted(self.canonical_key(WlColor(iteration - 1, n)) for n in key)
            out = f"(|{','.join(parts)})"
        self._canon[color] = out
        return out

    def color_for_key(self, canonical: str) -> WlColor:
        """Inverse of canonical_key, valid only within this table."""
        if self._by_canon is None or len(self._by_canon) != sum(
            len(t) for t in self._intern
        ):
            self._by_canon = {self.canonical_key(c): c for c in self.all_colors()}
        try:
            return self._by_canon[canonical]
        except KeyError:
            raise InputError(f"canonical key not present in this color table") from None


def refine(dataset: Dataset, iterations: int,
           update: str = UPDATE_STANDARD) -> tuple:
    """Run `iterations` rounds of color refinement over the whole dataset.

    Returns (ColorTable, list of WlColoring aligned with dataset.graphs).
    All graphs share one table, so equal colors mean equal refinement keys
    across graphs; that is what makes cross-graph frequency mining valid.
    """
    if iterations < 0:
        raise InputError(f"iterations must be >= 0, got {iterations}")
    table = ColorTable(update)
    rows_per_graph = [[] for _ in dataset.graphs]

    for gi, g in enumerate(dataset.graphs):
        rows_per_graph[gi].append([table.intern(0, lab) for lab in g.node_labels])

    for it in range(1, iterations + 1):
        for gi, g in enumerate(dataset.graphs):
            prev = rows_per_graph[gi][it - 1]
            if update == UPDATE_STANDARD:
                row = [
                    table.intern(it, (prev[v], tuple(sorted(prev[u] for u in g.neighbors(v)))))
                    for v in range(g.node_count)
                ]
            else:
                row = [
                    table.intern(it, tuple(sorted(prev[u] for u in g.neighbors(v))))
                    for v in range(g.node_count)
                ]
            rows_per_graph[gi].append(row)

    colorings = [
        WlColoring(g, tuple(tuple(row) for row in rows))
        for g, rows in zip(dataset.graphs, rows_per_graph)
    ]
    return table, colorings


def histogram(coloring: WlColoring) -> Counter:
    """Multiset of a graph's colors over all iterations 0..L.

    The total count is node_count * (L + 1). Presence of a color in the
    histogram is the pattern-containment test used by the generator.
    """
    counts = Counter()
    for it, row in enumerate(coloring.rows):
        for ident in row:
            counts[WlColor(it, ident)] += 1
    return counts
