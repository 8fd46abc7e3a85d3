"""Immutable undirected labeled graphs and basic neighborhood queries.

Graphs are simple (no self-loops, no parallel edges) and undirected; node
indices are 0-based and dense. Node sets are represented throughout the
package as sorted tuples of node indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from motifbench.errors import InputError

NodeSet = tuple  # sorted, deduplicated tuple of node indices


@dataclass(frozen=True)
class Graph:
    """An undirected graph with one discrete label per node.

    `edges` holds each undirected edge exactly once as (u, v) with u < v,
    sorted. `node_labels` are dense integers drawn from the dataset-wide
    label alphabet. Instances are immutable and safe to share.
    """

    node_count: int
    edges: tuple
    node_labels: tuple
    graph_id: str = "g"
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.node_count < 1:
            raise InputError(f"graph {self.graph_id!r}: node_count must be >= 1")
        if len(self.node_labels) != self.node_count:
            raise InputError(
                f"graph {self.graph_id!r}: {len(self.node_labels)} labels for "
                f"{self.node_count} nodes"
            )
        seen = set()
        neighbors = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise InputError(f"graph {self.graph_id!r}: edge ({u},{v}) out of range")
            if u == v:
                raise InputError(f"graph {self.graph_id!r}: self-loop at node {u}")
            if u > v:
                raise InputError(f"graph {self.graph_id!r}: edge ({u},{v}) not normalized u<v")
            if (u, v) in seen:
                raise InputError(f"graph {self.graph_id!r}: duplicate edge ({u},{v})")
            seen.add((u, v))
            neighbors[u].append(v)
            neighbors[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(ns)) for ns in neighbors))

    @classmethod
    def build(cls, node_count: int, edges: Iterable, node_labels: Sequence,
              graph_id: str = "g") -> "Graph":
        """Construct from possibly unnormalized edges.

        Accepts edges in either direction and with repetitions; symmetric
        pairs and duplicates collapse to a single undirected edge.
        """
        norm = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"graph {graph_id!r}: self-loop at node {u}")
            norm.add((u, v) if u < v else (v, u))
        return cls(node_count, tuple(sorted(norm)), tuple(node_labels), graph_id)

    def neighbors(self, v: int) -> tuple:
        return self._adj[v]

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def ego_nodes(g: Graph, v: int, radius: int) -> NodeSet:
    """All nodes within BFS distance `radius` of `v`, as a sorted tuple.

    The result always contains `v` itself; radius 0 yields exactly {v}.
    """
    if not 0 <= v < g.node_count:
        raise InputError(f"node index {v} out of range for graph {g.graph_id!r}")
    if radius < 0:
        raise InputError(f"radius must be >= 0, got {radius}")
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if dist[u] == radius:
            continue
        for w in g.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return tuple(sorted(dist))


def connected_components(g: Graph) -> list:
    """Partition the nodes into maximal connected components.

    Returns a list of sorted tuples, ordered by smallest member node.
    """
    seen = [False] * g.node_count
    components = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        components.append(tuple(sorted(comp)))
    return components
