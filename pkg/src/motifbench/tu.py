"""Reader and writer for the TUDataset multi-file text format.

A dataset named FOO consists of four aligned text files:

  FOO_A.txt               one "u, v" edge per line, 1-based global node ids
  FOO_graph_indicator.txt line i gives the graph id of node i (1-based)
  FOO_graph_labels.txt    one raw class label per graph
  FOO_node_labels.txt     one raw node label per node

Graph ids must form contiguous ascending blocks. Edges must stay within
one graph; symmetric pairs are deduplicated. Raw class labels are mapped
to {0, 1} (default: sorted distinct raw labels map to 0 and 1), and raw
node labels are densely renumbered into 0..A-1 in sorted raw order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

from motifbench.errors import FormatError, InputError
from motifbench.graphs import Graph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dataset:
    """A binary graph-classification dataset.

    `labels` is aligned with `graphs` and contains only 0 and 1, with both
    classes present. `label_alphabet` maps dense node-label ids back to
    the raw values found in the source files.
    """

    graphs: tuple
    labels: tuple
    label_alphabet: tuple
    name: str = "dataset"

    def __post_init__(self):
        if len(self.graphs) != len(self.labels):
            raise InputError("graphs and labels must be aligned")
        if len(self.graphs) < 2:
            raise InputError("a dataset needs at least two graphs")
        present = set(self.labels)
        if present != {0, 1}:
            raise InputError(f"class labels must be exactly {{0, 1}}, got {sorted(present)}")
        alpha = len(self.label_alphabet)
        for g in self.graphs:
            bad = [x for x in g.node_labels if not 0 <= x < alpha]
            if bad:
                raise InputError(
                    f"graph {g.graph_id!r} has node labels {bad[:3]} outside alphabet "
                    f"of size {alpha}"
                )

    @property
    def label_alphabet_size(self) -> int:
        return len(self.label_alphabet)

    def __len__(self) -> int:
        return len(self.graphs)


def _read_lines(path: Path) -> list:
    if not path.is_file():
        raise InputError(f"missing dataset file: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    while lines and not lines[-1]:
        lines.pop()
    return lines


def _parse_int(text: str, path: Path, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        try:
            value = float(text)
        except ValueError:
            raise FormatError(f"{path}:{lineno}: expected a number, got {text!r}") from None
        if value != int(value):
            raise FormatError(f"{path}:{lineno}: expected an integer, got {text!r}")
        return int(value)


def parse_tudataset(prefix, class_map: Optional[Mapping] = None) -> Dataset:
    """Parse `<prefix>_A.txt` and friends into a Dataset.

    Args:
        prefix: path prefix of the four dataset files, e.g. `data/NCI1/NCI1`.
        class_map: optional mapping from raw graph labels to {0, 1}; when
            omitted the dataset must have exactly two distinct raw labels,
            which map to 0 and 1 in sorted order.

    Raises:
        InputError: a required file is missing.
        FormatError: the files are malformed or mutually inconsistent.
    """
    prefix = Path(prefix)
    name = prefix.name
    path_a = prefix.parent / f"{name}_A.txt"
    path_ind = prefix.parent / f"{name}_graph_indicator.txt"
    path_glab = prefix.parent / f"{name}_graph_labels.txt"
    path_nlab = prefix.parent / f"{name}_node_labels.txt"

    for extra in ("node_attributes", "edge_labels", "edge_attributes"):
        p = prefix.parent / f"{name}_{extra}.txt"
        if p.is_file():
            log.warning("ignoring %s (only discrete node labels are used)", p.name)

    indicator = [_parse_int(t, path_ind, i + 1) for i, t in enumerate(_read_lines(path_ind))]
    if not indicator:
        raise FormatError(f"{path_ind}: empty graph indicator")

    # graph ids must form contiguous ascending blocks
    graph_ids = []
    for i, gid in enumerate(indicator):
        if not graph_ids or gid != graph_ids[-1]:
            if graph_ids and gid < graph_ids[-1]:
                raise FormatError(
                    f"{path_ind}:{i + 1}: graph id {gid} after {graph_ids[-1]}; "
                    "ids must be ascending contiguous blocks"
                )
            if gid in graph_ids:
                raise FormatError(
                    f"{path_ind}:{i + 1}: graph id {gid} repeats a finished block"
                )
            graph_ids.append(gid)
    n_graphs = len(graph_ids)
    gid_to_idx = {gid: i for i, gid in enumerate(graph_ids)}

    # node id (1-based global) -> (graph index, local 0-based index)
    node_graph = []
    node_local = []
    counts = [0] * n_graphs
    for gid in indicator:
        gi = gid_to_idx[gid]
        node_graph.append(gi)
        node_local.append(counts[gi])
        counts[gi] += 1

    raw_node_labels = [
        _parse_int(t, path_nlab, i + 1) for i, t in enumerate(_read_lines(path_nlab))
    ]
    if len(raw_node_labels) != len(indicator):
        raise FormatError(
            f"{path_nlab}: {len(raw_node_labels)} node labels for "
            f"{len(indicator)} nodes in {path_ind.name}"
        )
    alphabet = tuple(sorted(set(raw_node_labels)))
    dense = {raw: i for i, raw in enumerate(alphabet)}

    raw_graph_labels = [
        _parse_int(t, path_glab, i + 1) for i, t in enumerate(_read_lines(path_glab))
    ]
    if len(raw_graph_labels) != n_graphs:
        raise FormatError(
            f"{path_glab}: {len(raw_graph_labels)} labels for {n_graphs} graphs"
        )
    if class_map is None:
        distinct = sorted(set(raw_graph_labels))
        if len(distinct) != 2:
            raise FormatError(
                f"{path_glab}: {len(distinct)} distinct raw labels {distinct}; "
                "pass class_map to reduce to binary classes"
            )
        class_map = {distinct[0]: 0, distinct[1]: 1}
    missing = sorted(set(raw_graph_labels) - set(class_map))
    if missing:
        raise FormatError(f"{path_glab}: class_map does not cover raw labels {missing}")
    bad = sorted({y for y in class_map.values()} - {0, 1})
    if bad:
        raise InputError(f"class_map values must be 0 or 1, got {bad}")
    labels = tuple(class_map[raw] for raw in raw_graph_labels)

    edge_sets = [set() for _ in range(n_graphs)]
    for lineno, line in enumerate(_read_lines(path_a), start=1):
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise FormatError(f"{path_a}:{lineno}: expected 'u, v', got {line!r}")
        u = _parse_int(parts[0], path_a, lineno)
        v = _parse_int(parts[1], path_a, lineno)
        if not (1 <= u <= len(indicator) and 1 <= v <= len(indicator)):
            raise FormatError(f"{path_a}:{lineno}: node id out of range in ({u},{v})")
        if node_graph[u - 1] != node_graph[v - 1]:
            raise FormatError(
                f"{path_a}:{lineno}: edge ({u},{v}) crosses graphs "
                f"{graph_ids[node_graph[u - 1]]} and {graph_ids[node_graph[v - 1]]}"
            )
        if u == v:
            raise FormatError(f"{path_a}:{lineno}: self-loop at node {u}")
        a, b = node_local[u - 1], node_local[v - 1]
        edge_sets[node_graph[u - 1]].add((a, b) if a < b else (b, a))

    graphs = []
    offset = 0
    for gi, gid in enumerate(graph_ids):
        n = counts[gi]
        node_lab = tuple(dense[raw_node_labels[offset + j]] for j in range(n))
        graphs.append(
            Graph(n, tuple(sorted(edge_sets[gi])), node_lab, graph_id=f"{name}#{gid}")
        )
        offset += n
    return Dataset(tuple(graphs), labels, alphabet, name=name)


def write_tudataset(dataset: Dataset, prefix,
                    class_values: Sequence = (0, 1)) -> None:
    """Serialize a Dataset back into the four TU-format files.

    Edges are written in both directions, matching published datasets.
    `class_values` chooses the raw labels used for classes 0 and 1.
    """
    prefix = Path(prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    name = prefix.name
    ind_lines, nlab_lines, edge_lines = [], [], []
    offset = 0
    for gi, g in enumerate(dataset.graphs):
        for local in range(g.node_count):
            ind_lines.append(str(gi + 1))
            nlab_lines.append(str(dataset.label_alphabet[g.node_labels[local]]))
        for u, v in g.edges:
            edge_lines.append(f"{offset + u + 1}, {offset + v + 1}")
            edge_lines.append(f"{offset + v + 1}, {offset + u + 1}")
        offset += g.node_count
    glab_lines = [str(class_values[y]) for y in dataset.labels]
    for suffix, lines in (
        ("A", edge_lines),
        ("graph_indicator", ind_lines),
        ("graph_labels", glab_lines),
        ("node_labels", nlab_lines),
    ):
        with open(prefix.parent / f"{name}_{suffix}.txt", "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
