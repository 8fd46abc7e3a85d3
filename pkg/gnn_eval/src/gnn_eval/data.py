"""Benchmark file loading.

The interchange format is plain JSON (schema 1.0): metadata with a label
alphabet and per-sample records carrying node labels, an undirected edge
list, the class, the ground-truth node mask, and a train/valid/test split
tag. Node features are one-hot encodings of the discrete labels, so the
input dimension equals the label-alphabet size.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch


@dataclass
class GraphData:
    """One sample prepared for the model: dense tensors plus bookkeeping."""

    graph_id: str
    x: torch.Tensor           # [n, d] one-hot node features
    edge_index: torch.Tensor  # [2, 2E] both directions
    y: int
    gt_mask: tuple
    split: str

    @property
    def num_nodes(self) -> int:
        return self.x.shape[0]


@dataclass
class BenchmarkData:
    path: Path
    fingerprint: str
    feature_dim: int
    mode: str
    graphs: list

    def split(self, name: str) -> list:
        return [g for g in self.graphs if g.split == name]


def file_fingerprint(path) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def load_benchmark(path) -> BenchmarkData:
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    version = str(doc.get("schema_version", ""))
    if version.split(".", 1)[0] != "1":
        raise ValueError(f"{path}: unsupported schema version {version!r}")
    if doc.get("kind") != "benchmark":
        raise ValueError(f"{path}: not a benchmark file")
    meta = doc["metadata"]
    alphabet = meta["label_alphabet"]
    dim = len(alphabet)
    graphs = []
    for entry in doc["samples"]:
        n = int(entry["num_nodes"])
        labels = entry["node_labels"]
        x = torch.zeros((n, dim), dtype=torch.float32)
        x[torch.arange(n), torch.tensor(labels, dtype=torch.long)] = 1.0
        edges = entry["edges"]
        if edges:
            src = [u for u, v in edges] + [v for u, v in edges]
            dst = [v for u, v in edges] + [u for u, v in edges]
            edge_index = torch.tensor([src, dst], dtype=torch.long)
        else:
            edge_index = torch.zeros((2, 0), dtype=torch.long)
        graphs.append(GraphData(
            graph_id=str(entry["graph_id"]),
            x=x,
            edge_index=edge_index,
            y=int(entry["y"]),
            gt_mask=tuple(entry["gt_mask"]),
            split=str(entry["split"]),
        ))
    return BenchmarkData(path, file_fingerprint(path), dim,
                         str(meta["mode"]), graphs)


def batch_graphs(graphs) -> dict:
    """Concatenate graphs into one block-diagonal batch."""
    xs, edge_chunks, batch_ids = [], [], []
    offset = 0
    for bi, g in enumerate(graphs):
        xs.append(g.x)
        if g.edge_index.numel():
            edge_chunks.append(g.edge_index + offset)
        batch_ids.append(torch.full((g.num_nodes,), bi, dtype=torch.long))
        offset += g.num_nodes
    edge_index = (torch.cat(edge_chunks, dim=1) if edge_chunks
                  else torch.zeros((2, 0), dtype=torch.long))
    return {
        "x": torch.cat(xs, dim=0),
        "edge_index": edge_index,
        "batch": torch.cat(batch_ids),
        "n_graphs": len(graphs),
        "y": torch.tensor([g.y for g in graphs], dtype=torch.long),
    }
