"""Importance-mask file output in the shared JSON interchange format.

One file per method over the benchmark's test split, carrying the SHA-256
fingerprint of the exact benchmark file scored, so the downstream evaluator
can refuse mismatches. Serialization matches the canonical form used by
the benchmark producer: sorted keys, compact separators, UTF-8.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from gnn_eval.data import BenchmarkData
from gnn_eval.explain import EXPLAINERS

SCHEMA_VERSION = "1.0"


def write_mask_file(path, benchmark_fingerprint: str, method: str,
                    masks: dict, metadata: dict | None = None) -> None:
    entries = []
    for gid in sorted(masks):
        scores = [float(s) for s in masks[gid]]
        if not all(math.isfinite(s) for s in scores):
            raise ValueError(f"non-finite score for graph {gid!r}")
        entries.append({"graph_id": gid, "scores": scores})
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "importance_masks",
        "benchmark_fingerprint": benchmark_fingerprint,
        "method": method,
        "metadata": metadata or {},
        "masks": entries,
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = json.dumps(doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False) + "\n"
    path.write_text(data, encoding="utf-8")


def export_masks(model, data: BenchmarkData, methods, out_dir,
                 seed: int = 0, ig_steps: int = 64,
                 gnnexplainer_epochs: int = 200) -> list:
    """Run the chosen explainers over the test split and write one mask
    file per method. Returns the written paths."""
    unknown = [m for m in methods if m not in EXPLAINERS]
    if unknown:
        raise ValueError(f"unknown explainer(s) {unknown}; "
                         f"available: {sorted(EXPLAINERS)}")
    test_graphs = data.split("test")
    if not test_graphs:
        raise ValueError("benchmark has no test split")
    out_dir = Path(out_dir)
    written = []
    for method in methods:
        masks = {}
        metadata = {"method": method, "benchmark": data.path.name}
        for i, graph in enumerate(test_graphs):
            if method == "random":
                scores = EXPLAINERS[method](model, graph, seed=seed + i)
            elif method == "intgrad":
                scores = EXPLAINERS[method](model, graph, m_steps=ig_steps)
            elif method == "gnnexplainer":
                scores = EXPLAINERS[method](model, graph,
                                            epochs=gnnexplainer_epochs,
                                            seed=seed + i)
            else:
                scores = EXPLAINERS[method](model, graph)
            masks[graph.graph_id] = scores.tolist()
        if method == "random":
            metadata["seed"] = seed
        elif method == "intgrad":
            metadata["m_steps"] = ig_steps
        elif method == "gnnexplainer":
            metadata.update({"epochs": gnnexplainer_epochs, "seed": seed,
                             "step_size": 0.1, "size_coeff": 0.05,
                             "ent_coeff": 0.1})
        path = out_dir / f"{data.path.stem}_{method}.json"
        write_mask_file(path, data.fingerprint, method, masks, metadata)
        written.append(path)
    return written
