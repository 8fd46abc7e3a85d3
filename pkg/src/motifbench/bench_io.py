"""Versioned JSON serialization of benchmarks and importance-mask files.

Serialization is canonical: keys sorted, compact separators, UTF-8, floats
in shortest round-trip form, samples in benchmark order. Equal inputs
therefore produce byte-identical files, and a file's SHA-256 serves as a
content fingerprint. Mask files record the fingerprint of the benchmark
they score, which lets the evaluator refuse mismatched pairs.

Benchmark file layout (schema 1.0)::

    {
      "schema_version": "1.0",
      "kind": "benchmark",
      "metadata": {
        "source_dataset": str,
        "mode": "two_motif" | "single_motif_class0" | "single_motif_class1",
        "motifs": [{"class_role", "iteration", "canonical_key",
                    "freq0", "freq1"}, ...],
        "class_counts": [n0, n1],
        "balance": float,
        "label_alphabet": [raw node labels, dense id = position],
        "split": {"seed", "ratios", "size_bin_edges"},
        "run_config": {...}            # optional, echoed CLI configuration
      },
      "samples": [{"graph_id": str, "num_nodes": int,
                   "node_labels": [int, ...],
                   "edges": [[u, v], ...],   # u < v, sorted
                   "y": 0 | 1,
                   "gt_mask": [int, ...],    # sorted, may be empty
                   "split": "train" | "valid" | "test"}, ...]
    }

Mask file layout (schema 1.0)::

    {
      "schema_version": "1.0",
      "kind": "importance_masks",
      "benchmark_fingerprint": "sha256:<hex>",
      "method": str,
      "metadata": {...},
      "masks": [{"graph_id": str, "scores": [float, ...]}, ...]
    }
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

from motifbench.errors import (
    FormatError,
    InputError,
    IntegrityError,
    SchemaVersionError,
)
from motifbench.generate import (
    MODE_SINGLE_0,
    MODE_SINGLE_1,
    MODE_TWO_MOTIF,
    MotifSpec,
    XaiBenchmark,
    XaiSample,
)
from motifbench.graphs import Graph
from motifbench.split import SPLIT_NAMES, SplitAssignment

SCHEMA_VERSION = "1.0"
_MODES = (MODE_TWO_MOTIF, MODE_SINGLE_0, MODE_SINGLE_1)


def canonical_json_bytes(obj) -> bytes:
    """Canonical UTF-8 encoding: sorted keys, compact, no NaN/Inf."""
    return (json.dumps(obj, sort_keys=True, separators=(",", ":"),
                       ensure_ascii=False, allow_nan=False) + "\n").encode("utf-8")


def fingerprint_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def fingerprint_file(path) -> str:
    with open(path, "rb") as fh:
        return fingerprint_bytes(fh.read())


def _reject_constants(token):
    raise FormatError(f"non-finite JSON constant {token!r} is not allowed")


def _load_json(path: Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh, parse_constant=_reject_constants)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def _check_schema(doc: dict, path: Path, kind: str) -> None:
    version = doc.get("schema_version")
    if not isinstance(version, str) or "." not in version:
        raise FormatError(f"{path}: missing or malformed schema_version")
    major = version.split(".", 1)[0]
    if major != SCHEMA_VERSION.split(".", 1)[0]:
        raise SchemaVersionError(
            f"{path}: schema major {major} unsupported (reader supports "
            f"{SCHEMA_VERSION})"
        )
    if doc.get("kind") != kind:
        raise FormatError(f"{path}: expected kind {kind!r}, got {doc.get('kind')!r}")


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def benchmark_document(bench: XaiBenchmark, split: SplitAssignment,
                       label_alphabet: Optional[Sequence] = None,
                       run_config: Optional[Mapping] = None) -> dict:
    """Build the JSON document for a benchmark + split (not yet encoded)."""
    if len(split.assignment) != len(bench.samples):
        raise InputError("split not aligned with benchmark samples")
    if label_alphabet is None:
        top = max(max(s.graph.node_labels) for s in bench.samples)
        label_alphabet = list(range(top + 1))
    metadata = {
        "source_dataset": bench.source_name,
        "mode": bench.mode,
        "motifs": [
            {
                "class_role": m.class_role,
                "iteration": m.iteration,
                "canonical_key": m.canonical_key,
                "freq0": m.freq0,
                "freq1": m.freq1,
            }
            for m in bench.motifs
        ],
        "class_counts": list(bench.class_counts),
        "balance": bench.balance,
        "label_alphabet": list(label_alphabet),
        "split": {
            "seed": split.seed,
            "ratios": list(split.ratios),
            "size_bin_edges": list(split.size_bin_edges),
        },
    }
    if run_config is not None:
        metadata["run_config"] = dict(run_config)
    samples = [
        {
            "graph_id": s.graph.graph_id,
            "num_nodes": s.graph.node_count,
            "node_labels": list(s.graph.node_labels),
            "edges": [[u, v] for u, v in s.graph.edges],
            "y": s.y,
            "gt_mask": list(s.mask),
            "split": split.assignment[i],
        }
        for i, s in enumerate(bench.samples)
    ]
    return {"schema_version": SCHEMA_VERSION, "kind": "benchmark",
            "metadata": metadata, "samples": samples}


def write_benchmark(bench: XaiBenchmark, split: SplitAssignment, path,
                    label_alphabet: Optional[Sequence] = None,
                    run_config: Optional[Mapping] = None) -> str:
    """Serialize benchmark + split to `path`; returns the fingerprint."""
    data = canonical_json_bytes(
        benchmark_document(bench, split, label_alphabet, run_config)
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    _atomic_write(path, data)
    return fingerprint_bytes(data)


def _parse_sample(entry: dict, path: Path, index: int) -> tuple:
    where = f"{path}: samples[{index}]"
    try:
        n = int(entry["num_nodes"])
        labels = tuple(int(x) for x in entry["node_labels"])
        edges = tuple((int(u), int(v)) for u, v in entry["edges"])
        y = int(entry["y"])
        mask = tuple(int(x) for x in entry["gt_mask"])
        split_name = entry["split"]
        gid = str(entry["graph_id"])
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"{where}: {e}") from None
    if y not in (0, 1):
        raise FormatError(f"{where}: class must be 0 or 1, got {y}")
    if split_name not in SPLIT_NAMES:
        raise FormatError(f"{where}: unknown split {split_name!r}")
    try:
        graph = Graph(n, edges, labels, graph_id=gid)
    except InputError as e:
        raise FormatError(f"{where}: {e}") from None
    if list(mask) != sorted(set(mask)):
        raise FormatError(f"{where}: gt_mask must be sorted and deduplicated")
    if mask and (mask[0] < 0 or mask[-1] >= n):
        raise FormatError(f"{where}: gt_mask indices out of range")
    return XaiSample(graph, y, mask), split_name


def read_benchmark(path) -> tuple:
    """Parse and validate a benchmark file.

    Returns (XaiBenchmark, SplitAssignment). Motif specs come back
    unbound (no live color), which is all downstream evaluation needs.
    """
    path = Path(path)
    doc = _load_json(path)
    _check_schema(doc, path, "benchmark")
    try:
        meta = doc["metadata"]
        mode = meta["mode"]
        motifs_raw = meta["motifs"]
        split_meta = meta["split"]
        samples_raw = doc["samples"]
        source = str(meta["source_dataset"])
    except (KeyError, TypeError) as e:
        raise FormatError(f"{path}: missing field {e}") from None
    if mode not in _MODES:
        raise FormatError(f"{path}: unknown mode {mode!r}")
    expected_motifs = 2 if mode == MODE_TWO_MOTIF else 1
    if len(motifs_raw) != expected_motifs:
        raise FormatError(
            f"{path}: mode {mode} requires {expected_motifs} motif(s), "
            f"got {len(motifs_raw)}"
        )
    motifs = []
    for m in motifs_raw:
        try:
            motifs.append(MotifSpec(int(m["iteration"]), str(m["canonical_key"]),
                                    int(m["class_role"]), int(m["freq0"]),
                                    int(m["freq1"])))
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"{path}: bad motif entry: {e}") from None
    if not samples_raw:
        raise FormatError(f"{path}: benchmark has no samples")
    samples, assignment = [], []
    for i, entry in enumerate(samples_raw):
        sample, split_name = _parse_sample(entry, path, i)
        samples.append(sample)
        assignment.append(split_name)
    classes = {s.y for s in samples}
    if classes != {0, 1}:
        raise FormatError(f"{path}: both classes must be present, got {sorted(classes)}")
    gt_classes = (0, 1) if mode == MODE_TWO_MOTIF else (
        (0,) if mode == MODE_SINGLE_0 else (1,)
    )
    for i, s in enumerate(samples):
        if s.y in gt_classes and not s.mask:
            raise FormatError(f"{path}: samples[{i}] in a ground-truth class "
                              "has an empty mask")
        if s.y not in gt_classes and s.mask:
            raise FormatError(f"{path}: samples[{i}] outside the ground-truth "
                              "class must have an empty mask")
    bench = XaiBenchmark(tuple(samples), tuple(motifs), source, mode)
    try:
        split = SplitAssignment(
            tuple(assignment),
            int(split_meta["seed"]),
            tuple(float(r) for r in split_meta["ratios"]),
            tuple(float(e) for e in split_meta["size_bin_edges"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"{path}: bad split metadata: {e}") from None
    return bench, split


@dataclass(frozen=True)
class MaskSet:
    """Parsed importance-mask file for one method."""

    method: str
    benchmark_fingerprint: str
    masks: dict  # graph_id -> tuple of float scores
    metadata: dict


def write_masks(path, benchmark_fingerprint: str, method: str,
                masks: Mapping, metadata: Optional[Mapping] = None) -> str:
    """Write one method's importance masks; returns the file fingerprint.

    `masks` maps graph_id to a sequence of per-node scores. All scores
    must be finite.
    """
    entries = []
    for gid in sorted(masks):
        scores = [float(x) for x in masks[gid]]
        if not all(math.isfinite(x) for x in scores):
            raise InputError(f"non-finite score in mask for {gid!r}")
        entries.append({"graph_id": str(gid), "scores": scores})
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "importance_masks",
        "benchmark_fingerprint": benchmark_fingerprint,
        "method": str(method),
        "metadata": dict(metadata) if metadata else {},
        "masks": entries,
    }
    data = canonical_json_bytes(doc)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    _atomic_write(path, data)
    return fingerprint_bytes(data)


def read_masks(path) -> MaskSet:
    path = Path(path)
    doc = _load_json(path)
    _check_schema(doc, path, "importance_masks")
    try:
        fingerprint = str(doc["benchmark_fingerprint"])
        method = str(doc["method"])
        entries = doc["masks"]
    except (KeyError, TypeError) as e:
        raise FormatError(f"{path}: missing field {e}") from None
    masks = {}
    for i, entry in enumerate(entries):
        try:
            gid = str(entry["graph_id"])
            scores = tuple(float(x) for x in entry["scores"])
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"{path}: masks[{i}]: {e}") from None
        if not all(math.isfinite(x) for x in scores):
            raise FormatError(f"{path}: masks[{i}]: non-finite score")
        if gid in masks:
            raise FormatError(f"{path}: duplicate mask for graph {gid!r}")
        masks[gid] = scores
    return MaskSet(method, fingerprint, masks, dict(doc.get("metadata") or {}))


def check_fingerprint(mask_set: MaskSet, benchmark_fingerprint: str,
                      context: str = "") -> None:
    """Raise IntegrityError when a mask set scores a different benchmark."""
    if mask_set.benchmark_fingerprint != benchmark_fingerprint:
        raise IntegrityError(
            f"{context or 'mask file'}: fingerprint "
            f"{mask_set.benchmark_fingerprint} does not match benchmark "
            f"{benchmark_fingerprint}"
        )
