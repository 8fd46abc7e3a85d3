"""Deterministic 70/20/10 train/validation/test splits.

Samples are stratified by class and by graph size (node-count quartiles);
within each stratum a seeded shuffle is followed by a largest-remainder
allocation, so per-stratum proportions are within one sample of the target
ratios and the per-split counts depend only on the stratum sizes, never on
the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from motifbench.errors import InputError
from motifbench.generate import XaiBenchmark

SPLIT_NAMES = ("train", "valid", "test")
RATIOS = (0.7, 0.2, 0.1)


@dataclass(frozen=True)
class SplitAssignment:
    """Per-sample split names aligned with the benchmark's samples."""

    assignment: tuple
    seed: int
    ratios: tuple = RATIOS
    size_bin_edges: tuple = ()

    def indices(self, split: str) -> tuple:
        if split not in SPLIT_NAMES:
            raise InputError(f"unknown split {split!r}")
        return tuple(i for i, s in enumerate(self.assignment) if s == split)

    def counts(self) -> dict:
        return {name: sum(1 for s in self.assignment if s == name)
                for name in SPLIT_NAMES}


def _largest_remainder(total: int, ratios: tuple) -> list:
    """Integer allocation of `total` by `ratios`, exact in expectation.

    Exact remainder ties go to the split with the smallest ratio, so tiny
    strata still shed samples into validation/test."""
    ideal = [total * r for r in ratios]
    counts = [int(x) for x in ideal]
    leftovers = total - sum(counts)
    order = sorted(range(len(ratios)),
                   key=lambda i: (-(ideal[i] - counts[i]), ratios[i]))
    for i in order[:leftovers]:
        counts[i] += 1
    return counts


def stratified_split(bench: XaiBenchmark, seed: int) -> SplitAssignment:
    """Assign every sample to train/valid/test, stratified by class and
    node-count quartile.

    Requires at least 10 samples. The same benchmark and seed always give
    the same assignment; a different seed reshuffles within strata but
    leaves all per-split counts unchanged.
    """
    n = len(bench.samples)
    if n < 10:
        raise InputError(f"need at least 10 samples to split, got {n}")
    sizes = np.array([s.graph.node_count for s in bench.samples])
    edges = tuple(float(q) for q in np.quantile(sizes, (0.25, 0.5, 0.75)))

    strata: dict = {}
    for i, sample in enumerate(bench.samples):
        size_bin = int(np.searchsorted(edges, sizes[i], side="left"))
        strata.setdefault((sample.y, size_bin), []).append(i)

    rng = np.random.default_rng(seed)
    assignment = [""] * n
    for key in sorted(strata):
        members = strata[key]
        order = rng.permutation(len(members))
        counts = _largest_remainder(len(members), RATIOS)
        cursor = 0
        for name, count in zip(SPLIT_NAMES, counts):
            for j in order[cursor:cursor + count]:
                assignment[members[j]] = name
            cursor += count
    return SplitAssignment(tuple(assignment), seed, RATIOS, edges)
