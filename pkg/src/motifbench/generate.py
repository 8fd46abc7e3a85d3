"""Mining of class-discriminating colors and benchmark generation.

A color whose presence is skewed towards one class is a candidate
ground-truth pattern. For each candidate (or candidate pair) the generator
collects the graphs satisfying the presence/absence predicates and attaches
a ground-truth node mask: the union of radius-l ego neighborhoods around
every node carrying the color, where l is the color's refinement iteration.

Two benchmark flavors exist: two-motif tasks, where each class owns an
exclusive pattern, and single-motif tasks, where one pattern's presence or
absence separates the classes and the pattern-free class gets empty masks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import groupby
from typing import Iterable, Iterator, List, Optional

from motifbench.errors import InputError
from motifbench.graphs import Graph, ego_nodes
from motifbench.tu import Dataset
from motifbench.wl import ColorTable, WlColor, WlColoring, histogram, refine

log = logging.getLogger(__name__)

MODE_TWO_MOTIF = "two_motif"
MODE_SINGLE_0 = "single_motif_class0"
MODE_SINGLE_1 = "single_motif_class1"


@dataclass(frozen=True)
class MotifSpec:
    """A candidate ground-truth pattern and its class role.

    The portable identity is (iteration, canonical_key); `color` binds the
    spec to the color table of the run that produced it and is absent on
    specs read back from serialized benchmarks.
    """

    iteration: int
    canonical_key: str
    class_role: int
    freq0: int
    freq1: int
    color: Optional[WlColor] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.color is not None and self.color.iteration != self.iteration:
            raise InputError("motif iteration does not match its color")

    @property
    def dfreq(self) -> int:
        return self.freq1 - self.freq0

    @property
    def weak(self) -> bool:
        """True when the color is not skewed towards either class."""
        return self.dfreq == 0


class FreqTable:
    """Per-color presence counts split by class.

    A color occurring five times inside one graph still contributes one:
    counts are over graphs containing the color, not over occurrences.
    """

    def __init__(self, counts: dict, n_class0: int, n_class1: int):
        self.counts = counts
        self.n_class0 = n_class0
        self.n_class1 = n_class1

    def freq(self, color: WlColor) -> tuple:
        return self.counts.get(color, (0, 0))

    def dfreq(self, color: WlColor) -> int:
        f0, f1 = self.freq(color)
        return f1 - f0

    def colors(self) -> list:
        return list(self.counts)

    def __len__(self) -> int:
        return len(self.counts)


def class_frequencies(dataset: Dataset, histograms: list) -> FreqTable:
    """Count, per color, how many graphs of each class contain it."""
    if len(histograms) != len(dataset.graphs):
        raise InputError("histograms not aligned with dataset")
    counts = {}
    for y, hist in zip(dataset.labels, histograms):
        for color in hist:
            f0, f1 = counts.get(color, (0, 0))
            counts[color] = (f0 + 1, f1) if y == 0 else (f0, f1 + 1)
    n1 = sum(dataset.labels)
    return FreqTable(counts, len(dataset.labels) - n1, n1)


def _ordered_candidates(table: FreqTable, color_table: ColorTable, k: int,
                        class_role: int) -> list:
    """Best k candidate colors for one class.

    Primary order is skew towards the class, then presence count in that
    class; remaining ties break on the canonical key string, which is only
    computed for the tie groups that actually reach the top k.
    """
    if class_role == 1:
        primary = lambda c: (-table.dfreq(c), -table.freq(c)[1])
    else:
        primary = lambda c: (table.dfreq(c), -table.freq(c)[0])
    colors = sorted(table.colors(), key=primary)
    out: List[MotifSpec] = []
    for _, group in groupby(colors, key=primary):
        members = sorted(group, key=color_table.canonical_key)
        for color in members:
            f0, f1 = table.freq(color)
            out.append(MotifSpec(color.iteration, color_table.canonical_key(color),
                                 class_role, f0, f1, color=color))
            if len(out) == k:
                return out
    return out


def top_k_candidates(table: FreqTable, color_table: ColorTable, k: int) -> tuple:
    """Select the k most class-0-skewed and k most class-1-skewed colors.

    Returns (candidates0, candidates1, truncated); `truncated` is set when
    fewer than k colors exist at all.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    truncated = len(table) < k
    if truncated:
        log.warning("only %d colors available for top-%d selection", len(table), k)
    c0 = _ordered_candidates(table, color_table, k, class_role=0)
    c1 = _ordered_candidates(table, color_table, k, class_role=1)
    return c0, c1, truncated


def build_mask(g: Graph, coloring: WlColoring, motif: MotifSpec) -> tuple:
    """Ground-truth mask: union of radius-l ego sets around each node
    carrying the motif color, where l is the motif's iteration."""
    if motif.color is None:
        raise InputError("motif is not bound to a live color table")
    occurrences = coloring.occurrences(motif.color)
    if not occurrences:
        raise InputError(
            f"motif color {motif.color} does not occur in graph {g.graph_id!r}"
        )
    mask = set()
    for v in occurrences:
        mask.update(ego_nodes(g, v, motif.iteration))
    return tuple(sorted(mask))


@dataclass(frozen=True)
class XaiSample:
    graph: Graph
    y: int
    mask: tuple


@dataclass(frozen=True)
class XaiBenchmark:
    """A generated benchmark: samples with ground-truth masks plus the
    motif metadata needed to reproduce them."""

    samples: tuple
    motifs: tuple
    source_name: str
    mode: str

    @property
    def class_counts(self) -> tuple:
        n1 = sum(s.y for s in self.samples)
        return (len(self.samples) - n1, n1)

    @property
    def balance(self) -> float:
        n0, n1 = self.class_counts
        return min(n0, n1) / max(n0, n1)

    @property
    def key(self) -> str:
        """Deterministic identifier used for ordering and file naming."""
        return self.mode + "|" + "|".join(m.canonical_key for m in self.motifs)

    def sample_fingerprint(self) -> tuple:
        """Hashable identity of the sample set, for deduplication."""
        return tuple(sorted((s.graph.graph_id, s.y, s.mask) for s in self.samples))

    def gt_classes(self) -> tuple:
        """Classes that carry nonempty ground-truth masks."""
        if self.mode == MODE_TWO_MOTIF:
            return (0, 1)
        return (0,) if self.mode == MODE_SINGLE_0 else (1,)


@dataclass(frozen=True)
class Rejection:
    """A candidate benchmark dropped because one class came out empty."""

    mode: str
    motifs: tuple
    class_counts: tuple
    reason: str


def _make_samples(dataset: Dataset, colorings: list, indices: Iterable,
                  y: int, motif: Optional[MotifSpec],
                  mask_cache: Optional[dict] = None) -> list:
    samples = []
    for gi in indices:
        g = dataset.graphs[gi]
        if motif is None:
            mask = ()
        elif mask_cache is not None:
            key = (gi, motif.color)
            mask = mask_cache.get(key)
            if mask is None:
                mask = build_mask(g, colorings[gi], motif)
                mask_cache[key] = mask
        else:
            mask = build_mask(g, colorings[gi], motif)
        samples.append(XaiSample(g, y, mask))
    return samples


def generate_two_motif(dataset: Dataset, histograms: list, colorings: list,
                       m0: MotifSpec, m1: MotifSpec,
                       mask_cache: Optional[dict] = None):
    """Benchmark where class 0 contains m0 but not m1 and class 1 the
    reverse; graphs containing both or neither are dropped. Returns a
    Rejection instead of a benchmark when either class ends up empty."""
    if m0.canonical_key == m1.canonical_key:
        raise InputError("the two motifs must be distinct colors")
    if m0.color is None or m1.color is None:
        raise InputError("motifs must be bound to a live color table")
    idx0, idx1 = [], []
    for gi, (y, hist) in enumerate(zip(dataset.labels, histograms)):
        has0, has1 = m0.color in hist, m1.color in hist
        if y == 0 and has0 and not has1:
            idx0.append(gi)
        elif y == 1 and has1 and not has0:
            idx1.append(gi)
    if not idx0 or not idx1:
        counts = (len(idx0), len(idx1))
        side = "0" if not idx0 else "1"
        return Rejection(MODE_TWO_MOTIF, (m0, m1), counts,
                         f"class {side} has no qualifying graphs")
    samples = _make_samples(dataset, colorings, idx0, 0, m0, mask_cache)
    samples += _make_samples(dataset, colorings, idx1, 1, m1, mask_cache)
    return XaiBenchmark(tuple(samples), (m0, m1), dataset.name, MODE_TWO_MOTIF)


def generate_single_motif(dataset: Dataset, histograms: list, colorings: list,
                          motif: MotifSpec, y: int,
                          mask_cache: Optional[dict] = None):
    """Benchmark where class y contains the motif (with masks) and the
    other class does not contain it (with empty masks)."""
    if y not in (0, 1):
        raise InputError(f"class must be 0 or 1, got {y}")
    if motif.color is None:
        raise InputError("motif must be bound to a live color table")
    idx_with, idx_without = [], []
    for gi, (label, hist) in enumerate(zip(dataset.labels, histograms)):
        has = motif.color in hist
        if label == y and has:
            idx_with.append(gi)
        elif label == 1 - y and not has:
            idx_without.append(gi)
    if not idx_with or not idx_without:
        counts = (len(idx_with), len(idx_without)) if y == 0 else (len(idx_without), len(idx_with))
        side = y if not idx_with else 1 - y
        return Rejection(MODE_SINGLE_0 if y == 0 else MODE_SINGLE_1,
                         (motif,), counts, f"class {side} has no qualifying graphs")
    samples = _make_samples(dataset, colorings, idx_with, y, motif, mask_cache)
    samples += _make_samples(dataset, colorings, idx_without, 1 - y, None)
    samples.sort(key=lambda s: s.y)  # stable: dataset order kept within class
    mode = MODE_SINGLE_0 if y == 0 else MODE_SINGLE_1
    return XaiBenchmark(tuple(samples), (motif,), dataset.name, mode)


def enumerate_benchmarks(dataset: Dataset, iterations: int, top_k: int,
                         update: str = "standard",
                         rejections: Optional[list] = None) -> Iterator[XaiBenchmark]:
    """Run the full generation procedure and yield candidate benchmarks.

    Yields, in deterministic order, the k x k two-motif benchmarks over
    candidate pairs followed by the 2k single-motif benchmarks. Candidates
    whose benchmark would have an empty class are reported (appended to
    `rejections` and logged) but not yielded.
    """
    if len(set(dataset.labels)) < 2:
        raise InputError("dataset must contain both classes")
    table, colorings = refine(dataset, iterations, update=update)
    histograms = [histogram(c) for c in colorings]
    freqs = class_frequencies(dataset, histograms)
    cands0, cands1, _ = top_k_candidates(freqs, table, top_k)
    mask_cache: dict = {}

    def emit(result):
        if isinstance(result, Rejection):
            log.info("rejected %s (%s): counts %s", result.mode, result.reason,
                     result.class_counts)
            if rejections is not None:
                rejections.append(result)
            return None
        return result

    for m0 in cands0:
        for m1 in cands1:
            if m0.canonical_key == m1.canonical_key:
                continue
            result = emit(generate_two_motif(dataset, histograms, colorings,
                                             m0, m1, mask_cache))
            if result is not None:
                yield result
    for y, cands in ((0, cands0), (1, cands1)):
        for motif in cands:
            result = emit(generate_single_motif(dataset, histograms, colorings,
                                                motif, y, mask_cache))
            if result is not None:
                yield result


def rank_candidates(benchmarks: Iterable, min_size: int = 0,
                    min_balance: float = 0.0) -> list:
    """Filter by size/balance thresholds and order candidates for release.

    Order: balance descending, then total size descending, then the
    deterministic benchmark key. Benchmarks with identical sample sets
    (same graphs, classes, and masks under different motif pairs) are
    deduplicated, keeping the first in that order.
    """
    kept = [
        b for b in benchmarks
        if len(b.samples) >= min_size and b.balance >= min_balance
    ]
    kept.sort(key=lambda b: (-b.balance, -len(b.samples), b.key))
    seen = set()
    out = []
    for b in kept:
        fp = b.sample_fingerprint()
        if fp in seen:
            continue
        seen.add(fp)
        out.append(b)
    return out
