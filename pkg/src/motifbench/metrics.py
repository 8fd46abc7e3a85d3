"""Scoring of explanation masks and rank statistics across benchmarks.

A node-importance mask is scored against the ground-truth mask with the
ROC-AUC in its exact Mann-Whitney form (ties count one half). Scores of
several methods across many benchmarks form a matrix that feeds a Friedman
rank test plus the Nemenyi post-hoc critical difference, the standard
machinery for comparing methods over multiple datasets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
from scipy.stats import chi2 as chi2_dist
from scipy.stats import f as f_dist
from scipy.stats import rankdata

from motifbench.errors import InputError, UndefinedAucError
from motifbench.generate import XaiBenchmark
from motifbench.split import SplitAssignment


def roc_auc(scores: Sequence, gt: Iterable) -> float:
    """Exact ROC-AUC of importance scores against a ground-truth node set.

    Equals the fraction of (positive, negative) node pairs where the
    positive node scores strictly higher, counting ties as one half;
    computed via midranks in O(n log n).

    Raises UndefinedAucError when the ground truth is empty or covers all
    nodes, since one of the two classes would have no members.
    """
    scores = np.asarray(scores, dtype=float)
    if scores.ndim != 1 or scores.size == 0:
        raise InputError("scores must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(scores)):
        raise InputError("scores must be finite")
    positives = sorted(set(gt))
    if positives and (positives[0] < 0 or positives[-1] >= scores.size):
        raise InputError("ground-truth indices out of range")
    n_pos = len(positives)
    n_neg = scores.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise UndefinedAucError(
            f"ground truth covers {n_pos} of {scores.size} nodes"
        )
    ranks = rankdata(scores)  # average ranks on ties
    rank_sum = float(ranks[positives].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


@dataclass(frozen=True)
class ClassPlausibility:
    mean: Optional[float]
    std: Optional[float]
    n_evaluated: int
    n_skipped: int


@dataclass(frozen=True)
class PlausibilityReport:
    """Per-class mean/std of per-graph AUCs over the test split."""

    method: str
    benchmark_key: str
    rows: dict  # class -> ClassPlausibility


def plausibility(bench: XaiBenchmark, split: SplitAssignment,
                 masks: Mapping, method: str = "") -> PlausibilityReport:
    """Score one method's masks on a benchmark's test split.

    `masks` maps graph_id to a score sequence (one float per node) and must
    cover every test sample. Classes without ground-truth motifs are not
    reported; test samples whose ground truth is empty or covers the whole
    graph are skipped and tallied.
    """
    if len(split.assignment) != len(bench.samples):
        raise InputError("split not aligned with benchmark")
    per_class: dict = {c: [] for c in bench.gt_classes()}
    skipped: dict = {c: 0 for c in bench.gt_classes()}
    for i in split.indices("test"):
        sample = bench.samples[i]
        gid = sample.graph.graph_id
        if gid not in masks:
            raise InputError(f"no importance mask for test sample {gid!r}")
        scores = masks[gid]
        if len(scores) != sample.graph.node_count:
            raise InputError(
                f"mask for {gid!r} has {len(scores)} scores for "
                f"{sample.graph.node_count} nodes"
            )
        if sample.y not in per_class:
            continue
        try:
            auc = roc_auc(scores, sample.mask)
        except UndefinedAucError:
            skipped[sample.y] += 1
            continue
        per_class[sample.y].append(auc)
    rows = {}
    for c in sorted(per_class):
        aucs = per_class[c]
        if aucs:
            rows[c] = ClassPlausibility(float(np.mean(aucs)), float(np.std(aucs)),
                                        len(aucs), skipped[c])
        else:
            rows[c] = ClassPlausibility(None, None, 0, skipped[c])
    return PlausibilityReport(method, bench.key, rows)


@dataclass(frozen=True)
class FriedmanResult:
    chi2: float
    p_value: float
    avg_ranks: tuple
    n_rows: int
    n_methods: int
    iman_davenport_f: Optional[float] = None
    iman_davenport_p: Optional[float] = None


def _row_ranks(matrix: np.ndarray) -> np.ndarray:
    # rank 1 = best = highest score; ties get average ranks
    return np.apply_along_axis(lambda r: rankdata(-r), 1, matrix)


def friedman_test(matrix) -> FriedmanResult:
    """Friedman rank test over an N x k score matrix (rows = datasets,
    columns = methods, higher scores better).

    The statistic is 12N/(k(k+1)) * sum_j (Rbar_j - (k+1)/2)^2 with
    tie-averaged ranks; the p-value comes from the chi-square upper tail
    with k-1 degrees of freedom. The Iman-Davenport F variant is included
    as a secondary output.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2:
        raise InputError("score matrix must be 2-dimensional")
    n, k = matrix.shape
    if n < 2 or k < 2:
        raise InputError(f"need at least 2 rows and 2 methods, got {n}x{k}")
    ranks = _row_ranks(matrix)
    avg = ranks.mean(axis=0)
    stat = 12.0 * n / (k * (k + 1)) * float(np.sum((avg - (k + 1) / 2.0) ** 2))
    p = float(chi2_dist.sf(stat, k - 1))
    denom = n * (k - 1) - stat
    if denom > 0:
        f_stat = (n - 1) * stat / denom
        f_p = float(f_dist.sf(f_stat, k - 1, (k - 1) * (n - 1)))
    else:
        f_stat, f_p = float("inf"), 0.0
    return FriedmanResult(stat, p, tuple(float(r) for r in avg), n, k, f_stat, f_p)


@dataclass(frozen=True)
class CurvePoint:
    n: int
    p_prefix: float
    p_min: Optional[float] = None
    p_median: Optional[float] = None
    p_max: Optional[float] = None


def friedman_curve(matrix, orderings: int = 0, seed: int = 0) -> list:
    """p-value of the Friedman test as rows accumulate.

    For each n in 2..N the prefix of the first n rows is tested; with
    `orderings` > 0, that many random n-row subsets are also tested and
    summarized as (min, median, max), giving the spread the curve would
    have under a different benchmark ordering.
    """
    matrix = np.asarray(matrix, dtype=float)
    n_total = matrix.shape[0]
    rng = np.random.default_rng(seed)
    points = []
    for n in range(2, n_total + 1):
        p_prefix = friedman_test(matrix[:n]).p_value
        if orderings > 0:
            ps = []
            for _ in range(orderings):
                idx = rng.choice(n_total, size=n, replace=False)
                ps.append(friedman_test(matrix[idx]).p_value)
            points.append(CurvePoint(n, p_prefix, float(np.min(ps)),
                                     float(np.median(ps)), float(np.max(ps))))
        else:
            points.append(CurvePoint(n, p_prefix))
    return points


# Two-tailed Nemenyi critical values q_alpha for k = 2..10 methods
# (studentized range at infinite df divided by sqrt(2)).
_Q_TABLE = {
    0.05: {2: 1.960, 3: 2.343, 4: 2.569, 5: 2.728, 6: 2.850,
           7: 2.949, 8: 3.031, 9: 3.102, 10: 3.164},
    0.10: {2: 1.645, 3: 2.052, 4: 2.291, 5: 2.459, 6: 2.589,
           7: 2.693, 8: 2.780, 9: 2.855, 10: 2.920},
}


def nemenyi_cd(k: int, n_rows: int, alpha: float = 0.05) -> float:
    """Critical difference of average ranks for k methods over n_rows
    datasets: CD = q_alpha * sqrt(k(k+1) / (6 n_rows))."""
    if alpha not in _Q_TABLE:
        raise InputError(f"alpha must be one of {sorted(_Q_TABLE)}, got {alpha}")
    if k not in _Q_TABLE[alpha]:
        raise InputError(f"k must be in 2..10 for the embedded q table, got {k}")
    if n_rows < 1:
        raise InputError(f"n_rows must be >= 1, got {n_rows}")
    return _Q_TABLE[alpha][k] * float(np.sqrt(k * (k + 1) / (6.0 * n_rows)))


def cd_cliques(avg_ranks: Mapping, cd: float) -> list:
    """Maximal groups of methods whose average ranks all lie within `cd`.

    Methods are ordered by rank; a clique is a maximal contiguous window
    whose extreme ranks differ by less than `cd`. Methods not compatible
    with any neighbor form singleton cliques.
    """
    items = sorted(avg_ranks.items(), key=lambda kv: (kv[1], kv[0]))
    windows = []
    for i in range(len(items)):
        j = i
        while j + 1 < len(items) and items[j + 1][1] - items[i][1] < cd:
            j += 1
        windows.append((i, j))
    maximal = [
        (i, j) for (i, j) in windows
        if not any(a <= i and j <= b and (a, b) != (i, j) for (a, b) in windows)
    ]
    cliques = []
    for i, j in sorted(set(maximal)):
        cliques.append([name for name, _ in items[i:j + 1]])
    return cliques


@dataclass(frozen=True)
class RankReport:
    """Aggregate comparison of methods across benchmark rows."""

    methods: tuple
    row_labels: tuple
    avg_ranks: dict
    chi2: float
    p_value: float
    alpha: float
    cd: float
    cliques: tuple
    n_rows: int
    iman_davenport_f: Optional[float] = None
    iman_davenport_p: Optional[float] = None


def rank_report(matrix, methods: Sequence, alpha: float = 0.05,
                row_labels: Optional[Sequence] = None) -> RankReport:
    """Friedman test + Nemenyi critical difference + cliques in one shot."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[1] != len(methods):
        raise InputError("matrix columns must match the method list")
    result = friedman_test(matrix)
    cd = nemenyi_cd(len(methods), matrix.shape[0], alpha)
    ranks = dict(zip(methods, result.avg_ranks))
    cliques = tuple(tuple(c) for c in cd_cliques(ranks, cd))
    labels = tuple(row_labels) if row_labels is not None else tuple(
        f"row{i}" for i in range(matrix.shape[0])
    )
    if len(labels) != matrix.shape[0]:
        raise InputError("row_labels must match the matrix rows")
    return RankReport(tuple(methods), labels, ranks, result.chi2, result.p_value,
                      alpha, cd, cliques, matrix.shape[0],
                      result.iman_davenport_f, result.iman_davenport_p)
