"""Benchmark builder for graph-classification explainability.

The pipeline mines node-level structural patterns from a labeled graph
dataset via iterated color refinement, selects patterns whose presence is
skewed towards one class, and emits benchmark datasets in which every
sample carries a ground-truth explanation mask. A companion metrics stack
scores explainer-produced importance masks against those ground truths and
ranks explainers across benchmarks with nonparametric statistics.
"""

from motifbench.errors import (
    FormatError,
    InputError,
    IntegrityError,
    MotifBenchError,
    SchemaVersionError,
    UndefinedAucError,
)
from motifbench.graphs import Graph, connected_components, ego_nodes
from motifbench.tu import Dataset, parse_tudataset, write_tudataset
from motifbench.wl import ColorTable, WlColor, histogram, refine
from motifbench.generate import (
    FreqTable,
    MotifSpec,
    Rejection,
    XaiBenchmark,
    XaiSample,
    build_mask,
    class_frequencies,
    enumerate_benchmarks,
    generate_single_motif,
    generate_two_motif,
    rank_candidates,
    top_k_candidates,
)
from motifbench.split import SplitAssignment, stratified_split
from motifbench.metrics import (
    FriedmanResult,
    PlausibilityReport,
    RankReport,
    cd_cliques,
    friedman_curve,
    friedman_test,
    nemenyi_cd,
    plausibility,
    rank_report,
    roc_auc,
)
from motifbench.bench_io import (
    SCHEMA_VERSION,
    fingerprint_bytes,
    fingerprint_file,
    read_benchmark,
    read_masks,
    write_benchmark,
    write_masks,
)

__version__ = "0.1.0"

__all__ = [
    "MotifBenchError", "InputError", "FormatError", "IntegrityError",
    "SchemaVersionError", "UndefinedAucError",
    "Graph", "ego_nodes", "connected_components",
    "Dataset", "parse_tudataset", "write_tudataset",
    "WlColor", "ColorTable", "refine", "histogram",
    "FreqTable", "MotifSpec", "XaiSample", "XaiBenchmark", "Rejection",
    "class_frequencies", "top_k_candidates", "build_mask",
    "generate_two_motif", "generate_single_motif",
    "enumerate_benchmarks", "rank_candidates",
    "SplitAssignment", "stratified_split",
    "roc_auc", "plausibility", "PlausibilityReport",
    "friedman_test", "friedman_curve", "FriedmanResult",
    "nemenyi_cd", "cd_cliques", "rank_report", "RankReport",
    "SCHEMA_VERSION", "write_benchmark", "read_benchmark",
    "write_masks", "read_masks", "fingerprint_bytes", "fingerprint_file",
]
