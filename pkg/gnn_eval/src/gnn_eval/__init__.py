"""Evaluation harness for ground-truth explanation benchmarks.

Reads benchmark files in the documented JSON interchange format, trains a
GIN-style graph classifier per benchmark via grid search, runs five node
explainers (random, saliency, integrated gradients, CAM, learned soft
mask), and writes importance-mask files bound to the benchmark's content
fingerprint for the companion scoring pipeline.
"""

from gnn_eval.data import BenchmarkData, GraphData, load_benchmark
from gnn_eval.model import Gin, UnsupportedArchitectureError
from gnn_eval.train import GinConfig, TrainedModel, train_and_select, train_model
from gnn_eval.explain import (
    explain_cam,
    explain_gnnexplainer,
    explain_ig,
    explain_random,
    explain_saliency,
)
from gnn_eval.masks import export_masks, write_mask_file

__version__ = "0.1.0"
