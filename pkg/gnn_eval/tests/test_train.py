import json

import torch

from gnn_eval.data import load_benchmark
from gnn_eval.train import GinConfig, train_and_select, train_model


def write_tiny_benchmark(path, n_samples=16):
    """Hand-built benchmark file: class decided by presence of label 1.

    Classes differ by node-label presence only, so any working model can
    overfit it immediately.
    """
    samples = []
    for i in range(n_samples):
        y = i % 2
        labels = [0, 1 if y else 0, 0]
        split = "train" if i < n_samples - 4 else ("valid" if i % 2 else "test")
        samples.append({
            "graph_id": f"tiny#{i}",
            "num_nodes": 3,
            "node_labels": labels,
            "edges": [[0, 1], [1, 2]],
            "y": y,
            "gt_mask": [1] if y else [0],
            "split": split,
        })
    doc = {
        "schema_version": "1.0",
        "kind": "benchmark",
        "metadata": {
            "source_dataset": "tiny",
            "mode": "two_motif",
            "motifs": [
                {"class_role": 0, "iteration": 0, "canonical_key": "l0",
                 "freq0": 8, "freq1": 0},
                {"class_role": 1, "iteration": 0, "canonical_key": "l1",
                 "freq0": 0, "freq1": 8},
            ],
            "class_counts": [n_samples // 2, n_samples // 2],
            "balance": 1.0,
            "label_alphabet": [0, 1],
            "split": {"seed": 0, "ratios": [0.7, 0.2, 0.1],
                      "size_bin_edges": [3.0, 3.0, 3.0]},
        },
        "samples": samples,
    }
    path.write_text(json.dumps(doc))
    return path


def test_overfits_tiny_benchmark(tmp_path):
    data = load_benchmark(write_tiny_benchmark(tmp_path / "tiny.json"))
    trained = train_model(data, GinConfig(1e-3, 2, 32, 1e-4), seed=0)
    assert trained.train_f1 == 1.0


def test_selection_prefers_better_valid_f1(tmp_path):
    data = load_benchmark(write_tiny_benchmark(tmp_path / "tiny.json"))
    grid = [GinConfig(1e-3, 1, 32, 1e-4), GinConfig(1e-3, 2, 32, 1e-4)]
    best = train_and_select(data, grid=grid, seed=1)
    assert best.valid_f1 == max(f1 for _, f1 in best.grid_results)
    assert len(best.grid_results) == 2
    assert best.converged


def test_early_stopping_bounded_epochs(tmp_path):
    data = load_benchmark(write_tiny_benchmark(tmp_path / "tiny.json"))
    trained = train_model(data, GinConfig(1e-3, 2, 32, 1e-3), seed=0)
    # converges immediately, so patience caps the run far below the max
    assert trained.epochs_run <= 100


def test_training_deterministic(tmp_path):
    data = load_benchmark(write_tiny_benchmark(tmp_path / "tiny.json"))
    a = train_model(data, GinConfig(1e-3, 2, 32, 1e-4), seed=3)
    b = train_model(data, GinConfig(1e-3, 2, 32, 1e-4), seed=3)
    for pa, pb in zip(a.model.parameters(), b.model.parameters()):
        assert torch.equal(pa, pb)
