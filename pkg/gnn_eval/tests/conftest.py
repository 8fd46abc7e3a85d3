"""Fixtures for the evaluation harness.

Benchmarks come from the companion generator CLI (`motifbench`), invoked as
a subprocess over a synthetic dataset written here in the TU text format;
this package touches only the documented external surfaces: the TU files,
the CLI, and the benchmark/mask JSON formats.
"""

import random
import subprocess
import sys

import pytest
import torch

from gnn_eval.data import GraphData


def write_synthetic_tu(prefix, n_graphs=400, seed=5):
    """Synthetic molecules-like dataset: class 0 plants node label 2,
    class 1 plants node label 3, body labels drawn from {0, 1}."""
    rng = random.Random(seed)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    indicator, node_labels, edges = [], [], []
    graph_labels = []
    offset = 0
    for gi in range(n_graphs):
        y = gi % 2
        n = rng.randint(8, 16)
        labels = [rng.randrange(2) for _ in range(n)]
        for v in rng.sample(range(n), rng.randint(1, 2)):
            labels[v] = 2 if y == 0 else 3
        # random connected backbone plus extra edges
        order = list(range(n))
        rng.shuffle(order)
        edge_set = set()
        for i in range(1, n):
            a, b = order[rng.randrange(i)], order[i]
            edge_set.add((min(a, b), max(a, b)))
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.15:
                    edge_set.add((u, v))
        indicator += [str(gi + 1)] * n
        node_labels += [str(x) for x in labels]
        for u, v in sorted(edge_set):
            edges.append(f"{offset + u + 1}, {offset + v + 1}")
            edges.append(f"{offset + v + 1}, {offset + u + 1}")
        graph_labels.append(str(y))
        offset += n
    name = prefix.name
    (prefix.parent / f"{name}_graph_indicator.txt").write_text(
        "\n".join(indicator) + "\n")
    (prefix.parent / f"{name}_graph_labels.txt").write_text(
        "\n".join(graph_labels) + "\n")
    (prefix.parent / f"{name}_node_labels.txt").write_text(
        "\n".join(node_labels) + "\n")
    (prefix.parent / f"{name}_A.txt").write_text("\n".join(edges) + "\n")


def run_generator(prefix, out_dir, wl_iters=1, top_k=2, seed=1,
                  min_balance=0.5, max_benchmarks=3):
    cmd = [sys.executable, "-m", "motifbench.cli", "generate",
           "--dataset", str(prefix), "--wl-iters", str(wl_iters),
           "--top-k", str(top_k), "--seed", str(seed),
           "--min-balance", str(min_balance),
           "--max-benchmarks", str(max_benchmarks), "--out", str(out_dir)]
    result = subprocess.run(cmd, capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
    files = sorted(out_dir.glob("benchmark_*.json"))
    assert files, result.stderr
    return files


@pytest.fixture(scope="session")
def benchmark_files(tmp_path_factory):
    base = tmp_path_factory.mktemp("bench_src")
    prefix = base / "synth" / "synth"
    write_synthetic_tu(prefix, n_graphs=400, seed=5)
    return run_generator(prefix, base / "generated")


def toy_graph(n=4, ring=True):
    x = torch.eye(n, dtype=torch.float32)[:, : max(3, n)]
    x = torch.zeros((n, 3))
    for v in range(n):
        x[v, v % 3] = 1.0
    if ring and n > 2:
        pairs = [(v, (v + 1) % n) for v in range(n)]
    else:
        pairs = [(v, v + 1) for v in range(n - 1)]
    src = [u for u, v in pairs] + [v for u, v in pairs]
    dst = [v for u, v in pairs] + [u for u, v in pairs]
    return GraphData("toy", x, torch.tensor([src, dst], dtype=torch.long),
                     0, (0,), "test")
