"""Shared fixtures: toy datasets, random-graph helpers, and TU fixtures."""

import random

import pytest

from motifbench.graphs import Graph
from motifbench.tu import Dataset

# dense node-label ids used by the 4-graph toy set
LABEL_A, LABEL_X, LABEL_Y = 0, 1, 2


def random_graph(rng, n_max=10, n_min=1, alphabet=2, edge_prob=0.35,
                 connected=False, graph_id="g"):
    """Seeded random simple graph with labels from a small alphabet."""
    n = rng.randint(n_min, n_max)
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.add((u, v))
    if connected and n > 1:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            a, b = order[rng.randrange(i)], order[i]
            edges.add((a, b) if a < b else (b, a))
    labels = [rng.randrange(alphabet) for _ in range(n)]
    return Graph(n, tuple(sorted(edges)), tuple(labels), graph_id=graph_id)


def random_dataset(seed, n_graphs=10, n_max=10, alphabet=2, edge_prob=0.35,
                   name="rand"):
    """Random dataset with both classes guaranteed present."""
    rng = random.Random(seed)
    graphs, labels = [], []
    for i in range(n_graphs):
        graphs.append(random_graph(rng, n_max=n_max, alphabet=alphabet,
                                   edge_prob=edge_prob, graph_id=f"{name}#{i}"))
        labels.append(rng.randrange(2))
    labels[0], labels[1] = 0, 1
    return Dataset(tuple(graphs), tuple(labels), tuple(range(alphabet)), name=name)


@pytest.fixture
def toy_dataset():
    """Four tiny graphs: class 0 owns label X exclusively, class 1 owns Y
    in one graph; used throughout the generator tests.

    G1 (class 0): path X-A      G2 (class 0): path X-Y
    G3 (class 1): single node Y G4 (class 1): path A-A
    """
    g1 = Graph(2, ((0, 1),), (LABEL_X, LABEL_A), graph_id="G1")
    g2 = Graph(2, ((0, 1),), (LABEL_X, LABEL_Y), graph_id="G2")
    g3 = Graph(1, (), (LABEL_Y,), graph_id="G3")
    g4 = Graph(2, ((0, 1),), (LABEL_A, LABEL_A), graph_id="G4")
    return Dataset((g1, g2, g3, g4), (0, 0, 1, 1), (0, 1, 2), name="toy")


def write_tu_fixture(prefix, graphs, raw_graph_labels, raw_node_labels,
                     edges_1based):
    """Write raw TU text files from explicit per-file content.

    `graphs` is a list of node counts; `edges_1based` uses global 1-based
    node ids exactly as they should appear in the _A file.
    """
    prefix.parent.mkdir(parents=True, exist_ok=True)
    name = prefix.name
    indicator = []
    for gi, n in enumerate(graphs):
        indicator += [str(gi + 1)] * n
    (prefix.parent / f"{name}_graph_indicator.txt").write_text(
        "\n".join(indicator) + "\n")
    (prefix.parent / f"{name}_graph_labels.txt").write_text(
        "\n".join(str(raw) for raw in raw_graph_labels) + "\n")
    (prefix.parent / f"{name}_node_labels.txt").write_text(
        "\n".join(str(raw) for raw in raw_node_labels) + "\n")
    (prefix.parent / f"{name}_A.txt").write_text(
        "\n".join(f"{u}, {v}" for u, v in edges_1based) + "\n")


def synthetic_planted_dataset(seed, n_graphs=700, name="synth"):
    """Larger synthetic source where label 2 is planted only in class-0
    graphs and label 3 only in class-1 graphs; body labels are {0, 1}.

    Gives clean iteration-0 discriminating patterns and benchmarks with
    hundreds of samples, for split/evaluation tests.
    """
    rng = random.Random(seed)
    graphs, labels = [], []
    for i in range(n_graphs):
        y = i % 2
        n = rng.randint(8, 16)
        g = random_graph(rng, n_max=n, n_min=n, alphabet=2, edge_prob=0.3,
                         connected=True, graph_id=f"{name}#{i}")
        planted_label = 2 if y == 0 else 3
        node_labels = list(g.node_labels)
        for v in rng.sample(range(n), rng.randint(1, 2)):
            node_labels[v] = planted_label
        graphs.append(Graph(n, g.edges, tuple(node_labels), graph_id=g.graph_id))
        labels.append(y)
    return Dataset(tuple(graphs), tuple(labels), (0, 1, 2, 3), name=name)
