"""Sum-aggregation message-passing classifier (GIN).

Each layer computes h_v <- MLP((1 + eps) h_v + sum of neighbor h_u) with a
two-layer ReLU MLP; after L layers a global add pooling produces the graph
embedding, and a linear readout with bias yields one logit per class. The
add-pool + linear readout structure is what makes the exact per-node logit
decomposition (CAM) possible.
"""

from __future__ import annotations

import torch
from torch import nn


class UnsupportedArchitectureError(RuntimeError):
    """Raised when an explainer needs add pooling + linear readout and the
    model was configured differently."""


class GinLayer(nn.Module):
    def __init__(self, in_dim: int, out_dim: int, eps: float = 0.0):
        super().__init__()
        self.eps = eps
        self.mlp = nn.Sequential(
            nn.Linear(in_dim, out_dim),
            nn.ReLU(),
            nn.Linear(out_dim, out_dim),
        )

    def forward(self, h, edge_index):
        agg = torch.zeros_like(h)
        if edge_index.numel():
            src, dst = edge_index
            agg = agg.index_add(0, dst, h[src])
        return self.mlp((1.0 + self.eps) * h + agg)


class Gin(nn.Module):
    def __init__(self, feature_dim: int, hidden: int, layers: int,
                 classes: int = 2, pooling: str = "add"):
        super().__init__()
        if layers < 1:
            raise ValueError("need at least one message-passing layer")
        dims = [feature_dim] + [hidden] * layers
        self.layers = nn.ModuleList(
            GinLayer(dims[i], dims[i + 1]) for i in range(layers)
        )
        self.readout = nn.Linear(hidden, classes)
        self.pooling = pooling
        self.feature_dim = feature_dim
        self.hidden = hidden

    def node_embeddings(self, x, edge_index):
        h = x
        for layer in self.layers:
            h = layer(h, edge_index)
        return h

    def forward(self, x, edge_index, batch=None, n_graphs=1):
        """Logits per graph; `batch` maps each node to its graph slot."""
        h = self.node_embeddings(x, edge_index)
        if batch is None:
            batch = torch.zeros(h.shape[0], dtype=torch.long, device=h.device)
        pooled = torch.zeros((n_graphs, h.shape[1]), dtype=h.dtype,
                             device=h.device)
        pooled = pooled.index_add(0, batch, h)
        if self.pooling == "mean":
            counts = torch.zeros(n_graphs, dtype=h.dtype,
                                 device=h.device).index_add(
                0, batch, torch.ones(h.shape[0], dtype=h.dtype,
                                     device=h.device))
            pooled = pooled / counts.clamp(min=1).unsqueeze(1)
        elif self.pooling != "add":
            raise ValueError(f"unknown pooling {self.pooling!r}")
        return self.readout(pooled)

    def predict_logits(self, graph):
        """Logits for a single sample (inference only, no autograd)."""
        with torch.no_grad():
            return self.forward(graph.x, graph.edge_index, n_graphs=1)[0]

    def predicted_class(self, graph) -> int:
        return int(self.predict_logits(graph).argmax())
