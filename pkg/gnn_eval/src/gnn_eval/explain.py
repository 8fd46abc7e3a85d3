"""Node-importance explainers for the trained classifier.

All five produce one real score per node for a single graph, explaining the
model's own predicted class: seeded random scores (the null baseline),
input-gradient saliency summed per node, integrated gradients along the
straight path from an all-zero baseline, the exact per-node decomposition
of the add-pooled readout logit (CAM), and a learned soft node mask
optimized to keep the prediction while shrinking (GNNExplainer-style).
"""

from __future__ import annotations

import numpy as np
import torch

from gnn_eval.data import GraphData
from gnn_eval.model import UnsupportedArchitectureError


def _predicted_class(model, graph: GraphData) -> int:
    with torch.no_grad():
        logits = model(graph.x, graph.edge_index, n_graphs=1)[0]
    return int(logits.argmax())


def explain_random(model, graph: GraphData, seed: int = 0) -> np.ndarray:
    """Uniform scores in [0, 1); deterministic per seed."""
    rng = np.random.default_rng(seed)
    return rng.random(graph.num_nodes)


def explain_saliency(model, graph: GraphData) -> np.ndarray:
    """Gradient of the predicted-class logit w.r.t. the input features,
    summed over each node's features."""
    target = _predicted_class(model, graph)
    x = graph.x.clone().requires_grad_(True)
    logits = model(x, graph.edge_index, n_graphs=1)[0]
    logits[target].backward()
    return x.grad.sum(dim=1).detach().numpy()


def explain_ig(model, graph: GraphData, m_steps: int = 64) -> np.ndarray:
    """Integrated gradients from an all-zero baseline.

    The path integral of the predicted-class logit gradient along the
    straight line from the baseline is approximated with the trapezoidal
    rule on m_steps intervals (gradients at k/m for k = 0..m, half weights
    at the ends); per-feature attributions are summed per node. The
    attribution total approaches logit(x) - logit(baseline) as m_steps
    grows (completeness).
    """
    if m_steps < 8:
        raise ValueError(f"m_steps must be >= 8, got {m_steps}")
    target = _predicted_class(model, graph)
    n, d = graph.x.shape
    m_points = m_steps + 1
    alphas = torch.arange(0, m_points, dtype=graph.x.dtype) / m_steps
    weights = torch.full((m_points,), 1.0 / m_steps, dtype=graph.x.dtype)
    weights[0] = weights[-1] = 0.5 / m_steps
    # stack the interpolated copies as one disconnected batch
    x_stack = (alphas[:, None, None] * graph.x[None, :, :]).reshape(-1, d)
    x_stack = x_stack.requires_grad_(True)
    if graph.edge_index.numel():
        offsets = (torch.arange(m_points) * n).repeat_interleave(
            graph.edge_index.shape[1])
        edge_index = graph.edge_index.repeat(1, m_points) + offsets
    else:
        edge_index = graph.edge_index
    batch = torch.arange(m_points).repeat_interleave(n)
    logits = model(x_stack, edge_index, batch, m_points)
    logits[:, target].sum().backward()
    grads = x_stack.grad.reshape(m_points, n, d)
    avg_grad = (weights[:, None, None] * grads).sum(dim=0)
    attribution = graph.x.numpy() * avg_grad.numpy()
    return attribution.sum(axis=1)


def explain_cam(model, graph: GraphData) -> np.ndarray:
    """Per-node contribution to the predicted-class logit.

    With add pooling and a linear readout the logit decomposes exactly:
    logit = sum_v (w . h_v) + b, so each node scores w . h_v + b/n.
    Requires that architecture; anything else is unsupported.
    """
    if getattr(model, "pooling", None) != "add":
        raise UnsupportedArchitectureError(
            "per-node logit decomposition needs global add pooling"
        )
    readout = getattr(model, "readout", None)
    if not isinstance(readout, torch.nn.Linear):
        raise UnsupportedArchitectureError(
            "per-node logit decomposition needs a linear readout"
        )
    target = _predicted_class(model, graph)
    with torch.no_grad():
        h = model.node_embeddings(graph.x, graph.edge_index)
        weight = readout.weight[target]
        bias = readout.bias[target] if readout.bias is not None else 0.0
        scores = h @ weight + bias / graph.num_nodes
    return scores.numpy()


def explain_gnnexplainer(model, graph: GraphData, epochs: int = 200,
                         seed: int = 0, step_size: float = 0.1,
                         size_coeff: float = 0.05, ent_coeff: float = 0.1,
                         return_trace: bool = False):
    """Learned soft node mask.

    Optimizes mask logits so that the prediction on the feature-masked
    graph keeps the model's original class while the mask stays small and
    crisp (size + entropy regularization). Optimization is plain gradient
    descent with backtracking (the step halves whenever it would increase
    the objective), so the loss trace is non-increasing by construction.
    Scores are the sigmoid of the final mask logits.
    """
    target = _predicted_class(model, graph)
    target_tensor = torch.tensor([target])
    generator = torch.Generator().manual_seed(seed)
    loss_fn = torch.nn.CrossEntropyLoss()

    def objective(logits_vec):
        soft = torch.sigmoid(logits_vec)
        masked = soft[:, None] * graph.x
        out = model(masked, graph.edge_index, n_graphs=1)
        entropy = -(soft * torch.log(soft + 1e-12)
                    + (1 - soft) * torch.log(1 - soft + 1e-12))
        return (loss_fn(out, target_tensor)
                + size_coeff * soft.mean()
                + ent_coeff * entropy.mean())

    point = (0.1 * torch.randn(graph.num_nodes, generator=generator))
    point = point.requires_grad_(True)
    current = objective(point)
    trace = [float(current.detach())]
    for _ in range(epochs):
        grad = torch.autograd.grad(current, point)[0]
        step = step_size
        with torch.no_grad():
            candidate = point.detach()
            for _ in range(30):
                trial = point.detach() - step * grad
                if objective(trial) <= current:
                    candidate = trial
                    break
                step /= 2.0
        point = candidate.requires_grad_(True)
        current = objective(point)
        trace.append(float(current.detach()))
    scores = torch.sigmoid(point.detach()).numpy()
    if return_trace:
        return scores, trace
    return scores


EXPLAINERS = {
    "random": explain_random,
    "saliency": explain_saliency,
    "intgrad": explain_ig,
    "cam": explain_cam,
    "gnnexplainer": explain_gnnexplainer,
}
