"""Forward pass of the probability-map GCN and portable weight I/O.

Layer rule: H_{l+1} = act(H_l @ theta0_l + Ahat @ H_l @ theta1_l), where Ahat
is the symmetrically normalized adjacency, H_0 is all-ones, hidden layers use
ReLU and the output layer sigmoid. The m columns of the output, transposed,
are the per-vertex probability maps.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from mdskit.graph import Graph

# above this order the propagation product uses a sparse matrix; results agree
SPARSE_THRESHOLD = 512


class WeightFormatError(ValueError):
    """Weight file fails to parse or violates the dimension chain."""


@dataclass
class GcnWeights:
    channel_dims: list[int]  # C_0 .. C_L
    layers: list[tuple[np.ndarray, np.ndarray]]  # (theta0, theta1) per layer
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.layers) != len(self.channel_dims) - 1:
            raise WeightFormatError(
                f"{len(self.layers)} layers but {len(self.channel_dims)} channel dims"
            )
        for l, (t0, t1) in enumerate(self.layers):
            want = (self.channel_dims[l], self.channel_dims[l + 1])
            for name, t in (("theta0", t0), ("theta1", t1)):
                if t.shape != want:
                    raise WeightFormatError(
                        f"layer {l} {name}: shape {t.shape} breaks the chain, expected {want}"
                    )
                if not np.all(np.isfinite(t)):
                    raise WeightFormatError(f"layer {l} {name}: non-finite entry")

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    @property
    def num_maps(self) -> int:
        return self.channel_dims[-1]


@dataclass
class ProbabilityMaps:
    values: np.ndarray  # shape (m, n), entries strictly inside (0, 1)
    graph_fingerprint: str


def graph_fingerprint(g: Graph) -> str:
    h = hashlib.sha256()
    h.update(f"{g.n};".encode())
    for u, v in g.edges:
        h.update(f"{u},{v};".encode())
    return h.hexdigest()


def normalized_adjacency(g: Graph, sparse: bool | None = None):
    """Gamma^{-1/2} A Gamma^{-1/2}; rows/columns of degree-0 vertices are zero."""
    if sparse is None:
        sparse = g.n > SPARSE_THRESHOLD
    deg = np.array(g.degree, dtype=np.float64)
    inv_sqrt = np.zeros(g.n)
    nz = deg > 0
    inv_sqrt[nz] = 1.0 / np.sqrt(deg[nz])
    if sparse:
        rows, cols, vals = [], [], []
        for u, v in g.edges:
            w = inv_sqrt[u] * inv_sqrt[v]
            rows += [u, v]
            cols += [v, u]
            vals += [w, w]
        return sp.csr_matrix((vals, (rows, cols)), shape=(g.n, g.n))
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        w = inv_sqrt[u] * inv_sqrt[v]
        a[u, v] = w
        a[v, u] = w
    return a


def forward(g: Graph, w: GcnWeights) -> ProbabilityMaps:
    """Deterministic inference: all-ones input, ReLU hidden, sigmoid output."""
    ahat = normalized_adjacency(g)
    h = np.ones((g.n, w.channel_dims[0]))
    last = w.num_layers - 1
    for l, (t0, t1) in enumerate(w.layers):
        z = h @ t0 + ahat @ (h @ t1)
        if l == last:
            h = 1.0 / (1.0 + np.exp(-z))
        else:
            h = np.maximum(z, 0.0)
    return ProbabilityMaps(values=np.ascontiguousarray(h.T), graph_fingerprint=graph_fingerprint(g))


def save_weights(w: GcnWeights, path) -> None:
    doc = {
        "channel_dims": list(w.channel_dims),
        "layers": [
            {"theta0": t0.tolist(), "theta1": t1.tolist()} for t0, t1 in w.layers
        ],
        "metadata": w.metadata,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_weights(path) -> GcnWeights:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise WeightFormatError(f"{path}: parse error at offset {exc.pos}: {exc.msg}") from exc
    for key in ("channel_dims", "layers"):
        if key not in doc:
            raise WeightFormatError(f"{path}: missing field {key!r}")
    layers = []
    for l, entry in enumerate(doc["layers"]):
        try:
            t0 = np.array(entry["theta0"], dtype=np.float64)
            t1 = np.array(entry["theta1"], dtype=np.float64)
        except (KeyError, ValueError) as exc:
            raise WeightFormatError(f"{path}: layer {l}: {exc}") from exc
        if t0.ndim != 2 or t1.ndim != 2:
            raise WeightFormatError(f"{path}: layer {l}: matrices must be 2-D")
        layers.append((t0, t1))
    return GcnWeights(
        channel_dims=list(doc["channel_dims"]),
        layers=layers,
        metadata=doc.get("metadata", {}),
    )


def random_weights(channel_dims: list[int], seed: int, metadata: dict | None = None) -> GcnWeights:
    """Fan-in-scaled uniform initialization (shared with the trainer's scheme)."""
    rng = np.random.default_rng(seed)
    layers = []
    for l in range(len(channel_dims) - 1):
        fan_in = channel_dims[l]
        scale = 1.0 / np.sqrt(fan_in)
        t0 = rng.uniform(-scale, scale, size=(channel_dims[l], channel_dims[l + 1]))
        t1 = rng.uniform(-scale, scale, size=(channel_dims[l], channel_dims[l + 1]))
        layers.append((t0, t1))
    return GcnWeights(channel_dims=list(channel_dims), layers=layers, metadata=metadata or {})
