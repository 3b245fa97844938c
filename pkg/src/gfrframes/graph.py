"""Undirected weighted graphs, synthetic generators, Laplacians and test signals.

Vertices are indexed from 0 in the Python API. Graph files use 1-based
indices (see :func:`gfrframes.io.write_graph`).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .exceptions import DegenerateDegreeError, GraphError

GRAPH_KINDS = ("path", "ring", "random_ring", "sphere", "community", "swiss_roll")
_GRAPH_PARAMS = {"path": (), "ring": (), "random_ring": ("n_chords",), "sphere": ("knn",),
                 "swiss_roll": ("knn",), "community": ("n_clusters", "p_in", "p_out")}
SIGNAL_KINDS = ("f7_sine", "f8_piecewise", "f9_chirp", "eigvec_combination", "custom")


@dataclass(frozen=True)
class Graph:
    """Undirected graph with strictly positive edge weights.

    ``edges`` holds ``(i, j, w)`` triples with ``0 <= i < j < n``, sorted and
    without duplicates.
    """

    n: int
    edges: tuple
    name: str = field(default="graph", compare=False)

    def __post_init__(self):
        if int(self.n) < 1:
            raise GraphError(f"graph needs at least one vertex, got n={self.n}")
        seen = set()
        clean = []
        for e in self.edges:
            i, j, w = int(e[0]), int(e[1]), float(e[2])
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if i > j:
                i, j = j, i
            if not (0 <= i and j < self.n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={self.n}")
            if not (w > 0 and np.isfinite(w)):
                raise GraphError(f"edge ({i}, {j}) has non-positive weight {w}")
            if (i, j) in seen:
                raise GraphError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            clean.append((i, j, w))
        clean.sort()
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(clean))

    @cached_property
    def adjacency(self) -> np.ndarray:
        W = np.zeros((self.n, self.n))
        if self.edges:
            e = np.array(self.edges)
            i = e[:, 0].astype(int)
            j = e[:, 1].astype(int)
            W[i, j] = e[:, 2]
            W[j, i] = e[:, 2]
        W.flags.writeable = False
        return W

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1)
        d.flags.writeable = False
        return d

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def digest(self) -> str:
        """Short content hash, stable across runs and platforms."""
        h = hashlib.sha256(str(self.n).encode())
        for i, j, w in self.edges:
            h.update(f";{i},{j},{w:.17g}".encode())
        return h.hexdigest()[:16]

    def is_connected(self) -> bool:
        return _n_components(self.adjacency)[0] == 1


def build_laplacian(graph: Graph, normalized: bool = False) -> np.ndarray:
    """Graph Laplacian ``D - W``, or ``D^{-1/2} (D - W) D^{-1/2}`` if normalized."""
    W = graph.adjacency
    d = graph.degrees
    L = np.diag(d) - W
    if not normalized:
        return L
    if np.any(d <= 0):
        isolated = np.flatnonzero(d <= 0).tolist()
        raise DegenerateDegreeError(f"isolated vertices {isolated}; normalized Laplacian undefined")
    s = 1.0 / np.sqrt(d)
    Ln = s[:, None] * L * s[None, :]
    # exact symmetry regardless of rounding in the scaling
    return 0.5 * (Ln + Ln.T)


def _n_components(W):
    return connected_components(csr_matrix(W != 0), directed=False)


def _connect(n, edges, weight):
    """Join components by a deterministic chain between their smallest vertices."""
    W = np.zeros((n, n))
    for i, j, _ in edges:
        W[i, j] = W[j, i] = 1.0
    k, labels = _n_components(W)
    if k == 1:
        return edges
    reps = sorted(int(np.flatnonzero(labels == c)[0]) for c in range(k))
    return list(edges) + [(reps[t], reps[t + 1], weight) for t in range(k - 1)]


def _knn_edges(points, k):
    n = len(points)
    k = min(k, n - 1)
    dist, idx = cKDTree(points).query(points, k=k + 1)
    dist, idx = dist[:, 1:], idx[:, 1:]
    sigma = np.mean(dist)
    if sigma == 0:
        sigma = 1.0
    best = {}
    for a in range(n):
        for d, b in zip(dist[a], idx[a]):
            i, j = (a, int(b)) if a < b else (int(b), a)
            if i != j:
                best[(i, j)] = float(np.exp(-(d / sigma) ** 2))
    # kernel weights underflowing to zero would break positivity
    return [(i, j, max(w, 1e-300)) for (i, j), w in sorted(best.items())]


def _ring_edges(n):
    return [(i, i + 1, 1.0) for i in range(n - 1)] + [(0, n - 1, 1.0)]


def generate_graph(kind: str, n: int, seed: int | None = None, **params) -> Graph:
    """Build a connected synthetic graph.

    Parameters
    ----------
    kind : {"path", "ring", "random_ring", "sphere", "community", "swiss_roll"}
    n : int
        Number of vertices.
    seed : int, optional
        Required for the randomized kinds.
    **params
        ``n_chords`` (random_ring), ``knn`` (sphere, swiss_roll; default 6),
        ``n_clusters``, ``p_in``, ``p_out`` (community).

    Disconnected random draws are repaired by chaining the smallest vertex of
    each component to the next one.
    """
    if kind not in GRAPH_KINDS:
        raise GraphError(f"unsupported graph kind {kind!r}; choose from {GRAPH_KINDS}")
    unknown = sorted(set(params) - set(_GRAPH_PARAMS[kind]))
    if unknown:
        raise GraphError(f"unknown parameter(s) {unknown} for {kind}; allowed: {list(_GRAPH_PARAMS[kind])}")
    n = int(n)
    min_n = 3 if kind in ("ring", "random_ring", "community", "sphere", "swiss_roll") else 2
    if n < min_n:
        raise GraphError(f"{kind} graph needs n >= {min_n}, got {n}")
    if kind in ("path", "ring"):
        edges = [(i, i + 1, 1.0) for i in range(n - 1)] if kind == "path" else _ring_edges(n)
        return Graph(n, tuple(edges), name=f"{kind}{n}")

    if seed is None:
        raise GraphError(f"{kind} graph requires a seed")
    rng = np.random.default_rng(seed)

    if kind == "random_ring":
        edges = {(min(i, j), max(i, j)): w for i, j, w in _ring_edges(n)}
        n_chords = int(params.get("n_chords", max(1, n // 10)))
        budget = n * (n - 1) // 2 - len(edges)
        n_chords = min(n_chords, budget)
        while n_chords > 0:
            i, j = sorted(int(v) for v in rng.choice(n, size=2, replace=False))
            if (i, j) in edges:
                continue
            edges[(i, j)] = float(1.0 - rng.random())  # uniform on (0, 1]
            n_chords -= 1
        edges = [(i, j, w) for (i, j), w in sorted(edges.items())]

    elif kind == "sphere":
        x = rng.normal(size=(n, 3))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        edges = _knn_edges(x, int(params.get("knn", 6)))

    elif kind == "swiss_roll":
        t = 1.5 * np.pi * (1.0 + 2.0 * rng.random(n))
        h = 21.0 * rng.random(n)
        x = np.column_stack([t * np.cos(t), h, t * np.sin(t)])
        edges = _knn_edges(x, int(params.get("knn", 6)))

    else:  # community
        n_clusters = int(params.get("n_clusters", 3))
        if not 1 <= n_clusters <= n:
            raise GraphError(f"n_clusters must be in [1, {n}], got {n_clusters}")
        p_in = float(params.get("p_in", 0.5))
        p_out = float(params.get("p_out", 0.02))
        labels = np.repeat(np.arange(n_clusters), np.diff(np.linspace(0, n, n_clusters + 1).round().astype(int)))
        iu, ju = np.triu_indices(n, k=1)
        p = np.where(labels[iu] == labels[ju], p_in, p_out)
        keep = rng.random(len(iu)) < p
        edges = [(int(i), int(j), 1.0) for i, j in zip(iu[keep], ju[keep])]

    weight = float(np.mean([w for _, _, w in edges])) if edges else 1.0
    edges = _connect(n, edges, weight)
    return Graph(n, tuple(edges), name=f"{kind}{n}")


def generate_signal(kind: str, n: int, basis=None, indices=(), values=None) -> np.ndarray:
    """Closed-form test signals, evaluated at vertices ``1..n``.

    ``f8_piecewise`` keeps its breakpoints (90 and 170 for ``n = 300``) in
    proportion to ``n``. ``eigvec_combination`` returns the real part of the
    sum of the fractional basis columns listed in ``indices``.
    """
    if kind not in SIGNAL_KINDS:
        raise GraphError(f"unsupported signal kind {kind!r}; choose from {SIGNAL_KINDS}")
    m = np.arange(1, n + 1, dtype=float)
    if kind == "f7_sine":
        return np.sin(110 * np.pi * m / n)
    if kind == "f8_piecewise":
        b1, b2 = round(90 * n / 300), round(170 * n / 300)
        freq = np.where(m <= b1, 160.0, np.where(m <= b2, 70.0, 200.0))
        return np.sin(freq * np.pi * m / n)
    if kind == "f9_chirp":
        return np.sin((30 * m + m**2 / 5) * np.pi / n)
    if kind == "eigvec_combination":
        if basis is None:
            raise GraphError("eigvec_combination needs a FractionalBasis")
        gamma = basis.gamma
        if gamma.shape[0] != n:
            raise GraphError(f"basis has N={gamma.shape[0]}, signal asked for {n}")
        idx = [int(k) for k in indices]
        bad = [k for k in idx if not 0 <= k < n]
        if bad or not idx:
            raise GraphError(f"eigenvector indices out of range [0, {n}): {bad or 'none given'}")
        return np.real(gamma[:, idx].sum(axis=1))
    v = np.asarray(values)
    if v.shape != (n,):
        raise GraphError(f"custom signal must have length {n}, got shape {v.shape}")
    return v.copy()
