"""Directed communication topologies and their Laplacian data.

Edge convention: a_ij > 0 means edge (j, i) exists and information flows
from agent j to agent i.  The Laplacian is L_ii = sum_j a_ij, L_ij = -a_ij,
so every row of L sums to zero by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import networkx as nx
import numpy as np


class GenerationError(RuntimeError):
    """Random topology generation exhausted its retry budget."""


@dataclass(frozen=True)
class NetworkBackbone:
    """A directed weighted communication graph with its Laplacian."""

    n: int
    adjacency: np.ndarray
    laplacian: np.ndarray


@dataclass(frozen=True)
class LeftEigenvector:
    """Normalized nonnegative left null vector of the Laplacian."""

    p: np.ndarray


def build_backbone(adjacency) -> NetworkBackbone:
    """Validate an adjacency matrix and derive its Laplacian.

    Rejects non-square matrices, negative weights and self-loops.
    """
    a = np.array(adjacency, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"adjacency must be square, got shape {a.shape}")
    if np.any(a < 0):
        raise ValueError("adjacency weights must be nonnegative")
    if np.any(np.diag(a) != 0):
        raise ValueError("self-loops are not allowed (nonzero diagonal)")
    n = a.shape[0]
    lap = np.diag(a.sum(axis=1)) - a
    return NetworkBackbone(n=n, adjacency=a, laplacian=lap)


def has_spanning_tree(backbone: NetworkBackbone) -> bool:
    """True iff some agent can reach every other along directed edges.

    a_ij > 0 carries information j -> i, so the successors of node j are
    the rows i with a_ij > 0.  Scans every candidate root with a BFS.
    """
    a = backbone.adjacency
    n = backbone.n
    if n == 1:
        return True
    successors = [np.nonzero(a[:, j] > 0)[0] for j in range(n)]
    for root in range(n):
        seen = np.zeros(n, dtype=bool)
        seen[root] = True
        stack = [root]
        while stack:
            j = stack.pop()
            for i in successors[j]:
                if not seen[i]:
                    seen[i] = True
                    stack.append(int(i))
        if seen.all():
            return True
    return False


def left_eigenvector(backbone: NetworkBackbone, null_tol: float = 1e-8) -> LeftEigenvector:
    """The vector p with p^T L = 0, p^T 1 = 1, entries >= 0.

    Unique when the graph has a directed spanning tree (the zero eigenvalue
    of L is then simple).  Extracted from the SVD of L^T; raises ValueError
    when the numerical null space of L^T is not one-dimensional.
    """
    lap = backbone.laplacian
    if backbone.n == 1:
        return LeftEigenvector(p=np.array([1.0]))
    _, s, vh = np.linalg.svd(lap.T)
    smax = s[0] if s[0] > 0 else 1.0
    null_dim = int(np.sum(s <= null_tol * smax))
    if null_dim != 1:
        raise ValueError(
            f"null space of L^T has dimension {null_dim}, expected 1 "
            "(does the graph have a directed spanning tree?)"
        )
    p = vh[-1]
    total = p.sum()
    if total == 0:
        raise ValueError("degenerate left null vector (zero sum)")
    p = p / total
    return LeftEigenvector(p=p)


def _derived_seed(seed: int, attempt: int) -> int:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(attempt,))
    return int(ss.generate_state(1)[0])


def generate_random(model: str, n: int, seed: int, *, rho: float | None = None,
                    m: int | None = None, z: int | None = None,
                    rewire: float = 0.3, max_attempts: int = 1000) -> NetworkBackbone:
    """Random bidirectional topology from a named undirected model.

    model is one of "er" (edge probability rho), "ba" (attachment count m)
    or "ws" (ring degree z plus rewiring probability).  Undirected edges are
    materialized as unit-weight directed edges in both directions; samples
    without a spanning tree are rejected and redrawn with a derived seed.
    Deterministic for a fixed (model, params, seed).
    """
    if n < 2:
        raise ValueError("need at least 2 agents")
    model = model.lower()
    for attempt in range(max_attempts):
        s = _derived_seed(seed, attempt)
        if model == "er":
            if rho is None or not 0 < rho <= 1:
                raise ValueError("er model needs 0 < rho <= 1")
            g = nx.gnp_random_graph(n, rho, seed=s)
        elif model == "ba":
            if m is None or not 1 <= m < n:
                raise ValueError("ba model needs 1 <= m < n")
            g = nx.barabasi_albert_graph(n, m, seed=s)
        elif model == "ws":
            if z is None or z % 2 != 0 or not 0 < z < n:
                raise ValueError("ws model needs even z with 0 < z < n")
            if not 0 <= rewire <= 1:
                raise ValueError("ws rewiring probability must be in [0, 1]")
            g = nx.watts_strogatz_graph(n, z, rewire, seed=s)
        else:
            raise ValueError(f"unknown model {model!r} (expected er, ba or ws)")
        a = np.zeros((n, n))
        for u, v in g.edges():
            a[u, v] = 1.0
            a[v, u] = 1.0
        backbone = build_backbone(a)
        if has_spanning_tree(backbone):
            return backbone
    raise GenerationError(
        f"no connected sample after {max_attempts} attempts "
        f"(model={model}, n={n}, rho={rho}, m={m}, z={z}, rewire={rewire})"
    )


def to_csv(backbone: NetworkBackbone, path) -> None:
    """Write the adjacency row-major, with the agent count on the first line."""
    lines = [str(backbone.n)]
    for row in backbone.adjacency:
        lines.append(",".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def from_csv(path) -> NetworkBackbone:
    text = Path(path).read_text().strip().splitlines()
    n = int(text[0])
    rows = [[float(v) for v in line.split(",")] for line in text[1 : n + 1]]
    a = np.array(rows)
    if a.shape != (n, n):
        raise ValueError(f"expected {n}x{n} adjacency, got shape {a.shape}")
    return build_backbone(a)


def to_json(backbone: NetworkBackbone, path) -> None:
    """Write {"n": ..., "edges": [[j, i, w], ...]} with a_ij = w for edge (j, i)."""
    edges = []
    for i in range(backbone.n):
        for j in range(backbone.n):
            w = backbone.adjacency[i, j]
            if w > 0:
                edges.append([j, i, float(w)])
    Path(path).write_text(json.dumps({"n": backbone.n, "edges": edges}, indent=1))


def from_json(path) -> NetworkBackbone:
    data = json.loads(Path(path).read_text())
    n = int(data["n"])
    a = np.zeros((n, n))
    for j, i, w in data["edges"]:
        a[int(i), int(j)] = float(w)
    return build_backbone(a)
