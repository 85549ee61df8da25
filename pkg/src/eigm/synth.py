"""Synthetic inputs for experiments and verification runs."""

from __future__ import annotations

import numpy as np

from .graphs import Graph
from .probmatrix import ProbMatrix
from .rng import make_rng

__all__ = [
    "random_probmatrix",
    "random_er_graph",
    "random_bounded_degree_graph",
    "powerlaw_configuration_graph",
    "random_connected_graph",
]


def random_probmatrix(n: int, seed: int, scale: float = 1.0) -> ProbMatrix:
    """Symmetric matrix with iid uniform [0, scale] entries, zero diagonal."""
    if not 0.0 < scale <= 1.0:
        raise ValueError("scale must be in (0, 1]")
    rng = make_rng(seed)
    a = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    a[iu] = rng.random(len(iu[0])) * scale
    return ProbMatrix.from_array(a + a.T)


def random_er_graph(n: int, prob: float, seed: int) -> Graph:
    rng = make_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < prob
    return Graph.from_pairs(n, iu[keep], ju[keep])


def random_bounded_degree_graph(n: int, dmax: int, seed: int) -> Graph:
    """Random graph with max degree <= dmax and no isolated nodes.

    Greedy edge insertion under the degree cap, then isolated nodes are
    attached to any node with spare capacity.  Requires n >= 2, dmax >= 1.
    """
    if n < 2 or dmax < 1:
        raise ValueError("need n >= 2 and dmax >= 1")
    rng = make_rng(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    for _ in range(4 * n * dmax):
        u, v = int(rng.integers(n)), int(rng.integers(n))
        if u != v and len(adj[u]) < dmax and len(adj[v]) < dmax and v not in adj[u]:
            adj[u].add(v)
            adj[v].add(u)
    for i in range(n):
        if not adj[i]:
            for j in range(n):
                if j != i and len(adj[j]) < dmax:
                    adj[i].add(j)
                    adj[j].add(i)
                    break
            else:
                raise RuntimeError("no spare capacity to attach isolated node")
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


def powerlaw_configuration_graph(n: int, exponent: float, seed: int) -> Graph:
    """Simple graph from a power-law degree draw via stub matching.

    Degrees are drawn from P(d) proportional to d^-exponent on 1..n-1, the
    stub multigraph is matched uniformly, and multi-edges plus self-loops
    are dropped (configuration-style generation then simplification), so
    the realized degree sequence is graphical by construction.  Nodes left
    isolated by the simplification are kept.
    """
    rng = make_rng(seed)
    ds = np.arange(1, n, dtype=np.float64)
    w = ds ** (-exponent)
    w /= w.sum()
    deg = rng.choice(np.arange(1, n), size=n, p=w)
    if deg.sum() % 2 == 1:
        deg[int(rng.integers(n))] += 1
    stubs = np.repeat(np.arange(n), deg)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    return Graph.from_edges(n, (tuple(e) for e in pairs))


def random_connected_graph(n: int, extra_edge_prob: float, seed: int) -> Graph:
    """Random spanning tree plus iid extra edges; always connected."""
    rng = make_rng(seed)
    edges = set()
    order = rng.permutation(n)
    for k in range(1, n):
        u = int(order[k])
        v = int(order[int(rng.integers(k))])
        edges.add((min(u, v), max(u, v)))
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < extra_edge_prob
    for u, v in zip(iu[keep], ju[keep]):
        edges.add((int(u), int(v)))
    return Graph.from_edges(n, edges)


def clustered_graph(n_cliques: int, clique_size: int, bridge_prob: float, seed: int) -> Graph:
    """Chain of cliques with sparse random bridges: connected, triangle-rich.

    A stand-in for social-network structure in demos and trend tests, where
    uniform random graphs are too triangle-poor to show the overlap trade-off.
    """
    if n_cliques < 1 or clique_size < 2:
        raise ValueError("need n_cliques >= 1 and clique_size >= 2")
    rng = make_rng(seed)
    n = n_cliques * clique_size
    edges = set()
    for c in range(n_cliques):
        base = c * clique_size
        for i in range(clique_size):
            for j in range(i + 1, clique_size):
                edges.add((base + i, base + j))
        if c > 0:  # chain bridge keeps the graph connected
            edges.add(((c - 1) * clique_size, base))
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < bridge_prob
    for u, v in zip(iu[keep], ju[keep]):
        edges.add((int(u), int(v)))
    return Graph.from_edges(n, edges)
