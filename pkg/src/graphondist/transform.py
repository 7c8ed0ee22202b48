"""Histogram transform of a graph and the graphon-based graph distance.

Every graph, regardless of size, is mapped to a common n0 x n0 block-density
matrix: sort nodes by degree, partition the first n0*h sorted nodes into
blocks of h = floor(n/n0), and average the adjacency over each block pair.
The distance between two graphs is the scaled Frobenius distance between
their histograms, which estimates the L2 distance between the generating
graphons (up to degree-sorted rearrangement).
"""

import math

import numpy as np

from .graphons import Graph

__all__ = [
    "degree_sort",
    "histogram",
    "graph_distance",
    "default_n0",
    "log_moments",
    "UNDEFINED_MOMENT",
]

UNDEFINED_MOMENT = -np.inf


def degree_sort(G: Graph) -> np.ndarray:
    """Permutation of node indices with non-decreasing degree.

    Ties are broken by original node index (stable sort), so the result is
    deterministic for any input.
    """
    return np.argsort(G.degrees(), kind="stable")


def _histogram_from_adjacency(adj: np.ndarray, n0: int) -> np.ndarray:
    n = adj.shape[0]
    if n0 < 1:
        raise ValueError(f"block count must be >= 1, got {n0}")
    if n0 > n:
        raise ValueError(f"block count n0={n0} exceeds node count n={n}")
    order = np.argsort(adj.sum(axis=1, dtype=np.int64), kind="stable")
    h = n // n0
    kept = order[: n0 * h]
    sub = adj[np.ix_(kept, kept)]
    blocks = sub.reshape(n0, h, n0, h).sum(axis=(1, 3), dtype=np.int64)
    return blocks / float(h * h)


def histogram(G: Graph, n0: int) -> np.ndarray:
    """n0 x n0 block-density matrix of the degree-sorted adjacency.

    Blocks have side h = floor(n/n0); the n - n0*h highest-degree nodes are
    discarded so every block is an exact h x h mean.  The result is symmetric
    with entries in [0, 1].
    """
    return _histogram_from_adjacency(G.adjacency, n0)


def graph_distance(G1: Graph, G2: Graph, n0: int) -> float:
    """Graph distance (1/n0) * ||histogram(G1) - histogram(G2)||_F."""
    a1 = histogram(G1, n0)
    a2 = histogram(G2, n0)
    return float(np.linalg.norm(a1 - a2) / n0)


def default_n0(n: int) -> int:
    """Default histogram size floor(sqrt(n / log10(n))) for smallest graph size n."""
    if n < 3:
        raise ValueError(f"default_n0 requires n >= 3, got {n}")
    return max(1, int(math.floor(math.sqrt(n / math.log10(n)))))


def log_moments(G: Graph, J: int = 8) -> np.ndarray:
    """Log spectral moments log(trace((A/n)^i)) for i = 1..J.

    Components whose trace is not strictly positive (i = 1 always, odd i for
    bipartite graphs, every i for the empty graph) are returned as the
    explicit UNDEFINED_MOMENT sentinel (-inf), never as NaN.
    """
    if J < 1:
        raise ValueError(f"moment count must be >= 1, got {J}")
    lam = np.linalg.eigvalsh(G.adjacency / float(G.n))
    out = np.full(J, UNDEFINED_MOMENT)
    abs_lam = np.abs(lam)
    for i in range(1, J + 1):
        trace = float(np.sum(lam**i))
        # guard against float residue of an exactly-zero trace
        if trace > 1e-12 * max(float(np.sum(abs_lam**i)), 1e-300):
            out[i - 1] = math.log(trace)
    return out
