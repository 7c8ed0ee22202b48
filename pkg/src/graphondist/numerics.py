"""Numerical kernels for the clustering pipelines: symmetric eigendecomposition
with a deterministic ordering, seeded k-means, Hungarian-matched error rate,
and the Adjusted Rand Index."""

from typing import NamedTuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .graphons import derived_rng

__all__ = ["EigenPairs", "sym_eigen", "kmeans", "hungarian_error", "ari"]


class EigenPairs(NamedTuple):
    eigenvalues: np.ndarray   # sorted by decreasing magnitude
    eigenvectors: np.ndarray  # orthonormal columns, column k pairs with value k


def sym_eigen(M: np.ndarray) -> EigenPairs:
    """Full spectrum of a symmetric matrix, ordered by decreasing |eigenvalue|.

    Ties in magnitude are broken by descending signed value, then ascending
    original index, so the ordering is deterministic.  The input is
    symmetrized by averaging with its transpose.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix contains non-finite entries")
    M = 0.5 * (M + M.T)
    vals, vecs = np.linalg.eigh(M)
    order = np.lexsort((np.arange(len(vals)), -vals, -np.abs(vals)))
    return EigenPairs(vals[order], vecs[:, order])


def _kmeans_pp(points, K, rng):
    m = points.shape[0]
    centers = np.empty((K, points.shape[1]))
    centers[0] = points[rng.integers(m)]
    d2 = np.sum((points - centers[0]) ** 2, axis=1)
    for k in range(1, K):
        total = d2.sum()
        if total <= 0.0:
            idx = int(rng.integers(m))
        else:
            idx = int(rng.choice(m, p=d2 / total))
        centers[k] = points[idx]
        d2 = np.minimum(d2, np.sum((points - centers[k]) ** 2, axis=1))
    return centers


def _lloyd(points, centers, max_iter, rel_tol):
    m, K = points.shape[0], centers.shape[0]
    prev_obj = np.inf
    for _ in range(max_iter):
        d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = d2.argmin(axis=1)
        obj = float(d2[np.arange(m), labels].sum())
        assert obj <= prev_obj + 1e-9 * max(prev_obj, 1.0), "k-means objective increased"
        for k in range(K):
            mask = labels == k
            if mask.any():
                centers[k] = points[mask].mean(axis=0)
            else:
                # reseed an empty cluster at the point farthest from its center
                centers[k] = points[d2.min(axis=1).argmax()]
        if prev_obj - obj <= rel_tol * max(prev_obj, 1e-300):
            break
        prev_obj = obj
    d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    labels = d2.argmin(axis=1)
    return labels, float(d2[np.arange(m), labels].sum())


def kmeans(points: np.ndarray, K: int, seed, restarts: int = 10,
           max_iter: int = 300, rel_tol: float = 1e-9) -> np.ndarray:
    """Seeded k-means on the rows of ``points``: best of ``restarts`` runs.

    Each restart draws its own stream from (seed, restart) and initializes
    with k-means++; the run with the lowest within-cluster sum of squares
    wins.  Deterministic given an int seed.
    """
    points = np.asarray(points, dtype=float)
    m = points.shape[0]
    if K > m:
        raise ValueError(f"cluster count K={K} exceeds point count m={m}")
    best_labels, best_obj = None, np.inf
    for r in range(restarts):
        rng = derived_rng(seed, r) if not isinstance(seed, np.random.Generator) else seed
        centers = _kmeans_pp(points, K, rng)
        labels, obj = _lloyd(points, centers, max_iter, rel_tol)
        if obj < best_obj:
            best_obj, best_labels = obj, labels
    return best_labels


def _confusion(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"label vectors must be 1-D of equal length, got {a.shape} and {b.shape}")
    ka, kb = a.max() + 1, b.max() + 1
    table = np.zeros((ka, kb), dtype=np.int64)
    np.add.at(table, (a, b), 1)
    return table


def hungarian_error(true_labels, pred_labels) -> float:
    """Misclustered fraction after the best matching of predicted to true labels.

    Solves the maximum-agreement assignment on the confusion matrix exactly,
    so the result equals the minimum over all label permutations.
    """
    table = _confusion(true_labels, pred_labels)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return 1.0 - table[rows, cols].sum() / float(len(np.asarray(true_labels)))


def ari(a, b) -> float:
    """Adjusted Rand Index between two partitions (1.0 for identical ones)."""
    table = _confusion(a, b)
    n = table.sum()

    def comb2(x):
        return x * (x - 1) / 2.0

    sum_cells = comb2(table).sum()
    sum_rows = comb2(table.sum(axis=1)).sum()
    sum_cols = comb2(table.sum(axis=0)).sum()
    expected = sum_rows * sum_cols / comb2(n)
    max_index = 0.5 * (sum_rows + sum_cols)
    if max_index == expected:
        return 1.0 if sum_cells == expected else 0.0
    return float((sum_cells - expected) / (max_index - expected))
