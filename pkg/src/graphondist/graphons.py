"""Graphon models: evaluation, random-graph sampling, discretization, L2 distance.

A graphon is a symmetric measurable function w: [0,1]^2 -> [0,1] where w(u,v)
is the link probability between nodes with latent positions u and v.  Four
analytic graphons ("W1".."W4") are built in; arbitrary piecewise-constant
graphons are supported through :func:`grid_graphon`.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

logger = logging.getLogger(__name__)

__all__ = [
    "Graphon",
    "Graph",
    "builtin_graphon",
    "grid_graphon",
    "BUILTIN_NAMES",
    "eval_graphon",
    "sample_graph",
    "sample_population",
    "discretize",
    "l2_distance",
    "degree_profile",
    "is_degree_monotone",
    "derived_rng",
]


def _w1(u, v):
    return u * v


def _w2(u, v):
    return np.exp(-np.maximum(u, v) ** 0.75)


def _w3(u, v):
    return np.exp(-0.5 * (np.minimum(u, v) + np.sqrt(u) + np.sqrt(v)))


def _w4(u, v):
    return np.abs(u - v)


_BUILTINS = {"W1": _w1, "W2": _w2, "W3": _w3, "W4": _w4}
BUILTIN_NAMES = tuple(_BUILTINS)


class Graphon:
    """A symmetric link-probability function on [0,1]^2.

    Either one of the built-in analytic forms (kind ``"builtin"``) or a
    piecewise-constant function given by a symmetric grid of cell
    probabilities over a uniform partition of [0,1] (kind ``"grid"``).
    Instances are immutable and safe to share across threads.
    """

    __slots__ = ("kind", "name", "grid", "_fn")

    def __init__(self, kind, name=None, grid=None):
        if kind == "builtin":
            if name not in _BUILTINS:
                raise ValueError(f"unknown builtin graphon {name!r}; expected one of {BUILTIN_NAMES}")
            self._fn = _BUILTINS[name]
        elif kind == "grid":
            grid = np.asarray(grid, dtype=float)
            if grid.ndim != 2 or grid.shape[0] != grid.shape[1] or grid.shape[0] < 1:
                raise ValueError(f"grid must be a square matrix, got shape {grid.shape}")
            if not np.allclose(grid, grid.T, atol=1e-12):
                raise ValueError("grid graphon matrix must be symmetric")
            if grid.min() < 0.0 or grid.max() > 1.0:
                raise ValueError("grid graphon entries must lie in [0, 1]")
            grid = 0.5 * (grid + grid.T)
            self._fn = None
        else:
            raise ValueError(f"unknown graphon kind {kind!r}")
        self.kind = kind
        self.name = name
        self.grid = grid

    def __call__(self, u, v):
        """Evaluate w(u, v) elementwise; u, v broadcast like numpy arrays."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if np.any(u < 0.0) or np.any(u > 1.0) or np.any(v < 0.0) or np.any(v > 1.0):
            raise ValueError("graphon arguments must lie in [0, 1]")
        if self.kind == "builtin":
            return self._fn(u, v)
        # half-open cells [i/g, (i+1)/g), u = 1 mapped into the last cell
        g = self.grid.shape[0]
        iu = np.minimum((u * g).astype(int), g - 1)
        iv = np.minimum((v * g).astype(int), g - 1)
        return self.grid[iu, iv]

    def __repr__(self):
        if self.kind == "builtin":
            return f"Graphon({self.name})"
        return f"Graphon(grid {self.grid.shape[0]}x{self.grid.shape[0]})"


def builtin_graphon(name: str) -> Graphon:
    """Return one of the built-in graphons by identifier "W1".."W4"."""
    return Graphon("builtin", name=name)


def grid_graphon(values) -> Graphon:
    """Piecewise-constant graphon from a symmetric matrix of cell probabilities."""
    return Graphon("grid", grid=values)


def eval_graphon(w: Graphon, u, v):
    """Evaluate ``w(u, v)``; raises ValueError outside the unit square."""
    return w(u, v)


@dataclass(frozen=True)
class Graph:
    """Simple undirected unlabeled graph.

    adjacency is an n x n symmetric 0/1 int8 matrix with zero diagonal.
    """

    adjacency: np.ndarray
    source_id: str | None = None
    n: int = field(init=False)

    def __post_init__(self):
        adj = np.asarray(self.adjacency)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise ValueError("graph must have at least one node")
        vals = np.unique(adj)
        if not np.all(np.isin(vals, (0, 1))):
            raise ValueError("adjacency entries must be 0 or 1")
        if np.any(np.diagonal(adj) != 0):
            raise ValueError("adjacency must have zero diagonal")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        object.__setattr__(self, "adjacency", np.ascontiguousarray(adj, dtype=np.int8))
        object.__setattr__(self, "n", adj.shape[0])

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1, dtype=np.int64)


def derived_rng(seed, *stream) -> np.random.Generator:
    """Independent generator for the stream keyed by (seed, *stream).

    Streams with distinct keys are statistically independent, so populations
    can be sampled in any order (or in parallel) with identical results.
    """
    if isinstance(seed, np.random.Generator):
        if stream:
            raise ValueError("cannot derive a keyed stream from an existing Generator")
        return seed
    keys = [int(seed)] + [int(s) for s in stream]
    return np.random.default_rng(np.random.SeedSequence(keys))


def _sample_adjacency(w: Graphon, n: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.uniform(size=n)
    probs = w(u[:, None], u[None, :])
    draws = rng.uniform(size=(n, n))
    upper = np.triu(draws < probs, k=1)
    adj = upper.astype(np.int8)
    adj += adj.T
    return adj

def sample_graph(w: Graphon, n: int, seed) -> Graph:
    """Sample an exchangeable random graph with n nodes from graphon w.

    Latent positions U_1..U_n are iid Uniform[0,1]; each edge i < j is drawn
    independently with probability w(U_i, U_j).  ``seed`` may be an int or a
    numpy Generator; the result is deterministic given an int seed.
    """
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    rng = seed if isinstance(seed, np.random.Generator) else derived_rng(seed)
    return Graph(_sample_adjacency(w, n, rng))


def sample_population(graphons, per: int, size_range, seed) -> tuple[list[Graph], np.ndarray]:
    """Sample ``per`` graphs from each graphon with sizes uniform in size_range.

    Each graph gets an independent stream derived from (seed, index), so the
    population is reproducible and independent of sampling order.  Returns the
    graphs and the array of true labels (index into ``graphons``).
    """
    lo, hi = int(size_range[0]), int(size_range[1])
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid size range [{lo}, {hi}]")
    graphs = []
    labels = []
    idx = 0
    for gi, w in enumerate(graphons):
        for _ in range(per):
            rng = derived_rng(seed, idx)
            n = int(rng.integers(lo, hi + 1))
            graphs.append(Graph(_sample_adjacency(w, n, rng), source_id=f"g{idx:04d}"))
            labels.append(gi)
            idx += 1
    return graphs, np.asarray(labels)


def discretize(w: Graphon, n0: int, cell_resolution: int = 16) -> np.ndarray:
    """Block-average w over an n0 x n0 uniform partition of the unit square.

    Entry (i, j) is the mean of w over cell [i/n0, (i+1)/n0) x [j/n0, (j+1)/n0),
    computed by a midpoint rule with ``cell_resolution`` points per axis and
    cell.  Exact for grid graphons whose side matches n0.
    """
    if n0 < 1:
        raise ValueError(f"block count must be >= 1, got {n0}")
    r = int(cell_resolution)
    pts = (np.arange(n0 * r) + 0.5) / (n0 * r)
    vals = w(pts[:, None], pts[None, :])
    blocks = vals.reshape(n0, r, n0, r).mean(axis=(1, 3))
    return 0.5 * (blocks + blocks.T)


def l2_distance(w1: Graphon, w2: Graphon, resolution: int = 512) -> float:
    """Midpoint-rule approximation of the L2 distance between two graphons.

    Computes (integral of (w1 - w2)^2 over the unit square)^(1/2) on a
    resolution x resolution midpoint grid.  Exact for pairs of grid graphons
    when ``resolution`` is a common multiple of their sides.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    if w1 is w2:
        return 0.0
    pts = (np.arange(resolution) + 0.5) / resolution
    diff = w1(pts[:, None], pts[None, :]) - w2(pts[:, None], pts[None, :])
    return float(np.sqrt(np.mean(diff * diff)))


def degree_profile(w: Graphon, resolution: int = 64) -> np.ndarray:
    """Discretized degree function: row means of discretize(w, resolution)."""
    return discretize(w, resolution).mean(axis=1)


def is_degree_monotone(w: Graphon, resolution: int = 64, warn: bool = True) -> bool:
    """Whether the discretized degree function is monotone (either direction).

    The histogram transform assumes degrees identify latent positions; a
    non-monotone degree function (e.g. the built-in W4) breaks that premise,
    so the transform then estimates a degree-sorted rearrangement instead of
    the graphon itself.  Non-monotonicity is reported, never enforced.
    """
    g = degree_profile(w, resolution)
    diffs = np.diff(g)
    monotone = bool(np.all(diffs >= -1e-12) or np.all(diffs <= 1e-12))
    if not monotone and warn:
        logger.warning(
            "graphon %r has a non-monotone degree function; the histogram "
            "transform will estimate a degree-sorted rearrangement of it",
            w,
        )
    return monotone
