"""Contact-network construction and characterization.

Course enrollment networks (CENs) are Watts-Strogatz small-world graphs
calibrated to published network statistics; student interaction networks
(SINs) add probabilistic floor / dorm / campus edges on top of a cohort
assignment whose inter-cohort class edges have been removed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import EDGE_TAGS, Graph

_CODE_CLASS = EDGE_TAGS.index("class")
_CODE_FLOOR = EDGE_TAGS.index("floor")
_CODE_DORM = EDGE_TAGS.index("dorm")
_CODE_CAMPUS = EDGE_TAGS.index("campus")


@dataclass(frozen=True)
class CenConfig:
    """Watts-Strogatz generator parameters for a course enrollment network."""

    node_count: int
    ring_degree_k: int
    rewire_probability: float
    seed: int = 0

    def validate(self) -> None:
        if self.node_count < 1:
            raise ValueError("node_count must be positive")
        k = self.ring_degree_k
        if k < 1 or k % 2 != 0:
            raise ValueError(f"ring_degree_k must be even and positive, got {k}")
        if k >= self.node_count:
            raise ValueError("ring_degree_k must be smaller than node_count")
        if not 0.0 <= self.rewire_probability <= 1.0:
            raise ValueError("rewire_probability must be in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class SinConfig:
    """Edge rates for augmenting a separated network into a SIN.

    Cohorts ``f * d .. f * d + f - 1`` are the ``f`` floors of dorm ``d``
    (for two floors per dorm: cohorts ``2i`` and ``2i + 1`` form dorm ``i``).
    """

    dorm_count: int
    floors_per_dorm: int
    p_floor: float
    p_dorm: float
    p_campus: float
    seed: int = 0

    def validate(self) -> None:
        if self.dorm_count < 1 or self.floors_per_dorm < 1:
            raise ValueError("dorm_count and floors_per_dorm must be positive")
        for name in ("p_floor", "p_dorm", "p_campus"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class NetworkStats:
    density: float
    clustering_coefficient: float
    mean_geodesic_distance: float  # NaN when no connected ordered pair exists
    avg_degree: float
    disconnected_pairs: int  # ordered non-self pairs with no connecting path


def ring_clustering(k: int) -> float:
    """Local clustering coefficient of the unrewired ring lattice."""
    return 3.0 * (k - 2) / (4.0 * (k - 1))


def calibrate_cen(node_count: int, target_density: float,
                  target_clustering: float, seed: int = 0) -> CenConfig:
    """Pick Watts-Strogatz parameters matching a density and clustering target.

    The ring degree is the even integer nearest ``density * (n - 1)`` (which
    pins the density exactly, since rewiring preserves the edge count), and
    the rewire probability solves ``ring_clustering(k) * (1 - p)^3 = target``.
    """
    if not 0.0 < target_density < 1.0:
        raise ValueError("target_density must be in (0, 1)")
    k = 2 * round(target_density * (node_count - 1) / 2)
    if k < 2:
        raise ValueError("target_density too small for a ring lattice")
    if k >= node_count:
        raise ValueError("target_density too large for node_count")
    c0 = ring_clustering(k)
    if not 0.0 < target_clustering <= c0:
        raise ValueError(
            f"target_clustering must be in (0, {c0:.4f}] for k={k}")
    p = 1.0 - (target_clustering / c0) ** (1.0 / 3.0)
    return CenConfig(node_count, k, p, seed)


def generate_cen(config: CenConfig) -> Graph:
    """Generate a Watts-Strogatz small-world graph; all edges tagged `class`.

    Starts from a ring lattice where each node is adjacent to the
    ``k / 2`` nearest nodes on either side, then visits the edges
    offset-by-offset and rewires each with the configured probability to a
    uniformly random non-duplicate target. The edge count ``n * k / 2`` is
    preserved exactly. Deterministic for a fixed seed.
    """
    config.validate()
    n, k = config.node_count, config.ring_degree_k
    half = k // 2
    rng = np.random.default_rng(config.seed)

    # rows: one block of n edges per offset 1..k/2, edge (i, i+j mod n)
    base = np.arange(n, dtype=np.int64)
    edges = np.empty((half * n, 2), dtype=np.int64)
    for j in range(1, half + 1):
        edges[(j - 1) * n:j * n, 0] = base
        edges[(j - 1) * n:j * n, 1] = (base + j) % n

    rewire = rng.random(half * n) < config.rewire_probability
    if rewire.any():
        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        adjacency = set(zip(lo.tolist(), hi.tolist()))
        degree = np.full(n, k, dtype=np.int64)
        for row in np.flatnonzero(rewire):
            u, v = int(edges[row, 0]), int(edges[row, 1])
            if degree[u] >= n - 1:
                continue
            while True:
                w = int(rng.integers(0, n))
                if w != u and (min(u, w), max(u, w)) not in adjacency:
                    break
            adjacency.discard((min(u, v), max(u, v)))
            adjacency.add((min(u, w), max(u, w)))
            degree[v] -= 1
            degree[w] += 1
            edges[row, 1] = w

    tags = np.full(half * n, _CODE_CLASS, dtype=np.uint8)
    return Graph(n, edges[:, 0], edges[:, 1], tags, validate=False)


def network_stats(g: Graph) -> NetworkStats:
    """Density, mean local clustering, mean geodesic distance, mean degree.

    Clustering averages the local coefficient over all nodes, with nodes of
    degree < 2 contributing 0. The geodesic mean runs over all connected
    ordered node pairs; with no such pair it is NaN and every non-self pair
    counts as disconnected.
    """
    n = g.node_count
    m = g.edge_count
    density = 2.0 * m / (n * (n - 1)) if n >= 2 else 0.0
    avg_degree = 2.0 * m / n

    indptr, indices = g.csr
    tri = _kernels.triangle_counts(indptr, indices, n)
    deg = g.degrees
    eligible = deg >= 2
    local = np.zeros(n, dtype=np.float64)
    local[eligible] = (2.0 * tri[eligible]
                       / (deg[eligible] * (deg[eligible] - 1.0)))
    clustering = float(local.mean())

    total, pairs = _kernels.geodesic_sums(indptr, indices, n)
    if pairs > 0:
        mean_geo = total / pairs
    else:
        mean_geo = float("nan")
    disconnected = n * (n - 1) - int(pairs)
    return NetworkStats(density, clustering, mean_geo, avg_degree,
                        disconnected)


def augment_sin(g: Graph, assignment, config: SinConfig) -> Graph:
    """Add floor / dorm / campus edges to a cohort-separated network.

    Every unordered non-adjacent node pair receives an independent Bernoulli
    draw: same cohort -> ``p_floor``, different cohorts of the same dorm ->
    ``p_dorm``, different dorms -> ``p_campus``. Existing edges are kept
    untouched. Deterministic for a fixed seed (pairs are visited in
    lexicographic order).
    """
    config.validate()
    n = g.node_count
    cohort_of = np.asarray(assignment.cohort_of, dtype=np.int64)
    if cohort_of.shape[0] != n:
        raise ValueError("assignment does not cover all nodes")
    if config.dorm_count * config.floors_per_dorm != assignment.cohort_count:
        raise ValueError(
            f"dorm_count * floors_per_dorm = "
            f"{config.dorm_count * config.floors_per_dorm} does not match "
            f"cohort count {assignment.cohort_count}")
    cross = cohort_of[g.edges_u] != cohort_of[g.edges_v]
    if cross.any():
        raise ValueError("graph still has inter-cohort edges; apply cohort "
                         "separation before augmenting")

    adjacent = np.zeros((n, n), dtype=bool)
    adjacent[g.edges_u, g.edges_v] = True
    adjacent[g.edges_v, g.edges_u] = True
    dorm_of = cohort_of // config.floors_per_dorm

    rng = np.random.default_rng(config.seed)
    new_u, new_v, new_t = [], [], []
    for i in range(n - 1):
        js = np.arange(i + 1, n)
        draws = rng.random(js.shape[0])
        same_cohort = cohort_of[js] == cohort_of[i]
        same_dorm = dorm_of[js] == dorm_of[i]
        p = np.where(same_cohort, config.p_floor,
                     np.where(same_dorm, config.p_dorm, config.p_campus))
        tag = np.where(same_cohort, _CODE_FLOOR,
                       np.where(same_dorm, _CODE_DORM, _CODE_CAMPUS))
        add = (draws < p) & ~adjacent[i, i + 1:]
        if add.any():
            new_u.append(np.full(int(add.sum()), i, dtype=np.int64))
            new_v.append(js[add])
            new_t.append(tag[add].astype(np.uint8))

    if not new_u:
        return Graph(n, g.edges_u, g.edges_v, g.tags, validate=False)
    edges_u = np.concatenate([g.edges_u, *new_u])
    edges_v = np.concatenate([g.edges_v, *new_v])
    tags = np.concatenate([g.tags, *new_t])
    return Graph(n, edges_u, edges_v, tags, validate=False)
