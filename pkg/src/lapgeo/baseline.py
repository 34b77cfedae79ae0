"""Shortest-path (Isomap-style) baseline distance estimator.

Connect every pair of samples closer than a radius h_graph with an edge
weighted by their Euclidean distance, then measure all-pairs shortest
paths.  Disconnection is a value (+inf), not an error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import InputError
from .laplacian import squared_distances
from .types import DistanceMatrix, PointCloud


@dataclass(frozen=True)
class NeighborGraph:
    """Undirected proximity graph; adjacency holds Euclidean edge weights.

    Explicit zero entries in the sparse adjacency are real edges between
    coincident points, which is why the matrix is built from index lists
    rather than from a dense mask.
    """

    n: int
    h_graph: float
    adjacency: csr_matrix

    def edge_list(self):
        """Sorted [(i, j, weight)] with i < j, one entry per edge."""
        coo = self.adjacency.tocoo()
        return sorted(
            (int(i), int(j), float(w))
            for i, j, w in zip(coo.row, coo.col, coo.data, strict=True)
            if i < j
        )


def build_neighbor_graph(cloud: PointCloud, h_graph: float) -> NeighborGraph:
    """Edges between all pairs with Euclidean distance strictly below
    h_graph.  A zero radius yields the empty graph: every off-diagonal
    shortest-path entry comes out +inf."""
    if not (h_graph >= 0):
        raise InputError(f"h_graph must be non-negative, got {h_graph}")
    dist = np.sqrt(squared_distances(cloud.points))
    mask = dist < h_graph
    np.fill_diagonal(mask, False)
    rows, cols = np.nonzero(mask)
    adjacency = csr_matrix(
        (dist[rows, cols], (rows, cols)), shape=(cloud.n, cloud.n)
    )
    return NeighborGraph(n=cloud.n, h_graph=h_graph, adjacency=adjacency)


def _min_plus_closure(dist: np.ndarray) -> np.ndarray:
    """Relax d_ij = min(d_ij, d_ik + d_kj) until nothing moves.

    Dijkstra sums each path in its own order, so its output can violate
    the triangle inequality by a few ulps.  At the fixed point of this
    relaxation no entry exceeds any one-stop detour in the delivered
    arithmetic, making the inequality hold with zero slack.  Entries only
    shrink, and by at most those same ulps.
    """
    while True:
        changed = False
        for k in range(dist.shape[0]):
            via = dist[:, k][:, None] + dist[k, :][None, :]
            mask = via < dist
            if mask.any():
                dist[mask] = via[mask]
                changed = True
        if not changed:
            return dist


def shortest_path_distances(graph: NeighborGraph) -> DistanceMatrix:
    """All-pairs shortest-path lengths; +inf marks unreachable pairs."""
    dist = dijkstra(graph.adjacency, directed=False)
    # Dijkstra's output is symmetric up to rounding; make it exact.
    dist = np.minimum(dist, dist.T)
    np.fill_diagonal(dist, 0.0)
    return DistanceMatrix(_min_plus_closure(dist))


def run_baseline(cloud: PointCloud, h_graph: float) -> DistanceMatrix:
    return shortest_path_distances(build_neighbor_graph(cloud, h_graph))
