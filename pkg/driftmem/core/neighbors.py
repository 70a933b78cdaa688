"""Exact nearest-neighbor primitives.

Memories hold at most a few thousand points, so every query is a linear scan.
Ties at equal distance go to the older instance: lower arrival index first,
then lower synthetic id.
"""
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from driftmem.core.types import NeighborList
from driftmem.errors import ContractViolation, EmptyMemoryError

if TYPE_CHECKING:
    from driftmem.core.memory import MemoryBuffer


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ContractViolation(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def distances_to(query: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Euclidean distance from one query to every row of ``points``."""
    query = np.asarray(query, dtype=np.float64)
    if points.shape[0] and points.shape[1] != query.shape[0]:
        raise ContractViolation(
            f"dimension mismatch: query has {query.shape[0]} features, memory has {points.shape[1]}"
        )
    return np.sqrt(np.sum((points - query) ** 2, axis=1))


def pairwise_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[1]:
        raise ContractViolation(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]} features")
    return cdist(a, b, metric="euclidean")


def tie_ranks(arrival: np.ndarray, synthetic: np.ndarray) -> np.ndarray:
    """Rank of every position under the (arrival, synthetic id) tie order."""
    order = np.lexsort((synthetic, arrival))
    ranks = np.empty(len(order), dtype=np.int64)
    ranks[order] = np.arange(len(order))
    return ranks


def k_smallest(
    distances: np.ndarray,
    k: int,
    arrival: np.ndarray,
    synthetic: np.ndarray,
    candidates: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Positions of the k smallest distances, ordered by (distance, arrival, synthetic id)."""
    if candidates is None:
        candidates = np.arange(len(distances))
    if len(candidates) == 0:
        return candidates
    k = min(k, len(candidates))
    cand_dist = distances[candidates]
    if k < len(candidates):
        # every candidate tied with the k-th distance survives the cut, ties are settled below
        kth = np.partition(cand_dist, k - 1)[k - 1]
        keep = cand_dist <= kth
        candidates = candidates[keep]
        cand_dist = cand_dist[keep]
    order = np.lexsort((synthetic[candidates], arrival[candidates], cand_dist))
    return candidates[order[:k]]


def knn_search(
    query,
    buffer: "MemoryBuffer",
    k: int,
    exclude: Optional[np.ndarray] = None,
) -> NeighborList:
    """The min(k, |buffer|) nearest instances of ``buffer`` to ``query``.

    ``exclude`` is an optional boolean mask of positions left out of the search.
    """
    if k < 1:
        raise ContractViolation(f"k must be positive, got {k}")
    if len(buffer) == 0:
        raise EmptyMemoryError("knn_search on an empty memory")
    distances = distances_to(query, buffer.features)
    candidates = None
    if exclude is not None:
        candidates = np.flatnonzero(~exclude)
    idx = k_smallest(distances, k, buffer.arrival, buffer.synthetic, candidates)
    return NeighborList(indices=idx, distances=distances[idx])


def knn_search_many(queries, buffer: "MemoryBuffer", k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Row-wise ``knn_search`` for a batch of queries.

    Returns (indices, distances), both of shape (len(queries), min(k, |buffer|)),
    ordered the same way as ``k_smallest``.
    """
    if k < 1:
        raise ContractViolation(f"k must be positive, got {k}")
    if len(buffer) == 0:
        raise EmptyMemoryError("knn_search on an empty memory")
    queries = np.asarray(queries, dtype=np.float64)
    if queries.ndim != 2:
        raise ContractViolation(f"queries must be a 2-d array, got shape {queries.shape}")
    m = len(buffer)
    k = min(k, m)
    if len(queries) == 0:
        return np.empty((0, k), dtype=np.int64), np.empty((0, k))
    distances = pairwise_distances(queries, buffer.features)
    width = m
    if k < m:
        kth = np.partition(distances, k - 1, axis=1)[:, k - 1]
        # every candidate tied with a row's k-th distance stays in the pool
        width = int((distances <= kth[:, None]).sum(axis=1).max())
    if width < m:
        pool = np.argpartition(distances, width - 1, axis=1)[:, :width]
    else:
        pool = np.broadcast_to(np.arange(m), distances.shape)
    pool_dist = np.take_along_axis(distances, pool, axis=1)
    ranks = tie_ranks(buffer.arrival, buffer.synthetic)[pool]
    order = np.lexsort((ranks, pool_dist), axis=-1)[:, :k]
    indices = np.take_along_axis(pool, order, axis=1)
    return indices, np.take_along_axis(distances, indices, axis=1)
