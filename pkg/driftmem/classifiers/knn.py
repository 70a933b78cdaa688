import numpy as np

from driftmem.core.memory import MemoryBuffer
from driftmem.core.neighbors import knn_search, knn_search_many
from driftmem.core.types import Label
from driftmem.errors import EmptyMemoryError

EPSILON_DIST = 1e-12


def weighted_vote(labels: np.ndarray, distances: np.ndarray, epsilon_dist: float = EPSILON_DIST) -> Label:
    """Inverse-distance vote; a tie goes to the minority (Positive) class."""
    weights = 1.0 / np.maximum(distances, epsilon_dist)
    pos = float(np.sum(weights[labels == int(Label.POSITIVE)]))
    neg = float(np.sum(weights[labels == int(Label.NEGATIVE)]))
    return Label.POSITIVE if pos >= neg else Label.NEGATIVE


def knn_predict(memory: MemoryBuffer, x, k: int, epsilon_dist: float = EPSILON_DIST) -> Label:
    if len(memory) == 0:
        raise EmptyMemoryError("knn_predict on an empty memory")
    neighbors = knn_search(x, memory, k)
    return weighted_vote(memory.labels[neighbors.indices], neighbors.distances, epsilon_dist)


def knn_predict_many(memory: MemoryBuffer, queries: np.ndarray, k: int, epsilon_dist: float = EPSILON_DIST) -> np.ndarray:
    """Labels (as ints) for every row of ``queries``; same rule as knn_predict."""
    if len(memory) == 0:
        raise EmptyMemoryError("knn_predict on an empty memory")
    queries = np.asarray(queries, dtype=np.float64)
    if len(queries) == 0:
        return np.empty(0, dtype=np.int8)
    indices, distances = knn_search_many(queries, memory, k)
    weights = 1.0 / np.maximum(distances, epsilon_dist)
    labels = memory.labels[indices]
    pos = np.where(labels == int(Label.POSITIVE), weights, 0.0).sum(axis=1)
    neg = np.where(labels == int(Label.NEGATIVE), weights, 0.0).sum(axis=1)
    return np.where(pos >= neg, int(Label.POSITIVE), int(Label.NEGATIVE)).astype(np.int8)
