"""Set operations between memories: cleaning, exchange, compression, noise removal.

All instance sets are returned as positions into the buffer they were taken from.
"""
import logging
import math
import warnings
from typing import Optional, Tuple

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from driftmem.classifiers.knn import EPSILON_DIST, knn_predict_many
from driftmem.core.memory import MemoryBuffer
from driftmem.core.neighbors import knn_search
from driftmem.core.types import Label, LabeledInstance

logger = logging.getLogger(__name__)


def distance_threshold(stm: MemoryBuffer, anchor_position: int, k: int) -> Optional[float]:
    """Largest distance among the anchor's same-label neighbors in STM minus the anchor.

    None when the STM holds fewer than two instances or no same-label instance
    is among the k nearest.
    """
    if len(stm) < 2:
        return None
    exclude = np.zeros(len(stm), dtype=bool)
    exclude[anchor_position] = True
    neighbors = knn_search(stm.features[anchor_position], stm, k, exclude=exclude)
    same = stm.labels[neighbors.indices] == stm.labels[anchor_position]
    if not same.any():
        return None
    return float(neighbors.distances[same].max())


def _neighborhood_filter(
    memory: MemoryBuffer, anchor: LabeledInstance, theta: float, k: int, same_label: bool
) -> np.ndarray:
    if len(memory) == 0:
        return np.empty(0, dtype=np.int64)
    neighbors = knn_search(anchor.features, memory, k)
    labels = memory.labels[neighbors.indices]
    label_ok = labels == int(anchor.label) if same_label else labels != int(anchor.label)
    return neighbors.indices[label_ok & (neighbors.distances <= theta)]


def inconsistent_set_ltm(ltm: MemoryBuffer, anchor: LabeledInstance, theta: float, k: int) -> np.ndarray:
    """LTM instances among the anchor's k nearest, within theta, with a different label."""
    return _neighborhood_filter(ltm, anchor, theta, k, same_label=False)


def consistent_set_wm(wm: MemoryBuffer, anchor: LabeledInstance, theta: float, k: int) -> np.ndarray:
    """WM instances among the anchor's k nearest, within theta, with the anchor's label."""
    return _neighborhood_filter(wm, anchor, theta, k, same_label=True)


def exchange(
    ltm: MemoryBuffer, wm: MemoryBuffer, inconsistent: np.ndarray, consistent: np.ndarray
) -> Tuple[MemoryBuffer, MemoryBuffer]:
    """Swap the inconsistent LTM set and the consistent WM set, in place.

    ltm' = (ltm minus IS) plus CS and wm' = (wm minus CS) plus IS.
    Returns the moved sets (IS, CS) as buffers.
    """
    moved_to_wm = ltm.remove(inconsistent)
    moved_to_ltm = wm.remove(consistent)
    ltm.extend(moved_to_ltm)
    wm.extend(moved_to_wm)
    return moved_to_wm, moved_to_ltm


def compress(
    buffer: MemoryBuffer,
    max_size: Optional[int],
    id_start: int = 1,
    seed: int = 0,
) -> Tuple[MemoryBuffer, int]:
    """Class-wise k-means++ halving when the buffer exceeds ``max_size``.

    Each class with more than one instance is replaced by ceil(count / 2)
    centroids labeled with that class. Centroids take arrival index 0 (oldest)
    and fresh synthetic ids from ``id_start``. Returns the new buffer and the
    number of synthetic ids consumed. Under capacity the input is returned as is.
    """
    if max_size is None or len(buffer) <= max_size:
        return buffer, 0

    kept = []
    centroid_blocks = []
    used = 0
    for label in Label:
        positions = np.flatnonzero(buffer.mask_of(label))
        if len(positions) <= 1:
            kept.append(positions)
            continue
        n_clusters = math.ceil(len(positions) / 2)
        with warnings.catch_warnings():
            # duplicate points can leave fewer distinct clusters than requested
            warnings.simplefilter("ignore", category=ConvergenceWarning)
            clustering = KMeans(n_clusters=n_clusters, init="k-means++", n_init=1, random_state=seed)
            clustering.fit(buffer.features[positions])
        centroid_blocks.append(
            MemoryBuffer.from_arrays(
                clustering.cluster_centers_,
                np.full(n_clusters, int(label), dtype=np.int8),
                np.zeros(n_clusters, dtype=np.int64),
                id_start + used + np.arange(n_clusters),
            )
        )
        used += n_clusters

    out = MemoryBuffer(max_size=buffer.max_size, dim=buffer.dim)
    for block in centroid_blocks:
        out.extend(block)
    singles = np.concatenate(kept) if kept else np.empty(0, dtype=np.int64)
    out.extend(buffer.take(np.sort(singles)))
    logger.debug("compressed memory from %d to %d instances", len(buffer), len(out))
    return out, used


def noise_removal(
    wm: MemoryBuffer, ltm: MemoryBuffer, k: int, epsilon_dist: float = EPSILON_DIST
) -> MemoryBuffer:
    """Remove, in place, WM instances that the LTM kNN already classifies correctly.

    Returns the removed instances. Nothing happens while the LTM is empty.
    """
    if len(wm) == 0 or len(ltm) == 0:
        return MemoryBuffer(dim=wm.dim)
    predicted = knn_predict_many(ltm, wm.features, k, epsilon_dist)
    return wm.remove(np.flatnonzero(predicted == wm.labels))
