"""Borderline-SMOTE-1 over the remaining set released on drift.

Neighborhoods are searched inside the set itself. The minority class is the
smaller class of that set, since the roles can invert on dynamic streams.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from driftmem.core.memory import MemoryBuffer
from driftmem.core.neighbors import distances_to, k_smallest
from driftmem.core.types import Label
from driftmem.schemas.models import SmoteConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinorityPartition:
    """Positions (into the sampled buffer) of minority instances by category."""

    minority: Label
    safe: np.ndarray
    danger: np.ndarray
    noise: np.ndarray


def minority_label(buffer: MemoryBuffer) -> Label:
    return Label.POSITIVE if buffer.count_pos <= buffer.count_neg else Label.NEGATIVE


def classify_minority(
    delta: MemoryBuffer, m_danger: int = 5, minority: Optional[Label] = None
) -> MinorityPartition:
    """Noise: all m neighbors majority. Danger: m/2 <= majority neighbors < m. Safe: otherwise.

    m is ``m_danger`` capped at |delta| - 1.
    """
    if minority is None:
        minority = minority_label(delta)
    positions = np.flatnonzero(delta.mask_of(minority))
    m_eff = min(m_danger, len(delta) - 1)
    if m_eff < 1:
        return MinorityPartition(minority, positions, _empty(), _empty())

    safe, danger, noise = [], [], []
    others = np.arange(len(delta))
    for pos in positions:
        distances = distances_to(delta.features[pos], delta.features)
        idx = k_smallest(distances, m_eff, delta.arrival, delta.synthetic, others[others != pos])
        n_majority = int(np.count_nonzero(delta.labels[idx] != int(minority)))
        if n_majority == m_eff:
            noise.append(pos)
        elif n_majority >= m_eff / 2.0:
            danger.append(pos)
        else:
            safe.append(pos)
    return MinorityPartition(minority, np.array(safe, dtype=np.int64), np.array(danger, dtype=np.int64), np.array(noise, dtype=np.int64))


def borderline_smote(
    delta: MemoryBuffer,
    config: Optional[SmoteConfig] = None,
    rng: Optional[np.random.Generator] = None,
    id_start: int = 1,
) -> MemoryBuffer:
    """Return delta plus synthetic minority instances so both classes have equal counts.

    Synthetic instances get arrival indices after every real one in delta and
    synthetic ids counting up from ``id_start``.
    """
    config = config or SmoteConfig()
    if rng is None:
        rng = np.random.default_rng(config.seed)
    out = delta.copy()
    out.max_size = None
    if len(delta) == 0:
        return out

    minority = minority_label(delta)
    n_min = delta.count_of(minority)
    n_needed = delta.count_of(minority.flipped) - n_min
    if n_needed <= 0:
        return out
    if n_min == 0:
        logger.warning("oversampling skipped: remaining set holds no %s instances", minority.name)
        return out

    partition = classify_minority(delta, config.m_danger, minority)
    minority_positions = np.flatnonzero(delta.mask_of(minority))
    anchors = partition.danger
    if len(anchors) == 0:
        logger.debug("no danger instances among %d minority instances, falling back to SMOTE", n_min)
        anchors = minority_positions
    neighbor_cache = {}
    synthetic_rows = np.empty((n_needed, delta.dim), dtype=np.float64)
    for j in range(n_needed):
        p = int(anchors[rng.integers(len(anchors))])
        if p not in neighbor_cache:
            distances = distances_to(delta.features[p], delta.features)
            neighbor_cache[p] = k_smallest(
                distances,
                config.k_interp,
                delta.arrival,
                delta.synthetic,
                minority_positions[minority_positions != p],
            )
        neighbors = neighbor_cache[p]
        # a lone minority instance interpolates with itself
        q = int(neighbors[rng.integers(len(neighbors))]) if len(neighbors) else p
        u = rng.random()
        synthetic_rows[j] = delta.features[p] + u * (delta.features[q] - delta.features[p])

    first_arrival = int(delta.arrival.max()) + 1
    out.extend(
        MemoryBuffer.from_arrays(
            synthetic_rows,
            np.full(n_needed, int(minority), dtype=np.int8),
            first_arrival + np.arange(n_needed),
            id_start + np.arange(n_needed),
        )
    )
    logger.debug(
        "oversampled remaining set: %d real, %d synthetic %s", len(delta), n_needed, minority.name
    )
    return out


def _empty() -> np.ndarray:
    return np.empty(0, dtype=np.int64)
