from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from driftmem.core.types import Label, LabeledInstance
from driftmem.errors import ContractViolation


class MemoryBuffer:
    """Insertion-ordered multiset of labeled instances with per-class counts.

    Backs the STM, LTM and WM. Storage is columnar (one feature matrix plus
    label / arrival / synthetic-id vectors) so neighbor queries run on arrays.
    Position 0 is the oldest insertion.
    """

    def __init__(
        self,
        instances: Iterable[LabeledInstance] = (),
        max_size: Optional[int] = None,
        dim: Optional[int] = None,
    ):
        if max_size is not None and max_size < 1:
            raise ContractViolation(f"max_size must be positive, got {max_size}")
        self.max_size = max_size
        self._dim = dim
        self._features = np.empty((0, dim or 0), dtype=np.float64)
        self._labels = np.empty(0, dtype=np.int8)
        self._arrival = np.empty(0, dtype=np.int64)
        self._synthetic = np.empty(0, dtype=np.int64)
        self.count_pos = 0
        self.count_neg = 0
        instances = list(instances)
        if instances:
            self._append_arrays(*_columns(instances))

    @classmethod
    def from_arrays(
        cls,
        features: np.ndarray,
        labels: np.ndarray,
        arrival: np.ndarray,
        synthetic: Optional[np.ndarray] = None,
        max_size: Optional[int] = None,
    ) -> "MemoryBuffer":
        features = np.asarray(features, dtype=np.float64)
        dim = features.shape[1] if features.ndim == 2 and features.shape[1] else None
        buf = cls(max_size=max_size, dim=dim)
        if len(features):
            if synthetic is None:
                synthetic = np.zeros(len(features), dtype=np.int64)
            buf._append_arrays(features, np.asarray(labels), np.asarray(arrival), np.asarray(synthetic))
        return buf

    # read access

    @property
    def dim(self) -> Optional[int]:
        return self._dim

    @property
    def features(self) -> np.ndarray:
        return self._features

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def arrival(self) -> np.ndarray:
        return self._arrival

    @property
    def synthetic(self) -> np.ndarray:
        return self._synthetic

    def __len__(self) -> int:
        return len(self._labels)

    def __getitem__(self, position: int) -> LabeledInstance:
        return LabeledInstance(
            features=self._features[position],
            label=Label(int(self._labels[position])),
            arrival_index=int(self._arrival[position]),
            synthetic_id=int(self._synthetic[position]),
        )

    def __iter__(self) -> Iterator[LabeledInstance]:
        for i in range(len(self)):
            yield self[i]

    def keys(self) -> List[Tuple[int, int]]:
        return list(zip(self._arrival.tolist(), self._synthetic.tolist()))

    def count_of(self, label: Label) -> int:
        return self.count_pos if label is Label.POSITIVE else self.count_neg

    @property
    def is_over_capacity(self) -> bool:
        return self.max_size is not None and len(self) > self.max_size

    def mask_of(self, label: Label) -> np.ndarray:
        return self._labels == int(label)

    # mutation

    def append(self, instance: LabeledInstance) -> None:
        self._append_arrays(*_columns([instance]))

    def extend(self, other: "MemoryBuffer") -> None:
        if len(other):
            self._append_arrays(other._features, other._labels, other._arrival, other._synthetic)

    def take(self, positions) -> "MemoryBuffer":
        """A new buffer holding the given positions, in the given order."""
        positions = np.asarray(positions, dtype=np.int64)
        return MemoryBuffer.from_arrays(
            self._features[positions].reshape(len(positions), self._features.shape[1]),
            self._labels[positions],
            self._arrival[positions],
            self._synthetic[positions],
        )

    def remove(self, positions) -> "MemoryBuffer":
        """Remove the given positions in place and return them as a new buffer."""
        positions = np.unique(np.asarray(positions, dtype=np.int64))
        removed = self.take(positions)
        if len(positions):
            keep = np.ones(len(self), dtype=bool)
            keep[positions] = False
            self._set_arrays(
                self._features[keep], self._labels[keep], self._arrival[keep], self._synthetic[keep]
            )
        return removed

    def evict_oldest(self) -> LabeledInstance:
        if not len(self):
            raise ContractViolation("evict_oldest on an empty buffer")
        oldest = self[0]
        self.remove([0])
        return oldest

    def split_newest(self, n_keep: int) -> "MemoryBuffer":
        """Keep the newest ``n_keep`` insertions; remove and return the older prefix."""
        n_drop = max(len(self) - n_keep, 0)
        return self.remove(np.arange(n_drop))

    def clear(self) -> None:
        self._set_arrays(
            np.empty((0, self._features.shape[1])),
            np.empty(0, dtype=np.int8),
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
        )

    def copy(self) -> "MemoryBuffer":
        buf = MemoryBuffer.from_arrays(
            self._features.copy(), self._labels, self._arrival, self._synthetic, max_size=self.max_size
        )
        buf._dim = self._dim
        return buf

    def records(self) -> List[Dict[str, Any]]:
        return [
            {
                "features": self._features[i].tolist(),
                "label": int(self._labels[i]),
                "arrival_index": int(self._arrival[i]),
                "synthetic_id": int(self._synthetic[i]),
            }
            for i in range(len(self))
        ]

    # internals

    def _append_arrays(self, features, labels, arrival, synthetic) -> None:
        features = np.asarray(features, dtype=np.float64)
        if self._dim is None:
            self._dim = features.shape[1]
            self._features = self._features.reshape(0, self._dim)
        elif features.shape[1] != self._dim:
            raise ContractViolation(
                f"dimension mismatch: buffer holds {self._dim} features, got {features.shape[1]}"
            )
        self._set_arrays(
            np.vstack([self._features, features]),
            np.concatenate([self._labels, np.asarray(labels, dtype=np.int8)]),
            np.concatenate([self._arrival, np.asarray(arrival, dtype=np.int64)]),
            np.concatenate([self._synthetic, np.asarray(synthetic, dtype=np.int64)]),
        )

    def _set_arrays(self, features, labels, arrival, synthetic) -> None:
        self._features = features
        self._labels = labels
        self._arrival = arrival
        self._synthetic = synthetic
        self.count_pos = int(np.count_nonzero(labels == int(Label.POSITIVE)))
        self.count_neg = len(labels) - self.count_pos

    def __repr__(self) -> str:
        return f"MemoryBuffer(n={len(self)}, pos={self.count_pos}, neg={self.count_neg}, max_size={self.max_size})"


def _columns(instances: List[LabeledInstance]):
    features = np.vstack([inst.features for inst in instances])
    labels = np.array([int(inst.label) for inst in instances], dtype=np.int8)
    arrival = np.array([inst.arrival_index for inst in instances], dtype=np.int64)
    synthetic = np.array([inst.synthetic_id for inst in instances], dtype=np.int64)
    return features, labels, arrival, synthetic


def imbalance_ratio(buffer: MemoryBuffer) -> Optional[float]:
    """The r of "1:r" (majority per minority); None when the buffer holds no positives."""
    if buffer.count_pos == 0:
        return None
    return buffer.count_neg / buffer.count_pos
