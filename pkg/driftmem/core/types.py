from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple, Tuple

import numpy as np


class Label(IntEnum):
    """Binary class label. POSITIVE is the designated minority class."""

    POSITIVE = 1
    NEGATIVE = -1

    @property
    def flipped(self) -> "Label":
        return Label.NEGATIVE if self is Label.POSITIVE else Label.POSITIVE


@dataclass(frozen=True, eq=False)
class LabeledInstance:
    features: np.ndarray
    label: Label
    arrival_index: int
    # 0 for instances read from the stream; synthetic and centroid instances get fresh ids
    synthetic_id: int = 0

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        if features.ndim != 1:
            raise ValueError(f"features must be a vector, got shape {features.shape}")
        features.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "label", Label(self.label))

    @property
    def key(self) -> Tuple[int, int]:
        return (self.arrival_index, self.synthetic_id)

    @property
    def dim(self) -> int:
        return self.features.shape[0]

    def __repr__(self) -> str:
        return (
            f"LabeledInstance(t={self.arrival_index}, syn={self.synthetic_id}, "
            f"label={self.label.name}, features={self.features.tolist()})"
        )


@dataclass(frozen=True)
class NeighborList:
    """Positions into a buffer with their distances, ascending by distance."""

    indices: np.ndarray
    distances: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(zip(self.indices.tolist(), self.distances.tolist()))


class Prediction(NamedTuple):
    label: Label
    source: str
