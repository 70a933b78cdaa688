from driftmem.core.types import Label, LabeledInstance, NeighborList, Prediction
from driftmem.core.neighbors import euclidean_distance, knn_search
from driftmem.core.memory import MemoryBuffer, imbalance_ratio
from driftmem.core.datasets import load_csv_dataset

__all__ = [
    "Label",
    "LabeledInstance",
    "NeighborList",
    "Prediction",
    "euclidean_distance",
    "knn_search",
    "MemoryBuffer",
    "imbalance_ratio",
    "load_csv_dataset",
]
