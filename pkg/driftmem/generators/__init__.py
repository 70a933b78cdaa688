from driftmem.generators.hyperplane import HyperplaneConcept, hyperplane_stream
from driftmem.generators.presets import ground_truth_drifts, preset_metadata, preset_stream
from driftmem.generators.schedules import (
    DriftKind,
    DriftPoint,
    DriftSchedule,
    ImbalanceKind,
    ImbalanceSchedule,
)
from driftmem.generators.sea import SeaConcept, sea_stream
from driftmem.generators.transforms import NoisyConcept, apply_imbalance, apply_noise

__all__ = [
    "DriftKind",
    "DriftPoint",
    "DriftSchedule",
    "HyperplaneConcept",
    "ImbalanceKind",
    "ImbalanceSchedule",
    "NoisyConcept",
    "SeaConcept",
    "apply_imbalance",
    "apply_noise",
    "ground_truth_drifts",
    "hyperplane_stream",
    "preset_metadata",
    "preset_stream",
    "sea_stream",
]
