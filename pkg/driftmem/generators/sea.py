"""SEA concepts: three uniform features, label by f1 + f2 against a threshold."""
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from driftmem.core.types import Label, LabeledInstance
from driftmem.generators.schedules import DriftSchedule, ImbalanceSchedule
from driftmem.generators.transforms import NoisyConcept, apply_imbalance

SEA_THRESHOLDS = (8.0, 9.0, 7.0, 9.5)
SEA_FEATURES = 3
SEA_LOW, SEA_HIGH = 0.0, 10.0


def sea_label(features: np.ndarray, threshold: float) -> Label:
    return Label.POSITIVE if features[0] + features[1] <= threshold else Label.NEGATIVE


class SeaConcept:
    """Raw SEA source; concept i uses threshold ``thresholds[i % len(thresholds)]``."""

    dim = SEA_FEATURES

    def __init__(
        self,
        schedule: Optional[DriftSchedule] = None,
        seed=None,
        thresholds: Sequence[float] = SEA_THRESHOLDS,
    ):
        self.schedule = schedule or DriftSchedule()
        self.thresholds = tuple(thresholds)
        self.rng = np.random.default_rng(seed)

    def threshold_for(self, concept: int) -> float:
        return self.thresholds[concept % len(self.thresholds)]

    def draw(self, t: int) -> Tuple[np.ndarray, Label]:
        features = self.rng.uniform(SEA_LOW, SEA_HIGH, SEA_FEATURES)
        threshold = self.threshold_for(self.schedule.concept_at(t, self.rng))
        return features, sea_label(features, threshold)


def sea_stream(
    schedule: DriftSchedule,
    imbalance: ImbalanceSchedule,
    noise_rate: float,
    n: int,
    seed: int = 0,
) -> Iterator[LabeledInstance]:
    raw_seed, imbalance_seed, noise_seed = np.random.SeedSequence(seed).spawn(3)
    raw = SeaConcept(schedule, raw_seed)
    noisy = NoisyConcept(raw, noise_rate, noise_seed)
    return apply_imbalance(noisy, imbalance, n, imbalance_seed, drift=schedule)
