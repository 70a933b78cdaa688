"""Rotating hyperplane concepts with incremental drift."""
from typing import Iterator, Tuple

import numpy as np

from driftmem.core.types import Label, LabeledInstance
from driftmem.errors import ContractViolation
from driftmem.generators.schedules import ImbalanceSchedule
from driftmem.generators.transforms import NoisyConcept, apply_imbalance

HYPERPLANE_FEATURES = 5
DIRECTION_FLIP_PROBABILITY = 0.1


class HyperplaneConcept:
    """Raw hyperplane source.

    Features are uniform in [0, 1]; an instance is Positive iff
    sum(w * x) >= sum(w) / 2. Every output step moves each weight by
    ``drift_magnitude`` along its own random direction, and each direction reverses
    with probability 0.1 per step. Repeated draws at one position see the
    same weights.
    """

    def __init__(
        self,
        drift_magnitude: float = 0.0,
        seed=None,
        dim: int = HYPERPLANE_FEATURES,
        flip_probability: float = DIRECTION_FLIP_PROBABILITY,
    ):
        if drift_magnitude < 0 or not np.isfinite(drift_magnitude):
            raise ContractViolation(f"drift_magnitude must be finite and >= 0, got {drift_magnitude}")
        self.dim = dim
        self.drift_magnitude = drift_magnitude
        self.flip_probability = flip_probability
        self.rng = np.random.default_rng(seed)
        self.weights = self.rng.uniform(0.0, 1.0, dim)
        self.directions = self.rng.choice([-1.0, 1.0], dim)
        self.position = 0

    def label(self, features: np.ndarray) -> Label:
        score = float(self.weights @ features) - 0.5 * float(self.weights.sum())
        return Label.POSITIVE if score >= 0 else Label.NEGATIVE

    def advance_to(self, t: int) -> None:
        if t < self.position:
            raise ContractViolation(f"hyperplane cannot move back from {self.position} to {t}")
        if self.drift_magnitude == 0:
            self.position = t
            return
        while self.position < t:
            self.weights = self.weights + self.directions * self.drift_magnitude
            flips = self.rng.random(self.dim) < self.flip_probability
            self.directions[flips] *= -1
            self.position += 1

    def draw(self, t: int) -> Tuple[np.ndarray, Label]:
        self.advance_to(t)
        features = self.rng.uniform(0.0, 1.0, self.dim)
        return features, self.label(features)


def hyperplane_stream(
    drift_magnitude: float,
    imbalance: ImbalanceSchedule,
    noise_rate: float,
    n: int,
    seed: int = 0,
    dim: int = HYPERPLANE_FEATURES,
) -> Iterator[LabeledInstance]:
    raw_seed, imbalance_seed, noise_seed = np.random.SeedSequence(seed).spawn(3)
    raw = HyperplaneConcept(drift_magnitude, raw_seed, dim=dim)
    noisy = NoisyConcept(raw, noise_rate, noise_seed)
    return apply_imbalance(noisy, imbalance, n, imbalance_seed)
