"""Stream stages around the raw concept: label noise and class selection."""
import logging
from typing import Iterable, Iterator, Optional, Protocol, Tuple

import numpy as np

from driftmem.core.types import Label, LabeledInstance
from driftmem.errors import ContractViolation, GeneratorStarvationError
from driftmem.generators.schedules import DriftSchedule, ImbalanceSchedule

logger = logging.getLogger(__name__)


class RawConcept(Protocol):
    dim: int

    def draw(self, t: int) -> Tuple[np.ndarray, Label]:
        """One raw instance under the concept active at output position t."""


class NoisyConcept:
    """Raw concept whose labels flip independently with probability ``rate`` per draw.

    Sits in front of ``apply_imbalance``, which then selects on the noisy labels.
    """

    def __init__(self, raw: RawConcept, rate: float, seed=None):
        _check_rate(rate)
        self.raw = raw
        self.rate = rate
        self.dim = raw.dim
        self.rng = np.random.default_rng(seed)

    def draw(self, t: int) -> Tuple[np.ndarray, Label]:
        features, label = self.raw.draw(t)
        if self.rng.random() < self.rate:
            return features, label.flipped
        return features, label


def _check_rate(rate: float) -> None:
    if not 0.0 <= rate <= 1.0:
        raise ContractViolation(f"noise rate must lie in [0, 1], got {rate}")


def starvation_budget(n: int) -> int:
    return 10 * max(n, 100)


def apply_imbalance(
    raw: RawConcept,
    schedule: ImbalanceSchedule,
    n: int,
    seed=None,
    drift: Optional[DriftSchedule] = None,
) -> Iterator[LabeledInstance]:
    """Rejection-sample ``raw`` so position t is Positive with probability 1 / (1 + r_t).

    The class of each output position is drawn first, then raw draws are
    discarded until one carries that class. Feature vectors pass through
    untouched.
    """
    if n <= 0:
        raise ContractViolation(f"stream length must be positive, got {n}")
    rng = np.random.default_rng(seed)
    return _imbalanced(raw, schedule, n, rng, drift)


def _imbalanced(raw, schedule, n, rng, drift) -> Iterator[LabeledInstance]:
    budget = starvation_budget(n)
    draws = 0
    for t in range(n):
        wanted = Label.POSITIVE if rng.random() < schedule.positive_probability(t, n, drift) else Label.NEGATIVE
        while True:
            if draws >= budget:
                logger.error(
                    "generator starved at t=%d after %d raw draws looking for %s", t, draws, wanted.name
                )
                raise GeneratorStarvationError(
                    f"no {wanted.name} instance within {budget} raw draws (stopped at position {t})"
                )
            features, label = raw.draw(t)
            draws += 1
            if label == wanted:
                break
        yield LabeledInstance(features, label, t)


def apply_noise(stream: Iterable[LabeledInstance], rate: float, seed=None) -> Iterator[LabeledInstance]:
    """Flip each label independently with probability ``rate``."""
    _check_rate(rate)
    rng = np.random.default_rng(seed)
    return _noisy(stream, rate, rng)


def _noisy(stream, rate, rng) -> Iterator[LabeledInstance]:
    for instance in stream:
        if rng.random() < rate:
            yield LabeledInstance(
                instance.features, instance.label.flipped, instance.arrival_index, instance.synthetic_id
            )
        else:
            yield instance
