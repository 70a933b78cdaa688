"""Drift and imbalance schedules, both indexed by output position."""
import bisect
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from driftmem.errors import ContractViolation


class DriftKind(str, Enum):
    SUDDEN = "sudden"
    GRADUAL = "gradual"
    INCREMENTAL = "incremental"


class DriftPoint(NamedTuple):
    position: int
    kind: DriftKind
    width: int = 1


@dataclass(frozen=True)
class DriftSchedule:
    kind: DriftKind = DriftKind.SUDDEN
    change_points: Tuple[int, ...] = ()
    gradual_width: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", DriftKind(self.kind))
        points = tuple(int(c) for c in self.change_points)
        object.__setattr__(self, "change_points", points)
        if any(c < 0 for c in points):
            raise ContractViolation("change points must be non-negative")
        if any(b <= a for a, b in zip(points, points[1:])):
            raise ContractViolation(f"change points must be strictly increasing, got {points}")
        if self.kind is DriftKind.GRADUAL and self.gradual_width <= 0:
            raise ContractViolation("gradual_width must be positive for gradual drift")

    def concept_index(self, t: int) -> int:
        """Number of change points at or before t."""
        return bisect.bisect_right(self.change_points, t)

    def concept_at(self, t: int, rng: np.random.Generator) -> int:
        """Concept used at position t.

        Inside a gradual transition [c, c + w) the new concept is used with
        probability (t - c + 1) / w, the previous one otherwise.
        """
        index = self.concept_index(t)
        if self.kind is not DriftKind.GRADUAL or index == 0:
            return index
        start = self.change_points[index - 1]
        if t >= start + self.gradual_width:
            return index
        p_new = (t - start + 1) / self.gradual_width
        return index if rng.random() < p_new else index - 1

    def drift_points(self) -> Tuple[DriftPoint, ...]:
        width = self.gradual_width if self.kind is DriftKind.GRADUAL else 1
        return tuple(DriftPoint(c, self.kind, width) for c in self.change_points)


class ImbalanceKind(str, Enum):
    STATIC = "static"
    PER_CONCEPT = "per_concept"
    RAMP = "ramp"


@dataclass(frozen=True)
class ImbalanceSchedule:
    """Majority-per-minority ratio r (read as 1:r) over the run.

    STATIC holds one ratio, PER_CONCEPT one per concept of a drift schedule,
    RAMP interpolates linearly from ratios[0] to ratios[1].
    """

    kind: ImbalanceKind = ImbalanceKind.STATIC
    ratios: Tuple[float, ...] = (1.0,)

    def __post_init__(self):
        object.__setattr__(self, "kind", ImbalanceKind(self.kind))
        ratios = tuple(float(r) for r in self.ratios)
        object.__setattr__(self, "ratios", ratios)
        if not ratios:
            raise ContractViolation("an imbalance schedule needs at least one ratio")
        if any(not np.isfinite(r) or r < 1 for r in ratios):
            raise ContractViolation(f"every ratio must be >= 1, got {ratios}")
        if self.kind is ImbalanceKind.RAMP and len(ratios) != 2:
            raise ContractViolation("a ramp takes exactly two ratios (start, end)")

    @classmethod
    def static(cls, ratio: float) -> "ImbalanceSchedule":
        return cls(ImbalanceKind.STATIC, (ratio,))

    @classmethod
    def per_concept(cls, ratios: Sequence[float]) -> "ImbalanceSchedule":
        return cls(ImbalanceKind.PER_CONCEPT, tuple(ratios))

    @classmethod
    def ramp(cls, start: float, end: float) -> "ImbalanceSchedule":
        return cls(ImbalanceKind.RAMP, (start, end))

    def ratio_at(self, t: int, n: int, drift: Optional[DriftSchedule] = None) -> float:
        if self.kind is ImbalanceKind.STATIC:
            return self.ratios[0]
        if self.kind is ImbalanceKind.PER_CONCEPT:
            index = drift.concept_index(t) if drift is not None else 0
            return self.ratios[min(index, len(self.ratios) - 1)]
        start, end = self.ratios
        return start + (end - start) * t / max(n - 1, 1)

    def positive_probability(self, t: int, n: int, drift: Optional[DriftSchedule] = None) -> float:
        return 1.0 / (1.0 + self.ratio_at(t, n, drift))

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "ratios": list(self.ratios)}


def quarter_change_points(n: int, count: int = 3) -> Tuple[int, ...]:
    """``count`` change points splitting a run of n into equal parts."""
    return tuple(n * (i + 1) // (count + 1) for i in range(count))
