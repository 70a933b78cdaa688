"""Imbalance-sensitive drift detection.

The detector receives one balanced-accuracy value per instance. Once it holds
2*ws values it compares the older half (reference) with the newer half (test)
using a two-sample Kolmogorov-Smirnov test; only a significant *drop* of the
test window counts as drift.
"""
import logging
import math
from collections import deque
from enum import Enum
from typing import Any, Deque, Dict, Sequence, Tuple

import numpy as np
from scipy.stats import ks_2samp

from driftmem.core.memory import MemoryBuffer
from driftmem.errors import ContractViolation

logger = logging.getLogger(__name__)


class DriftSignal(Enum):
    NOT_READY = "not_ready"
    NO_DRIFT = "no_drift"
    DRIFT = "drift"


def ks_statistic(reference: Sequence[float], test: Sequence[float]) -> float:
    """sup |ECDF_ref - ECDF_test| over the pooled sample."""
    reference = np.asarray(reference, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if reference.size == 0 or test.size == 0:
        raise ContractViolation("ks_statistic needs two non-empty samples")
    return float(ks_2samp(reference, test, method="asymp").statistic)


def critical_value(alpha: float, ws: int) -> float:
    """Asymptotic two-sample critical value for two windows of size ws."""
    c_alpha = math.sqrt(-math.log(alpha / 2.0) / 2.0)
    return c_alpha * math.sqrt(2.0 / ws)


class KsDriftDetector:
    def __init__(self, ws: int = 50, alpha: float = 0.01):
        if ws < 1:
            raise ContractViolation(f"ws must be positive, got {ws}")
        if not 0.0 < alpha < 1.0:
            raise ContractViolation(f"alpha must lie in (0, 1), got {alpha}")
        self.ws = ws
        self.alpha = alpha
        self.threshold = critical_value(alpha, ws)
        self._values: Deque[float] = deque(maxlen=2 * ws)
        self.last_statistic = 0.0

    @property
    def ready(self) -> bool:
        return len(self._values) == 2 * self.ws

    def add(self, value: float) -> None:
        if not 0.0 <= value <= 1.0:
            raise ContractViolation(f"balanced accuracy must lie in [0, 1], got {value}")
        self._values.append(float(value))

    def windows(self) -> Tuple[np.ndarray, np.ndarray]:
        values = np.asarray(self._values, dtype=np.float64)
        return values[: self.ws], values[self.ws:]

    def detect(self) -> DriftSignal:
        if not self.ready:
            return DriftSignal.NOT_READY
        reference, test = self.windows()
        self.last_statistic = ks_statistic(reference, test)
        if self.last_statistic > self.threshold and test.mean() < reference.mean():
            # the test window becomes the next reference
            self._values = deque(test.tolist(), maxlen=2 * self.ws)
            return DriftSignal.DRIFT
        return DriftSignal.NO_DRIFT

    def update(self, value: float) -> DriftSignal:
        self.add(value)
        return self.detect()

    def state(self) -> Dict[str, Any]:
        return {
            "ws": self.ws,
            "alpha": self.alpha,
            "threshold": self.threshold,
            "values": list(self._values),
            "last_statistic": self.last_statistic,
        }


def on_drift_split(stm: MemoryBuffer, ws: int) -> Tuple[MemoryBuffer, MemoryBuffer]:
    """Split the STM into (newest ws instances, remaining older set Δ).

    The input buffer is left untouched. With |stm| <= ws, Δ is empty.
    """
    new_stm = stm.copy()
    delta = new_stm.split_newest(ws)
    return new_stm, delta
