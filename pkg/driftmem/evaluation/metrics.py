"""Imbalance-aware prequential metrics.

A class that has not been observed yet has recall 1.0, so warm-up does not
drag the G-Mean to zero.
"""
import math
from collections import deque
from dataclasses import dataclass
from typing import Deque, Tuple

from driftmem.core.types import Label
from driftmem.errors import ContractViolation


@dataclass(frozen=True)
class MetricSet:
    balanced_accuracy: float
    g_mean: float
    recall_pos: float
    recall_neg: float

    @classmethod
    def from_recalls(cls, recall_pos: float, recall_neg: float) -> "MetricSet":
        return cls(
            balanced_accuracy=(recall_pos + recall_neg) / 2.0,
            g_mean=math.sqrt(recall_pos * recall_neg),
            recall_pos=recall_pos,
            recall_neg=recall_neg,
        )

    def as_dict(self) -> dict:
        return {
            "balanced_accuracy": self.balanced_accuracy,
            "g_mean": self.g_mean,
            "recall_pos": self.recall_pos,
            "recall_neg": self.recall_neg,
        }


@dataclass
class ConfusionCounts:
    tp: int = 0
    fn: int = 0
    tn: int = 0
    fp: int = 0

    def add(self, y_true: Label, y_pred: Label, step: int = 1) -> None:
        if y_true == Label.POSITIVE:
            if y_pred == Label.POSITIVE:
                self.tp += step
            else:
                self.fn += step
        elif y_pred == Label.NEGATIVE:
            self.tn += step
        else:
            self.fp += step

    @property
    def total(self) -> int:
        return self.tp + self.fn + self.tn + self.fp

    @property
    def recall_pos(self) -> float:
        seen = self.tp + self.fn
        return self.tp / seen if seen else 1.0

    @property
    def recall_neg(self) -> float:
        seen = self.tn + self.fp
        return self.tn / seen if seen else 1.0

    def metrics(self) -> MetricSet:
        return MetricSet.from_recalls(self.recall_pos, self.recall_neg)


class SlidingConfusion:
    """Confusion counts over the most recent ``window`` predictions."""

    def __init__(self, window: int):
        if window < 1:
            raise ContractViolation(f"window must be positive, got {window}")
        self.window = window
        self.counts = ConfusionCounts()
        self._pairs: Deque[Tuple[Label, Label]] = deque()

    def add(self, y_true: Label, y_pred: Label) -> None:
        self._pairs.append((y_true, y_pred))
        self.counts.add(y_true, y_pred)
        if len(self._pairs) > self.window:
            old_true, old_pred = self._pairs.popleft()
            self.counts.add(old_true, old_pred, step=-1)

    def metrics(self) -> MetricSet:
        return self.counts.metrics()
