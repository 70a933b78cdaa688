from collections import deque
from typing import Any, Deque, Dict, Optional, Tuple

from driftmem.core.types import Label
from driftmem.errors import ContractViolation


def balanced_accuracy(
    tp: int,
    fn: int,
    tn: int,
    fp: int,
    last_tpr: Optional[float] = None,
    last_tnr: Optional[float] = None,
) -> float:
    """(TPR + TNR) / 2.

    A class absent from the counts contributes its last known rate, or 1.0 if
    it has never been observed.
    """
    if tp + fn > 0:
        tpr = tp / (tp + fn)
    else:
        tpr = 1.0 if last_tpr is None else last_tpr
    if tn + fp > 0:
        tnr = tn / (tn + fp)
    else:
        tnr = 1.0 if last_tnr is None else last_tnr
    return (tpr + tnr) / 2.0


class BalancedAccuracyTracker:
    """Windowed confusion counts over the last ``window`` (truth, prediction) pairs."""

    def __init__(self, window: int):
        if window < 1:
            raise ContractViolation(f"window must be positive, got {window}")
        self.window = window
        self._pairs: Deque[Tuple[Label, Label]] = deque()
        self.tp = self.fn = self.tn = self.fp = 0
        self._last_tpr: Optional[float] = None
        self._last_tnr: Optional[float] = None

    def __len__(self) -> int:
        return len(self._pairs)

    def update(self, y_true: Label, y_pred: Label) -> float:
        self._pairs.append((y_true, y_pred))
        self._count(y_true, y_pred, +1)
        if len(self._pairs) > self.window:
            old_true, old_pred = self._pairs.popleft()
            self._count(old_true, old_pred, -1)
        if self.tp + self.fn:
            self._last_tpr = self.tp / (self.tp + self.fn)
        if self.tn + self.fp:
            self._last_tnr = self.tn / (self.tn + self.fp)
        return self.value

    @property
    def value(self) -> float:
        return balanced_accuracy(self.tp, self.fn, self.tn, self.fp, self._last_tpr, self._last_tnr)

    @property
    def recall_pos(self) -> float:
        if self.tp + self.fn:
            return self.tp / (self.tp + self.fn)
        return 1.0 if self._last_tpr is None else self._last_tpr

    @property
    def recall_neg(self) -> float:
        if self.tn + self.fp:
            return self.tn / (self.tn + self.fp)
        return 1.0 if self._last_tnr is None else self._last_tnr

    def pairs(self):
        return list(self._pairs)

    def state(self) -> Dict[str, Any]:
        return {
            "window": self.window,
            "tp": self.tp,
            "fn": self.fn,
            "tn": self.tn,
            "fp": self.fp,
            "value": self.value,
        }

    def _count(self, y_true: Label, y_pred: Label, step: int) -> None:
        if y_true == Label.POSITIVE:
            if y_pred == Label.POSITIVE:
                self.tp += step
            else:
                self.fn += step
        else:
            if y_pred == Label.NEGATIVE:
                self.tn += step
            else:
                self.fp += step
