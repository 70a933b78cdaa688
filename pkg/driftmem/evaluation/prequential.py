"""First-test-then-train evaluation over a labeled stream."""
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Protocol, runtime_checkable

import numpy as np

from driftmem.core.types import LabeledInstance, Prediction
from driftmem.evaluation.metrics import ConfusionCounts, MetricSet, SlidingConfusion

logger = logging.getLogger(__name__)

METRIC_FIELDS = ("balanced_accuracy", "g_mean", "recall_pos", "recall_neg")


@runtime_checkable
class StreamModel(Protocol):
    def predict(self, x) -> Prediction: ...

    def learn(self, instance: LabeledInstance) -> None: ...


@dataclass
class PrequentialResult:
    model_name: str
    window: int
    t: List[int] = field(default_factory=list)
    y_true: List[int] = field(default_factory=list)
    y_pred: List[int] = field(default_factory=list)
    source: List[str] = field(default_factory=list)
    # one MetricSet per step
    cumulative: List[MetricSet] = field(default_factory=list)
    windowed: List[MetricSet] = field(default_factory=list)
    diagnostics: Optional[List[dict]] = None
    totals: Optional[dict] = None
    duration_seconds: float = 0.0

    def __len__(self) -> int:
        return len(self.t)

    @property
    def final(self) -> MetricSet:
        return self.cumulative[-1] if self.cumulative else MetricSet.from_recalls(1.0, 1.0)

    @property
    def final_windowed(self) -> MetricSet:
        return self.windowed[-1] if self.windowed else MetricSet.from_recalls(1.0, 1.0)

    def metric_matrix(self, which: str = "cumulative") -> np.ndarray:
        rows = self.cumulative if which == "cumulative" else self.windowed
        return np.array([[getattr(m, name) for name in METRIC_FIELDS] for m in rows], dtype=np.float64).reshape(
            len(rows), len(METRIC_FIELDS)
        )


def prequential_run(model: StreamModel, stream: Iterable[LabeledInstance], window: int = 500) -> PrequentialResult:
    """Score every instance with ``model`` before training on it."""
    name = getattr(model, "name", type(model).__name__)
    result = PrequentialResult(model_name=name, window=window)
    cumulative = ConfusionCounts()
    windowed = SlidingConfusion(window)

    started = time.perf_counter()
    for instance in stream:
        prediction = model.predict(instance.features)
        cumulative.add(instance.label, prediction.label)
        windowed.add(instance.label, prediction.label)
        result.t.append(instance.arrival_index)
        result.y_true.append(int(instance.label))
        result.y_pred.append(int(prediction.label))
        result.source.append(prediction.source)
        result.cumulative.append(cumulative.metrics())
        result.windowed.append(windowed.metrics())
        model.learn(instance)
    result.duration_seconds = time.perf_counter() - started

    transfer_log = getattr(model, "transfer_log", None)
    if transfer_log is not None:
        result.diagnostics = transfer_log.rows()
        result.totals = transfer_log.totals_summary()
    logger.info(
        "prequential run finished: model=%s instances=%d bacc=%.4f g_mean=%.4f seconds=%.2f",
        name,
        len(result),
        result.final.balanced_accuracy,
        result.final.g_mean,
        result.duration_seconds,
    )
    return result
