from driftmem.evaluation.export import diagnostics_export, run_summary
from driftmem.evaluation.metrics import ConfusionCounts, MetricSet, SlidingConfusion
from driftmem.evaluation.prequential import PrequentialResult, StreamModel, prequential_run

__all__ = [
    "ConfusionCounts",
    "MetricSet",
    "PrequentialResult",
    "SlidingConfusion",
    "StreamModel",
    "diagnostics_export",
    "prequential_run",
    "run_summary",
]
