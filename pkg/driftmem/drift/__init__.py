from driftmem.drift.balanced_accuracy import BalancedAccuracyTracker, balanced_accuracy
from driftmem.drift.ks_detector import (
    DriftSignal,
    KsDriftDetector,
    critical_value,
    ks_statistic,
    on_drift_split,
)

__all__ = [
    "BalancedAccuracyTracker",
    "balanced_accuracy",
    "DriftSignal",
    "KsDriftDetector",
    "critical_value",
    "ks_statistic",
    "on_drift_split",
]
