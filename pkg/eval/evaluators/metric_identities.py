"""
Metric identity evaluator: g_mean^2 == recall_pos * recall_neg and
balanced_accuracy == (recall_pos + recall_neg) / 2 at every step. Values read back
from metrics.csv carry 9 significant digits, so pass a looser tolerance there.
"""

from typing import Any, Dict

import numpy as np
import pandas as pd

TOLERANCE = 1e-12


def evaluate_metric_identities(
    metrics: pd.DataFrame, prefix: str = "", tolerance: float = TOLERANCE
) -> Dict[str, Any]:
    """
    metrics: frame with {prefix}balanced_accuracy, {prefix}g_mean, {prefix}recall_pos, {prefix}recall_neg
    returns: dict with {"max_gmean_violation", "max_bacc_violation", "holds"}
    """
    rp = metrics[f"{prefix}recall_pos"].to_numpy(float)
    rn = metrics[f"{prefix}recall_neg"].to_numpy(float)
    g = metrics[f"{prefix}g_mean"].to_numpy(float)
    bacc = metrics[f"{prefix}balanced_accuracy"].to_numpy(float)

    gmean_gap = float(np.max(np.abs(g * g - rp * rn), initial=0.0))
    bacc_gap = float(np.max(np.abs(bacc - (rp + rn) / 2.0), initial=0.0))
    return {
        "max_gmean_violation": gmean_gap,
        "max_bacc_violation": bacc_gap,
        "holds": gmean_gap <= tolerance and bacc_gap <= tolerance,
    }
