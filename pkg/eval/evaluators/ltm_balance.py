"""
LTM balance evaluator: does the long-term memory stay balanced after warm-up?
Works on the diagnostics.csv frame of one run.
"""

from typing import Any, Dict

import numpy as np
import pandas as pd


def evaluate_ltm_balance(diagnostics: pd.DataFrame, after: int = 5000) -> Dict[str, Any]:
    """
    diagnostics: frame with columns {"t", "ltm_ir"}
    returns: dict with {"median_ir": float | None, "slope": float | None, "points": int}
    """
    series = diagnostics.loc[diagnostics["t"] >= after, ["t", "ltm_ir"]].dropna()
    if series.empty:
        return {"median_ir": None, "slope": None, "points": 0}

    median_ir = float(series["ltm_ir"].median())
    slope = None
    if len(series) >= 2 and series["t"].nunique() > 1:
        # least-squares trend of IR over stream position
        slope = float(np.polyfit(series["t"].to_numpy(float), series["ltm_ir"].to_numpy(float), 1)[0])
    return {"median_ir": median_ir, "slope": slope, "points": int(len(series))}
