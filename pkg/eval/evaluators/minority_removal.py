"""
Minority removal evaluator: DAM3 should lose no more minority instances than
the baseline deletes from its LTM on the same stream and seed.
"""

from typing import Any, Dict


def evaluate_minority_removal(dam3_summary: Dict[str, Any], baseline_summary: Dict[str, Any]) -> Dict[str, Any]:
    """
    dam3_summary / baseline_summary: parsed summary.json of each run
    returns: dict with {"dam3_lost": int, "baseline_removed": int, "dam3_keeps_more": bool}
    """
    dam3_lost = int(dam3_summary.get("minority_lost", 0))
    baseline_removed = int(baseline_summary.get("ltm_removed_pos", 0))
    return {
        "dam3_lost": dam3_lost,
        "baseline_removed": baseline_removed,
        "dam3_keeps_more": baseline_removed >= dam3_lost,
    }
