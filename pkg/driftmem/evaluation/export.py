"""Writes a prequential result as tidy CSV/JSON files for external plotting."""
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd

from driftmem.evaluation.prequential import METRIC_FIELDS, PrequentialResult
from driftmem.models.diagnostics import DIAGNOSTIC_COLUMNS
from driftmem.schemas.models import MetricSummary, RunSummary

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.9g"
METRICS_FILE = "metrics.csv"
DIAGNOSTICS_FILE = "diagnostics.csv"
SUMMARY_FILE = "summary.json"

METRIC_COLUMNS = (
    ["t", "y_true", "y_pred", "source"]
    + list(METRIC_FIELDS)
    + [f"window_{name}" for name in METRIC_FIELDS]
)


def metrics_frame(result: PrequentialResult) -> pd.DataFrame:
    frame = pd.DataFrame({"t": result.t, "y_true": result.y_true, "y_pred": result.y_pred, "source": result.source})
    cumulative = result.metric_matrix("cumulative")
    windowed = result.metric_matrix("windowed")
    for i, name in enumerate(METRIC_FIELDS):
        frame[name] = cumulative[:, i]
    for i, name in enumerate(METRIC_FIELDS):
        frame[f"window_{name}"] = windowed[:, i]
    return frame[METRIC_COLUMNS]


def diagnostics_frame(result: PrequentialResult) -> pd.DataFrame:
    frame = pd.DataFrame(result.diagnostics or [], columns=DIAGNOSTIC_COLUMNS)
    # undefined ratios (no positives) become empty cells
    for column in ("stm_ir", "ltm_ir", "wm_ir"):
        frame[column] = frame[column].astype("float64")
    return frame


def _metric_summary(metrics) -> MetricSummary:
    return MetricSummary(**metrics.as_dict())


def run_summary(
    result: PrequentialResult,
    dataset: str,
    seed: int,
    run_metadata: Optional[Dict[str, Any]] = None,
) -> RunSummary:
    totals = result.totals or {}
    diagnostics = result.diagnostics or []
    return RunSummary(
        model=result.model_name,
        dataset=dataset,
        seed=seed,
        n_instances=len(result),
        metrics=_metric_summary(result.final),
        windowed_metrics=_metric_summary(result.final_windowed),
        drift_events=totals.get("drift_events", 0),
        compression_events=totals.get("compression_events", 0),
        ltm_to_wm_pos=totals.get("ltm_to_wm_pos", 0),
        ltm_to_wm_neg=totals.get("ltm_to_wm_neg", 0),
        wm_to_ltm_pos=totals.get("wm_to_ltm_pos", 0),
        wm_to_ltm_neg=totals.get("wm_to_ltm_neg", 0),
        noise_removed_pos=totals.get("noise_removed_pos", 0),
        noise_removed_neg=totals.get("noise_removed_neg", 0),
        ltm_removed_pos=totals.get("ltm_removed_pos", 0),
        ltm_removed_neg=totals.get("ltm_removed_neg", 0),
        minority_lost=totals.get("minority_lost", 0),
        final_ltm_ir=diagnostics[-1]["ltm_ir"] if diagnostics else None,
        duration_seconds=result.duration_seconds,
        run_metadata=run_metadata or {},
    )


def write_csv(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def diagnostics_export(
    result: PrequentialResult,
    path,
    dataset: str = "stream",
    seed: int = 0,
    run_metadata: Optional[Dict[str, Any]] = None,
) -> Dict[str, Path]:
    """Write metrics.csv, diagnostics.csv and summary.json under ``path``.

    Returns the written file paths keyed by kind. I/O errors propagate.
    """
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "metrics": out / METRICS_FILE,
        "diagnostics": out / DIAGNOSTICS_FILE,
        "summary": out / SUMMARY_FILE,
    }
    write_csv(metrics_frame(result), files["metrics"])
    write_csv(diagnostics_frame(result), files["diagnostics"])
    summary = run_summary(result, dataset, seed, run_metadata)
    files["summary"].write_text(summary.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info("exported %d steps to %s", len(result), out)
    return files
