import json
import logging
import math
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd
from sklearn.preprocessing import MinMaxScaler

from driftmem.core.types import Label, LabeledInstance
from driftmem.errors import DatasetParseError
from driftmem.schemas.models import DatasetSchema

logger = logging.getLogger(__name__)

BASE_DIR = os.path.dirname(os.path.dirname(os.path.dirname(__file__)))
MANIFEST_PATH = os.path.join(BASE_DIR, "data", "datasets", "datasets_manifest.json")


def load_manifest() -> List[Dict[str, Any]]:
    with open(MANIFEST_PATH, "r", encoding="utf-8") as f:
        return json.load(f)


def dataset_schema(file_name: str) -> Optional[DatasetSchema]:
    """Schema declared in the manifest for a known real-world dataset file, else None."""
    name = Path(file_name).name
    for entry in load_manifest():
        if entry["file"] == name:
            return DatasetSchema(**entry["schema"])
    return None


def load_csv_dataset(path: Union[str, Path], schema: DatasetSchema) -> List[LabeledInstance]:
    """Read a headered, comma-separated UTF-8 file into instances in file order.

    Row numbers in errors are 1-based data rows (the header is not counted).
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetParseError(f"dataset file not found: {path}")
    if path.stat().st_size == 0:
        raise DatasetParseError(f"dataset file is empty: {path}")

    try:
        frame = pd.read_csv(
            path,
            sep=",",
            encoding="utf-8",
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError:
        raise DatasetParseError(f"dataset file is empty: {path}")
    except pd.errors.ParserError as exc:
        raise DatasetParseError(f"malformed CSV in {path}: {exc}")
    frame.columns = [c.strip() for c in frame.columns]

    if schema.label_column not in frame.columns:
        raise DatasetParseError(
            f"label column missing from {path.name}", column=schema.label_column
        )
    feature_columns = schema.feature_columns or [c for c in frame.columns if c != schema.label_column]
    for col in feature_columns:
        if col not in frame.columns:
            raise DatasetParseError(f"feature column missing from {path.name}", column=col)
    if not feature_columns:
        raise DatasetParseError(f"{path.name} declares no feature columns")
    if frame.empty:
        raise DatasetParseError(f"{path.name} has a header but no data rows")

    features = np.empty((len(frame), len(feature_columns)), dtype=np.float64)
    for j, col in enumerate(feature_columns):
        for i, cell in enumerate(frame[col].tolist()):
            try:
                value = float(cell)
            except ValueError:
                raise DatasetParseError(f"non-numeric feature value {cell!r}", row=i + 1, column=col)
            if not math.isfinite(value):
                raise DatasetParseError(f"non-finite feature value {cell!r}", row=i + 1, column=col)
            features[i, j] = value

    instances: List[LabeledInstance] = []
    positive = schema.positive_value.strip()
    negative = schema.negative_value.strip() if schema.negative_value is not None else None
    for i, raw in enumerate(frame[schema.label_column].tolist()):
        raw = raw.strip()
        if raw == positive:
            label = Label.POSITIVE
        elif negative is None or raw == negative:
            label = Label.NEGATIVE
        else:
            raise DatasetParseError(
                f"unexpected label {raw!r} (expected {positive!r} or {negative!r})",
                row=i + 1,
                column=schema.label_column,
            )
        instances.append(LabeledInstance(features=features[i], label=label, arrival_index=i))

    logger.info("loaded dataset file=%s rows=%d features=%d", path.name, len(instances), len(feature_columns))
    return instances


class MinMaxNormalizer:
    """Per-feature min-max scaling of a finite dataset (opt-in preprocessing)."""

    def __init__(self):
        self._scaler = MinMaxScaler()

    def fit_transform(self, instances: List[LabeledInstance]) -> List[LabeledInstance]:
        if not instances:
            return []
        matrix = np.vstack([inst.features for inst in instances])
        scaled = self._scaler.fit_transform(matrix)
        return [
            LabeledInstance(features=row, label=inst.label, arrival_index=inst.arrival_index)
            for row, inst in zip(scaled, instances)
        ]
