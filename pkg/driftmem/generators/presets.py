"""Named benchmark streams built from the preset pack."""
import logging
import os
from typing import Any, Dict, Iterator, List, Optional, Tuple

from driftmem.core.types import LabeledInstance
from driftmem.generators.hyperplane import HYPERPLANE_FEATURES, hyperplane_stream
from driftmem.generators.schedules import (
    DriftKind,
    DriftPoint,
    DriftSchedule,
    ImbalanceSchedule,
    quarter_change_points,
)
from driftmem.generators.sea import SEA_FEATURES, sea_stream
from driftmem.presets.preset_store import PRESET_PACK_VERSION, canonical_name, get_preset
from driftmem.schemas.models import StreamMetadata

logger = logging.getLogger(__name__)


def _run_length(preset: Dict[str, Any], n: Optional[int]) -> int:
    return int(n) if n is not None else int(preset["n"])


def preset_schedules(name: str, n: Optional[int] = None) -> Tuple[DriftSchedule, ImbalanceSchedule]:
    preset = get_preset(name)
    length = _run_length(preset, n)
    kind = DriftKind(preset["drift_kind"])
    imbalance = ImbalanceSchedule(**preset["imbalance"])
    if kind is DriftKind.INCREMENTAL:
        return DriftSchedule(kind), imbalance
    width = max(1, round(preset.get("gradual_width_fraction", 0.0) * length))
    return DriftSchedule(kind, quarter_change_points(length, preset["n_drifts"]), width), imbalance


def preset_stream(name: str, n: Optional[int] = None, seed: int = 0) -> Iterator[LabeledInstance]:
    preset = get_preset(name)
    length = _run_length(preset, n)
    drift, imbalance = preset_schedules(name, length)
    logger.debug("building preset %s n=%d seed=%d", canonical_name(name), length, seed)
    if preset["generator"] == "sea":
        return sea_stream(drift, imbalance, preset["noise_rate"], length, seed)
    return hyperplane_stream(preset["drift_magnitude"], imbalance, preset["noise_rate"], length, seed)


def ground_truth_drifts(name: str, n: Optional[int] = None) -> List[DriftPoint]:
    """Injected drifts of a preset; a CSV dataset has no known drifts."""
    if name.lower().endswith(".csv") or os.path.sep in name:
        return []
    preset = get_preset(name)
    length = _run_length(preset, n)
    drift, _ = preset_schedules(name, length)
    if drift.kind is DriftKind.INCREMENTAL:
        return [DriftPoint(0, DriftKind.INCREMENTAL, length)]
    return list(drift.drift_points())


def preset_metadata(name: str, n: Optional[int] = None, seed: int = 0) -> StreamMetadata:
    preset = get_preset(name)
    length = _run_length(preset, n)
    drift, imbalance = preset_schedules(name, length)
    return StreamMetadata(
        preset=canonical_name(name),
        seed=seed,
        n=length,
        n_features=SEA_FEATURES if preset["generator"] == "sea" else HYPERPLANE_FEATURES,
        change_points=list(drift.change_points),
        drift_kind=drift.kind.value,
        gradual_width=drift.gradual_width if drift.kind is DriftKind.GRADUAL else None,
        imbalance=imbalance.as_dict(),
        noise_rate=preset["noise_rate"],
        drift_magnitude=preset.get("drift_magnitude"),
        preset_pack_version=PRESET_PACK_VERSION,
    )
