from dataclasses import asdict, dataclass
from typing import Dict, List, Optional

from driftmem.core.memory import MemoryBuffer, imbalance_ratio

# Column order of the exported diagnostics file.
DIAGNOSTIC_COLUMNS = [
    "t",
    "stm_pos",
    "stm_neg",
    "ltm_pos",
    "ltm_neg",
    "wm_pos",
    "wm_neg",
    "stm_ir",
    "ltm_ir",
    "wm_ir",
    "ltm_to_wm_pos",
    "ltm_to_wm_neg",
    "wm_to_ltm_pos",
    "wm_to_ltm_neg",
    "drift_flag",
    "noise_removed_pos",
    "noise_removed_neg",
    "ltm_removed_pos",
    "ltm_removed_neg",
    "compression_flag",
]

COUNTER_FIELDS = (
    "ltm_to_wm_pos",
    "ltm_to_wm_neg",
    "wm_to_ltm_pos",
    "wm_to_ltm_neg",
    "noise_removed_pos",
    "noise_removed_neg",
    "ltm_removed_pos",
    "ltm_removed_neg",
)


@dataclass
class StepDiagnostics:
    t: int
    stm_pos: int = 0
    stm_neg: int = 0
    ltm_pos: int = 0
    ltm_neg: int = 0
    wm_pos: int = 0
    wm_neg: int = 0
    stm_ir: Optional[float] = None
    ltm_ir: Optional[float] = None
    wm_ir: Optional[float] = None
    ltm_to_wm_pos: int = 0
    ltm_to_wm_neg: int = 0
    wm_to_ltm_pos: int = 0
    wm_to_ltm_neg: int = 0
    drift_flag: int = 0
    noise_removed_pos: int = 0
    noise_removed_neg: int = 0
    ltm_removed_pos: int = 0
    ltm_removed_neg: int = 0
    compression_flag: int = 0

    def add_moved(self, prefix: str, moved: MemoryBuffer) -> None:
        setattr(self, f"{prefix}_pos", getattr(self, f"{prefix}_pos") + moved.count_pos)
        setattr(self, f"{prefix}_neg", getattr(self, f"{prefix}_neg") + moved.count_neg)

    def capture_sizes(self, stm: MemoryBuffer, ltm: MemoryBuffer, wm: Optional[MemoryBuffer]) -> None:
        self.stm_pos, self.stm_neg, self.stm_ir = stm.count_pos, stm.count_neg, imbalance_ratio(stm)
        self.ltm_pos, self.ltm_neg, self.ltm_ir = ltm.count_pos, ltm.count_neg, imbalance_ratio(ltm)
        if wm is not None:
            self.wm_pos, self.wm_neg, self.wm_ir = wm.count_pos, wm.count_neg, imbalance_ratio(wm)


class TransferLog:
    """Per-step memory diagnostics plus running totals."""

    def __init__(self):
        self.steps: List[StepDiagnostics] = []
        self.totals: Dict[str, int] = {name: 0 for name in COUNTER_FIELDS}
        self.drift_events = 0
        self.compression_events = 0
        self.minority_lost = 0

    def __len__(self) -> int:
        return len(self.steps)

    def append(self, step: StepDiagnostics) -> None:
        for name in COUNTER_FIELDS:
            self.totals[name] += getattr(step, name)
        self.drift_events += step.drift_flag
        self.compression_events += step.compression_flag
        self.steps.append(step)

    def rows(self) -> List[dict]:
        return [asdict(step) for step in self.steps]

    def totals_summary(self) -> Dict[str, int]:
        return {
            **self.totals,
            "drift_events": self.drift_events,
            "compression_events": self.compression_events,
            "minority_lost": self.minority_lost,
        }


