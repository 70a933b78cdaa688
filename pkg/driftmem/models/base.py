import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from driftmem.classifiers.knn import knn_predict
from driftmem.core.memory import MemoryBuffer
from driftmem.core.types import Label, LabeledInstance, Prediction
from driftmem.drift.balanced_accuracy import BalancedAccuracyTracker
from driftmem.models.diagnostics import StepDiagnostics, TransferLog
from driftmem.models.memory_ops import compress
from driftmem.schemas.models import Dam3Config

logger = logging.getLogger(__name__)

SUBMODELS = ("stm", "ltm", "cm")
# on equal balanced accuracy the richer memory wins
TIE_ORDER = ("cm", "stm", "ltm")


class MemoryModel:
    """Shared machinery of the memory-based stream classifiers.

    Subclasses provide the STM classifier and the memory maintenance of one
    training step; this class handles submodel selection, the trackers,
    compression and diagnostics. Usage is prequential: ``predict`` an
    instance, then ``learn`` it.
    """

    name = "memory-model"

    def __init__(self, config: Optional[Dam3Config] = None):
        self.config = config or Dam3Config()
        self.stm = MemoryBuffer(max_size=self.config.max_stm)
        self.ltm = MemoryBuffer(max_size=self.config.max_ltm)
        self.trackers: Dict[str, BalancedAccuracyTracker] = {
            name: BalancedAccuracyTracker(self.config.ms) for name in SUBMODELS
        }
        self.transfer_log = TransferLog()
        self.n_seen = 0
        self._rng = np.random.default_rng(self.config.seed)
        self._next_synthetic_id = 1
        self._cached: Optional[Tuple[bytes, Dict[str, Label]]] = None

    # prediction

    def _stm_predict(self, x: np.ndarray) -> Label:
        raise NotImplementedError

    def combined_memory(self) -> MemoryBuffer:
        cm = self.stm.copy()
        cm.max_size = None
        cm.extend(self.ltm)
        return cm

    def candidates(self, x) -> Dict[str, Label]:
        """Prediction of every submodel whose memory is available."""
        x = np.asarray(x, dtype=np.float64)
        out: Dict[str, Label] = {}
        k = self.config.k
        if len(self.stm):
            out["stm"] = self._stm_predict(x)
        if len(self.ltm):
            out["ltm"] = knn_predict(self.ltm, x, k, self.config.epsilon_dist)
        # with an empty LTM the CM is the STM itself
        if len(self.stm) and len(self.ltm):
            out["cm"] = knn_predict(self.combined_memory(), x, k, self.config.epsilon_dist)
        return out

    def select(self, candidates: Dict[str, Label]) -> Prediction:
        best = None
        for name in TIE_ORDER:
            if name not in candidates:
                continue
            if best is None or self.trackers[name].value > self.trackers[best].value:
                best = name
        if best is None:
            return Prediction(Label.POSITIVE, "none")
        return Prediction(candidates[best], best)

    def predict(self, x) -> Prediction:
        x = np.asarray(x, dtype=np.float64)
        candidates = self.candidates(x)
        self._cached = (x.tobytes(), candidates)
        return self.select(candidates)

    # training

    def learn(self, instance: LabeledInstance) -> None:
        step = StepDiagnostics(t=instance.arrival_index)
        for name, label in self._candidates_for(instance).items():
            self.trackers[name].update(instance.label, label)
        self._train_step(instance, step)
        self._compress_memories(step)
        step.capture_sizes(self.stm, self.ltm, self._working_memory())
        self.transfer_log.append(step)
        self.n_seen += 1

    def _train_step(self, instance: LabeledInstance, step: StepDiagnostics) -> None:
        raise NotImplementedError

    def _working_memory(self) -> Optional[MemoryBuffer]:
        return None

    def _candidates_for(self, instance: LabeledInstance) -> Dict[str, Label]:
        cached, self._cached = self._cached, None
        if cached is not None and cached[0] == instance.features.tobytes():
            return cached[1]
        return self.candidates(instance.features)

    def _append_stm(self, instance: LabeledInstance) -> Optional[LabeledInstance]:
        """Append to the STM; evict and return the oldest instance when over capacity."""
        self.stm.append(instance)
        if self.stm.is_over_capacity:
            return self.stm.evict_oldest()
        return None

    def _compress_memories(self, step: StepDiagnostics) -> None:
        self.ltm = self._compress(self.ltm, step)

    def _compress(self, buffer: MemoryBuffer, step: StepDiagnostics) -> MemoryBuffer:
        while buffer.is_over_capacity:
            before = len(buffer)
            seed = int(self._rng.integers(2**31 - 1))
            buffer, used = compress(buffer, buffer.max_size, id_start=self._next_synthetic_id, seed=seed)
            self._next_synthetic_id += used
            step.compression_flag = 1
            if len(buffer) >= before:
                break
        return buffer

    def allocate_ids(self, n: int) -> int:
        start = self._next_synthetic_id
        self._next_synthetic_id += n
        return start

    # export

    def snapshot(self) -> Dict[str, Any]:
        return {
            "model": self.name,
            "config": self.config.model_dump(),
            "n_seen": self.n_seen,
            "memories": {
                "stm": self.stm.records(),
                "ltm": self.ltm.records(),
            },
            "trackers": {name: tr.state() for name, tr in self.trackers.items()},
            "totals": self.transfer_log.totals_summary(),
        }
