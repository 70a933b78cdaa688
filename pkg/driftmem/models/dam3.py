"""Drift-aware multi-memory classifier for imbalanced streams.

Four memories: the STM (newest concept, full Bayes), the LTM (older
knowledge, kNN), the WM (instances pulled out of the LTM that may become
relevant again) and the CM, the union of STM and LTM queried with kNN.
"""
import logging
from typing import Any, Dict, Optional, Set, Tuple

import numpy as np

from driftmem.classifiers.full_bayes import FullBayesModel
from driftmem.core.memory import MemoryBuffer
from driftmem.core.types import Label, LabeledInstance
from driftmem.drift.ks_detector import DriftSignal, KsDriftDetector, on_drift_split
from driftmem.models.base import MemoryModel
from driftmem.models.diagnostics import StepDiagnostics
from driftmem.models.memory_ops import (
    consistent_set_wm,
    distance_threshold,
    exchange,
    inconsistent_set_ltm,
    noise_removal,
)
from driftmem.sampling.borderline_smote import borderline_smote
from driftmem.schemas.models import Dam3Config

logger = logging.getLogger(__name__)


class Dam3Model(MemoryModel):
    name = "dam3"

    def __init__(self, config: Optional[Dam3Config] = None):
        super().__init__(config)
        self.wm = MemoryBuffer(max_size=self.config.max_wm)
        self.fb: Optional[FullBayesModel] = None
        self.detector = KsDriftDetector(ws=self.config.ws, alpha=self.config.alpha)
        # minority instances moved LTM -> WM that have not come back yet
        self._parked_minority: Set[Tuple[int, int]] = set()
        self._noise_pending = False

    def _stm_predict(self, x: np.ndarray) -> Label:
        return self.fb.predict(x)

    def _working_memory(self) -> Optional[MemoryBuffer]:
        return self.wm

    def _train_step(self, instance: LabeledInstance, step: StepDiagnostics) -> None:
        cfg = self.config

        if self.fb is None:
            self.fb = FullBayesModel(instance.dim, cfg.fb_epsilon_scale)
        self.fb.update(instance)
        evicted = self._append_stm(instance)
        if evicted is not None:
            self.fb.downdate(evicted)

        theta = distance_threshold(self.stm, len(self.stm) - 1, cfg.k)
        if theta is not None:
            self._clean_and_exchange(instance, theta, step)

        if self._noise_pending:
            removed = noise_removal(self.wm, self.ltm, cfg.k, cfg.epsilon_dist)
            step.add_moved("noise_removed", removed)
            self._noise_pending = False

        if self.detector.update(self.trackers["stm"].value) is DriftSignal.DRIFT:
            step.drift_flag = 1
            self._on_drift(instance)

    def _clean_and_exchange(self, anchor: LabeledInstance, theta: float, step: StepDiagnostics) -> None:
        k = self.config.k
        inconsistent = inconsistent_set_ltm(self.ltm, anchor, theta, k)
        consistent = consistent_set_wm(self.wm, anchor, theta, k)
        if not len(inconsistent) and not len(consistent):
            return
        moved_to_wm, moved_to_ltm = exchange(self.ltm, self.wm, inconsistent, consistent)
        step.add_moved("ltm_to_wm", moved_to_wm)
        step.add_moved("wm_to_ltm", moved_to_ltm)
        minority = int(Label.POSITIVE)
        for key, label in zip(moved_to_wm.keys(), moved_to_wm.labels):
            if label == minority:
                self._parked_minority.add(key)
        for key in moved_to_ltm.keys():
            self._parked_minority.discard(key)
        self.transfer_log.minority_lost = len(self._parked_minority)
        self._noise_pending = True

    def _on_drift(self, instance: LabeledInstance) -> None:
        self.stm, delta = on_drift_split(self.stm, self.config.ws)
        added = self.transfer_on_drift(delta)
        self.fb = FullBayesModel.from_buffer(self.stm, self.config.fb_epsilon_scale)
        logger.info(
            "drift detected at t=%d: stm=%d transferred=%d synthetic=%d ltm=%d",
            instance.arrival_index,
            len(self.stm),
            len(delta),
            added,
            len(self.ltm),
        )

    def transfer_on_drift(self, delta: MemoryBuffer) -> int:
        """Balance the remaining set with borderline SMOTE and append it to the LTM.

        Returns the number of synthetic instances added.
        """
        if not len(delta):
            return 0
        balanced = borderline_smote(delta, self.config.smote, rng=self._rng, id_start=self._next_synthetic_id)
        added = len(balanced) - len(delta)
        self.allocate_ids(added)
        self.ltm.extend(balanced)
        self._noise_pending = True
        return added

    def _compress_memories(self, step: StepDiagnostics) -> None:
        before = step.compression_flag
        self.ltm = self._compress(self.ltm, step)
        self.wm = self._compress(self.wm, step)
        if step.compression_flag != before:
            self._noise_pending = True

    def snapshot(self) -> Dict[str, Any]:
        snap = super().snapshot()
        snap["memories"]["wm"] = self.wm.records()
        snap["detector"] = self.detector.state()
        return snap
