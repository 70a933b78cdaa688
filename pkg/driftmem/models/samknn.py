"""Dual-memory kNN baseline with a self-adjusting STM.

No working memory and no drift detector: LTM instances that conflict with
the newest STM instance are deleted, and the STM shrinks to whichever of its
full / half / quarter suffixes scores the best interleaved test-then-train
balanced accuracy. The discarded prefix is cleaned against the new STM and
moved to the LTM.
"""
import logging
from collections import deque
from typing import Deque, List, Optional, Tuple

import numpy as np

from driftmem.classifiers.knn import knn_predict, weighted_vote
from driftmem.core.memory import MemoryBuffer
from driftmem.core.neighbors import distances_to, k_smallest
from driftmem.core.types import Label, LabeledInstance
from driftmem.drift.balanced_accuracy import balanced_accuracy
from driftmem.models.base import MemoryModel
from driftmem.models.diagnostics import StepDiagnostics
from driftmem.models.memory_ops import distance_threshold, inconsistent_set_ltm
from driftmem.schemas.models import Dam3Config

logger = logging.getLogger(__name__)

# (arrival_index, y_true, y_pred)
HistoryEntry = Tuple[int, int, int]

WINDOW_NAMES = ("full", "half", "quarter")


class StmSizer:
    """Chooses the STM length from interleaved prediction histories.

    One history per candidate suffix. Histories are extended by one
    prediction per step and lose the entries that fall before their
    suffix's current start; a history is rebuilt from scratch only when it
    has no usable state.
    """

    def __init__(self, min_size: int, k: int, epsilon_dist: float):
        self.min_size = min_size
        self.k = k
        self.epsilon_dist = epsilon_dist
        self.histories: List[Optional[Deque[HistoryEntry]]] = [None] * len(WINDOW_NAMES)

    def candidate_sizes(self, n: int) -> List[int]:
        sizes = [n]
        while len(sizes) < len(WINDOW_NAMES) and sizes[-1] // 2 >= self.min_size:
            sizes.append(sizes[-1] // 2)
        return sizes

    def best_size(self, stm: MemoryBuffer) -> int:
        n = len(stm)
        if n < 2 * self.min_size:
            return n
        sizes = self.candidate_sizes(n)
        scores = []
        for i, size in enumerate(sizes):
            start = n - size
            history = self.histories[i]
            if history is None:
                history = self._rebuild(stm, start)
            else:
                self._advance(history, stm, start)
            self.histories[i] = history
            scores.append(round(self.score(history), 4))
        for i in range(len(sizes), len(WINDOW_NAMES)):
            self.histories[i] = None

        # argmax keeps the first (largest) window on ties
        best = int(np.argmax(scores))
        if best > 0:
            self.histories = [self.histories[best]] + [None] * (len(WINDOW_NAMES) - 1)
        return sizes[best]

    @staticmethod
    def score(history: Deque[HistoryEntry]) -> float:
        tp = fn = tn = fp = 0
        positive = int(Label.POSITIVE)
        for _, y_true, y_pred in history:
            if y_true == positive:
                tp += y_pred == positive
                fn += y_pred != positive
            else:
                tn += y_pred != positive
                fp += y_pred == positive
        return balanced_accuracy(tp, fn, tn, fp)

    def reset(self) -> None:
        self.histories = [None] * len(WINDOW_NAMES)

    def _predict_from(self, stm: MemoryBuffer, start: int, position: int) -> int:
        """kNN prediction for ``stm[position]`` trained on ``stm[start:position]``."""
        train = np.arange(start, position)
        distances = distances_to(stm.features[position], stm.features[start:position])
        full = np.full(len(stm), np.inf)
        full[train] = distances
        idx = k_smallest(full, self.k, stm.arrival, stm.synthetic, candidates=train)
        return int(weighted_vote(stm.labels[idx], full[idx], self.epsilon_dist))

    def _entry(self, stm: MemoryBuffer, start: int, position: int) -> HistoryEntry:
        return (
            int(stm.arrival[position]),
            int(stm.labels[position]),
            self._predict_from(stm, start, position),
        )

    def _rebuild(self, stm: MemoryBuffer, start: int) -> Deque[HistoryEntry]:
        return deque(self._entry(stm, start, i) for i in range(start + self.k, len(stm)))

    def _advance(self, history: Deque[HistoryEntry], stm: MemoryBuffer, start: int) -> None:
        start_arrival = int(stm.arrival[start])
        while history and history[0][0] < start_arrival:
            history.popleft()
        newest = len(stm) - 1
        if newest - start >= self.k:
            history.append(self._entry(stm, start, newest))


class SamKnnBaseline(MemoryModel):
    """Self-adjusting dual-memory kNN; every submodel is a weighted kNN."""

    name = "samknn-baseline"

    def __init__(self, config: Optional[Dam3Config] = None):
        super().__init__(config)
        self.sizer = StmSizer(self.config.ms, self.config.k, self.config.epsilon_dist)

    def _stm_predict(self, x: np.ndarray) -> Label:
        return knn_predict(self.stm, x, self.config.k, self.config.epsilon_dist)

    def _train_step(self, instance: LabeledInstance, step: StepDiagnostics) -> None:
        k = self.config.k
        self._append_stm(instance)

        theta = distance_threshold(self.stm, len(self.stm) - 1, k)
        if theta is not None and len(self.ltm):
            removed = self.ltm.remove(inconsistent_set_ltm(self.ltm, instance, theta, k))
            step.add_moved("ltm_removed", removed)
            self.transfer_log.minority_lost += removed.count_pos

        new_size = self.sizer.best_size(self.stm)
        if new_size < len(self.stm):
            prefix = self.stm.split_newest(new_size)
            before = len(prefix)
            self.clean_against_stm(prefix)
            self.ltm.extend(prefix)
            step.drift_flag = 1
            logger.info(
                "stm shrunk at t=%d: stm=%d transferred=%d cleaned=%d",
                instance.arrival_index,
                len(self.stm),
                len(prefix),
                before - len(prefix),
            )

    def clean_against_stm(self, samples: MemoryBuffer) -> None:
        """Delete, in place, samples inconsistent with any STM instance's neighborhood."""
        k = self.config.k
        if len(self.stm) <= k:
            return
        for position in range(len(self.stm)):
            if not len(samples):
                return
            theta = distance_threshold(self.stm, position, k)
            if theta is None:
                continue
            samples.remove(inconsistent_set_ltm(samples, self.stm[position], theta, k))
