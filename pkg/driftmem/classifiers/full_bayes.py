"""Full (multivariate Gaussian) Bayes classifier with rank-1 update/downdate.

Used as the STM classifier: the model mirrors the STM window, so every
instance entering the window is absorbed and every instance leaving it is
removed again.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
from scipy.stats import multivariate_normal

from driftmem.core.memory import MemoryBuffer
from driftmem.core.types import Label, LabeledInstance
from driftmem.errors import ContractViolation


@dataclass
class GaussianClassStats:
    dim: int
    n: int = 0
    mean: np.ndarray = field(default=None)
    # sum of outer products of deviations from the running mean
    scatter: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.mean is None:
            self.mean = np.zeros(self.dim)
        if self.scatter is None:
            self.scatter = np.zeros((self.dim, self.dim))

    def add(self, x: np.ndarray) -> None:
        self.n += 1
        delta = x - self.mean
        self.mean = self.mean + delta / self.n
        self.scatter = self.scatter + np.outer(delta, x - self.mean)
        self.scatter = (self.scatter + self.scatter.T) / 2.0

    def remove(self, x: np.ndarray) -> None:
        if self.n <= 0:
            raise ContractViolation("cannot downdate a class with no absorbed instances")
        if self.n == 1:
            self.n = 0
            self.mean = np.zeros(self.dim)
            self.scatter = np.zeros((self.dim, self.dim))
            return
        old_mean = self.mean
        self.n -= 1
        self.mean = (old_mean * (self.n + 1) - x) / self.n
        self.scatter = self.scatter - np.outer(x - self.mean, x - old_mean)
        self.scatter = (self.scatter + self.scatter.T) / 2.0

    def covariance(self) -> np.ndarray:
        if self.n < 2:
            raise ContractViolation("covariance needs at least two instances")
        return self.scatter / (self.n - 1)

    def regularized_covariance(self, epsilon_scale: float) -> np.ndarray:
        cov = self.covariance()
        ridge = epsilon_scale * float(np.trace(cov)) / self.dim
        if ridge <= 0.0:
            ridge = epsilon_scale
        return cov + ridge * np.eye(self.dim)

    def log_density(self, x: np.ndarray, epsilon_scale: float) -> float:
        cov = self.regularized_covariance(epsilon_scale)
        return float(multivariate_normal.logpdf(x, mean=self.mean, cov=cov))


class FullBayesModel:
    def __init__(self, dim: int, epsilon_scale: float = 1e-6):
        if epsilon_scale <= 0:
            raise ContractViolation("epsilon_scale must be positive")
        self.dim = dim
        self.epsilon_scale = epsilon_scale
        self.stats: Dict[Label, GaussianClassStats] = {
            Label.POSITIVE: GaussianClassStats(dim),
            Label.NEGATIVE: GaussianClassStats(dim),
        }

    @classmethod
    def from_buffer(cls, buffer: MemoryBuffer, epsilon_scale: float = 1e-6) -> "FullBayesModel":
        model = cls(buffer.dim, epsilon_scale)
        for label in Label:
            rows = buffer.features[buffer.mask_of(label)]
            st = model.stats[label]
            st.n = len(rows)
            if st.n:
                st.mean = rows.mean(axis=0)
                centered = rows - st.mean
                st.scatter = centered.T @ centered
        return model

    @property
    def total(self) -> int:
        return sum(s.n for s in self.stats.values())

    def prior(self, label: Label) -> float:
        total = self.total
        return self.stats[label].n / total if total else 0.0

    def update(self, instance: LabeledInstance) -> "FullBayesModel":
        self.stats[instance.label].add(self._check(instance.features))
        return self

    def downdate(self, instance: LabeledInstance) -> "FullBayesModel":
        self.stats[instance.label].remove(self._check(instance.features))
        return self

    def log_scores(self, x) -> Optional[Dict[Label, float]]:
        """log p(y) + log f(x|y) per class, or None while a class has fewer than two instances."""
        x = self._check(x)
        if any(s.n < 2 for s in self.stats.values()):
            return None
        total = self.total
        return {
            label: math.log(s.n / total) + s.log_density(x, self.epsilon_scale)
            for label, s in self.stats.items()
        }

    def predict(self, x) -> Label:
        scores = self.log_scores(x)
        if scores is None:
            pos, neg = self.stats[Label.POSITIVE].n, self.stats[Label.NEGATIVE].n
            return Label.POSITIVE if pos >= neg else Label.NEGATIVE
        return Label.POSITIVE if scores[Label.POSITIVE] >= scores[Label.NEGATIVE] else Label.NEGATIVE

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dim,):
            raise ContractViolation(f"dimension mismatch: model has {self.dim} features, got {x.shape}")
        return x
