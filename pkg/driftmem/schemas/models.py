from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SmoteConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k_interp: int = Field(default=5, ge=1, description="Minority neighbors used for interpolation.")
    m_danger: int = Field(default=5, ge=1, description="Neighbors used to classify minority instances.")
    seed: int = Field(default=0, description="Seed used when no generator is passed in.")


class Dam3Config(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int = Field(default=5, ge=1, description="Neighbors for every kNN classifier and for cleaning.")
    ws: int = Field(default=50, ge=1, description="Drift detector window; each of reference/test holds ws values.")
    ms: Optional[int] = Field(default=None, ge=1, description="Weighting window; defaults to ws.")
    alpha: float = Field(default=0.01, gt=0.0, lt=1.0, description="KS significance level.")
    max_stm: int = Field(default=1000, ge=2)
    max_ltm: int = Field(default=2000, ge=2)
    max_wm: int = Field(default=2000, ge=2)
    smote: SmoteConfig = Field(default_factory=SmoteConfig)
    epsilon_dist: float = Field(default=1e-12, gt=0.0, description="Distance clamp for exact duplicates.")
    fb_epsilon_scale: float = Field(default=1e-6, gt=0.0, description="Covariance ridge as a fraction of trace/d.")
    seed: int = Field(default=0, description="Seeds oversampling and compression.")

    @model_validator(mode="after")
    def _check_windows(self) -> "Dam3Config":
        if self.ms is None:
            self.ms = self.ws
        if self.ms > self.max_stm:
            raise ValueError(f"ms ({self.ms}) must not exceed max_stm ({self.max_stm})")
        if self.ws >= self.max_stm:
            raise ValueError(f"ws ({self.ws}) must be smaller than max_stm ({self.max_stm})")
        for name in ("max_stm", "max_ltm", "max_wm"):
            if getattr(self, name) < 2 * self.k:
                raise ValueError(f"{name} must be at least 2*k = {2 * self.k}")
        return self


class DatasetSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label_column: str
    positive_value: str = Field(..., description="Raw label value mapped to the Positive (minority) class.")
    negative_value: Optional[str] = Field(
        default=None, description="If set, any label other than positive/negative is a parse error."
    )
    feature_columns: Optional[List[str]] = Field(
        default=None, description="Feature columns in order; all non-label columns when omitted."
    )


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dataset: str = Field(..., description="Preset name (sea_s, sea_g, hyper_fast, hyper_slow) or CSV path.")
    n: Optional[int] = Field(default=None, ge=1, description="Stream length for presets.")
    label_column: Optional[str] = None
    positive_value: Optional[str] = None
    normalize: bool = False
    model: Literal["dam3", "samknn-baseline"] = "dam3"
    dam3: Dam3Config = Field(default_factory=Dam3Config)
    seeds: List[int] = Field(default_factory=lambda: [0], min_length=1)
    window: int = Field(default=500, ge=1, description="Sliding metric window.")
    threads: Optional[int] = Field(default=None, ge=1)
    out: str = "runs"


class MetricSummary(BaseModel):
    balanced_accuracy: float
    g_mean: float
    recall_pos: float
    recall_neg: float


class RunSummary(BaseModel):
    model: str
    dataset: str
    seed: int
    n_instances: int
    metrics: MetricSummary
    windowed_metrics: MetricSummary
    drift_events: int
    compression_events: int
    ltm_to_wm_pos: int
    ltm_to_wm_neg: int
    wm_to_ltm_pos: int
    wm_to_ltm_neg: int
    noise_removed_pos: int
    noise_removed_neg: int
    ltm_removed_pos: int
    ltm_removed_neg: int
    minority_lost: int
    final_ltm_ir: Optional[float]
    duration_seconds: float
    run_metadata: Dict[str, Any]


class StreamMetadata(BaseModel):
    preset: str
    seed: int
    n: int
    n_features: int
    change_points: List[int]
    drift_kind: str
    gradual_width: Optional[int] = None
    imbalance: Dict[str, Any]
    noise_rate: float
    drift_magnitude: Optional[float] = None
    preset_pack_version: str
