import json

import numpy as np
import pandas as pd
import pytest

from driftmem.core.types import Label, Prediction
from driftmem.errors import ContractViolation
from driftmem.evaluation import (
    ConfusionCounts,
    MetricSet,
    SlidingConfusion,
    StreamModel,
    diagnostics_export,
    prequential_run,
)
from driftmem.evaluation.export import METRIC_COLUMNS
from driftmem.models import DIAGNOSTIC_COLUMNS, Dam3Model
from driftmem.schemas.models import Dam3Config
from eval.evaluators.metric_identities import evaluate_metric_identities

from helpers import gaussian_stream

P, N = Label.POSITIVE, Label.NEGATIVE


class Oracle:
    name = "oracle"

    def __init__(self, stream):
        self.labels = {inst.features.tobytes(): inst.label for inst in stream}

    def predict(self, x):
        return Prediction(self.labels[np.asarray(x).tobytes()], "oracle")

    def learn(self, instance):
        pass


class ConstantNegative:
    def predict(self, x):
        return Prediction(N, "constant")

    def learn(self, instance):
        pass


class Recorder:
    name = "recorder"

    def __init__(self):
        self.calls = []

    def predict(self, x):
        self.calls.append(("predict", float(x[0])))
        return Prediction(P, "recorder")

    def learn(self, instance):
        self.calls.append(("learn", float(instance.features[0])))


class TestMetrics:
    def test_unseen_classes_count_as_perfect(self):
        assert ConfusionCounts().metrics() == MetricSet.from_recalls(1.0, 1.0)

    def test_identities(self):
        counts = ConfusionCounts(tp=3, fn=1, tn=8, fp=2)
        metrics = counts.metrics()
        assert metrics.recall_pos == 0.75
        assert metrics.recall_neg == 0.8
        assert metrics.balanced_accuracy == pytest.approx(0.775)
        assert metrics.g_mean ** 2 == pytest.approx(0.6)

    def test_sliding_window_forgets(self):
        window = SlidingConfusion(2)
        for y_true, y_pred in [(P, N), (P, P), (P, P)]:
            window.add(y_true, y_pred)
        assert window.metrics().recall_pos == 1.0
        assert window.counts.total == 2

    def test_window_must_be_positive(self):
        with pytest.raises(ContractViolation):
            SlidingConfusion(0)


class TestPrequential:
    def test_models_satisfy_protocol(self):
        assert isinstance(Dam3Model(), StreamModel)
        assert isinstance(ConstantNegative(), StreamModel)

    def test_perfect_model(self, rng):
        stream = gaussian_stream(300, rng, positive_rate=0.2)
        result = prequential_run(Oracle(stream), stream, window=50)
        assert result.final == MetricSet.from_recalls(1.0, 1.0)
        assert result.model_name == "oracle"

    def test_constant_majority_model(self, rng):
        stream = gaussian_stream(300, rng, positive_rate=0.2)
        result = prequential_run(ConstantNegative(), stream)
        assert result.final.balanced_accuracy == 0.5
        assert result.final.g_mean == 0.0
        assert result.model_name == "ConstantNegative"
        assert result.diagnostics is None

    def test_predict_precedes_learn(self, rng):
        stream = gaussian_stream(5, rng)
        model = Recorder()
        prequential_run(model, stream)
        expected = []
        for inst in stream:
            expected += [("predict", float(inst.features[0])), ("learn", float(inst.features[0]))]
        assert model.calls == expected

    def test_empty_stream(self):
        result = prequential_run(ConstantNegative(), [])
        assert len(result) == 0
        assert result.metric_matrix().shape == (0, 4)

    def test_deterministic(self):
        stream = gaussian_stream(200, np.random.default_rng(2), flip_at=100, positive_rate=0.3)
        config = Dam3Config(ws=20)
        first = prequential_run(Dam3Model(config), stream, window=50)
        second = prequential_run(Dam3Model(config), stream, window=50)
        assert first.y_pred == second.y_pred
        assert first.source == second.source
        assert first.diagnostics == second.diagnostics


class TestExport:
    @pytest.fixture
    def exported(self, tmp_path):
        stream = gaussian_stream(100, np.random.default_rng(5), flip_at=50, positive_rate=0.3)
        result = prequential_run(Dam3Model(Dam3Config(ws=10, max_stm=40)), stream, window=20)
        files = diagnostics_export(result, tmp_path / "run", dataset="gauss", seed=5)
        return result, files

    def test_csv_shapes(self, exported):
        _, files = exported
        metrics = pd.read_csv(files["metrics"])
        diagnostics = pd.read_csv(files["diagnostics"])
        assert list(metrics.columns) == METRIC_COLUMNS
        assert list(diagnostics.columns) == DIAGNOSTIC_COLUMNS
        assert len(metrics) == len(diagnostics) == 100
        assert metrics["t"].tolist() == list(range(100))

    def test_transfer_columns_sum_to_totals(self, exported):
        result, files = exported
        diagnostics = pd.read_csv(files["diagnostics"])
        summary = json.loads(files["summary"].read_text(encoding="utf-8"))
        for column in ("ltm_to_wm_pos", "ltm_to_wm_neg", "wm_to_ltm_pos", "noise_removed_neg"):
            assert int(diagnostics[column].sum()) == summary[column]
        assert int(diagnostics["drift_flag"].sum()) == summary["drift_events"]
        assert summary["n_instances"] == 100
        assert summary["dataset"] == "gauss"

    def test_metric_identities_hold(self, exported):
        _, files = exported
        metrics = pd.read_csv(files["metrics"])
        assert evaluate_metric_identities(metrics, tolerance=1e-7)["holds"]
        assert evaluate_metric_identities(metrics, prefix="window_", tolerance=1e-7)["holds"]

    def test_line_endings_and_float_format(self, exported):
        _, files = exported
        raw = files["metrics"].read_bytes()
        assert b"\r\n" not in raw
        first_row = raw.split(b"\n")[1].decode()
        assert first_row.startswith("0,")
