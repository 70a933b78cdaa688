import pandas as pd
import pytest

from eval.evaluators.ltm_balance import evaluate_ltm_balance
from eval.evaluators.metric_identities import evaluate_metric_identities
from eval.evaluators.minority_removal import evaluate_minority_removal


class TestLtmBalance:
    def test_median_and_trend(self):
        frame = pd.DataFrame({"t": range(10), "ltm_ir": [None, 9.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0]})
        result = evaluate_ltm_balance(frame, after=2)
        assert result["median_ir"] == 2.5
        assert result["slope"] > 0
        assert result["points"] == 8

    def test_undefined_ratios_only(self):
        frame = pd.DataFrame({"t": [0, 1, 2], "ltm_ir": [None, None, None]})
        assert evaluate_ltm_balance(frame, after=0) == {"median_ir": None, "slope": None, "points": 0}

    def test_single_point_has_no_slope(self):
        frame = pd.DataFrame({"t": [7], "ltm_ir": [1.5]})
        assert evaluate_ltm_balance(frame, after=0)["slope"] is None


class TestMinorityRemoval:
    def test_dam3_keeps_more(self):
        result = evaluate_minority_removal({"minority_lost": 3}, {"ltm_removed_pos": 10})
        assert result == {"dam3_lost": 3, "baseline_removed": 10, "dam3_keeps_more": True}

    def test_dam3_loses_more(self):
        assert not evaluate_minority_removal({"minority_lost": 5}, {"ltm_removed_pos": 1})["dam3_keeps_more"]


class TestMetricIdentities:
    def test_holds(self):
        frame = pd.DataFrame(
            {"balanced_accuracy": [1.0, 0.5], "g_mean": [1.0, 0.0], "recall_pos": [1.0, 0.0], "recall_neg": [1.0, 1.0]}
        )
        assert evaluate_metric_identities(frame)["holds"]

    def test_violation_reported(self):
        frame = pd.DataFrame(
            {"balanced_accuracy": [0.9], "g_mean": [0.5], "recall_pos": [0.5], "recall_neg": [0.5]}
        )
        result = evaluate_metric_identities(frame)
        assert not result["holds"]
        assert result["max_bacc_violation"] == pytest.approx(0.4)
        assert result["max_gmean_violation"] == 0.0
