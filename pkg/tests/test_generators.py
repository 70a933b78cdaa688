import numpy as np
import pytest

from driftmem.core.types import Label, LabeledInstance
from driftmem.errors import ContractViolation, GeneratorStarvationError, UnknownPresetError
from driftmem.generators import (
    DriftKind,
    DriftPoint,
    DriftSchedule,
    HyperplaneConcept,
    ImbalanceSchedule,
    NoisyConcept,
    SeaConcept,
    apply_imbalance,
    apply_noise,
    ground_truth_drifts,
    hyperplane_stream,
    preset_metadata,
    preset_stream,
    sea_stream,
)
from driftmem.generators.presets import preset_schedules
from driftmem.generators.sea import sea_label
from driftmem.presets.preset_store import canonical_name, is_preset

P, N = Label.POSITIVE, Label.NEGATIVE


def within_three_sigma(count, n, p):
    sigma = np.sqrt(n * p * (1 - p))
    return abs(count - n * p) <= 3 * sigma


class AlwaysNegative:
    dim = 2

    def draw(self, t):
        return np.zeros(2), N


class TestSchedules:
    def test_concept_index_switches_at_change_points(self):
        schedule = DriftSchedule(DriftKind.SUDDEN, (100, 200))
        assert [schedule.concept_index(t) for t in (0, 99, 100, 199, 200)] == [0, 0, 1, 1, 2]

    def test_gradual_transition(self, rng):
        schedule = DriftSchedule(DriftKind.GRADUAL, (100,), gradual_width=10)
        assert schedule.concept_at(99, rng) == 0
        assert schedule.concept_at(109, rng) == 1
        assert schedule.concept_at(110, rng) == 1
        early = sum(schedule.concept_at(100, rng) for _ in range(2000))
        assert within_three_sigma(early, 2000, 0.1)

    def test_invalid_schedules(self):
        with pytest.raises(ContractViolation):
            DriftSchedule(DriftKind.SUDDEN, (200, 100))
        with pytest.raises(ContractViolation):
            ImbalanceSchedule.static(0.5)
        with pytest.raises(ContractViolation):
            ImbalanceSchedule(kind="ramp", ratios=(1, 2, 3))

    def test_per_concept_ratio(self):
        drift, imbalance = preset_schedules("SEA_G", 1000)
        assert [imbalance.ratio_at(t, 1000, drift) for t in (0, 300, 600, 900)] == [4, 5, 2, 10]

    def test_ramp_endpoints(self):
        ramp = ImbalanceSchedule.ramp(1, 100)
        assert ramp.ratio_at(0, 101) == 1
        assert ramp.ratio_at(50, 101) == pytest.approx(50.5)
        assert ramp.ratio_at(100, 101) == 100


class TestSea:
    def test_label_rule(self):
        assert sea_label(np.array([1.0, 1.0, 9.0]), 8.0) is P
        assert sea_label(np.array([5.0, 5.0, 0.0]), 8.0) is N

    def test_threshold_changes_exactly_at_change_points(self):
        schedule = DriftSchedule(DriftKind.SUDDEN, (300, 600, 900))
        stream = list(sea_stream(schedule, ImbalanceSchedule.static(1), 0.0, 1200, seed=5))
        for inst in stream:
            threshold = (8.0, 9.0, 7.0, 9.5)[schedule.concept_index(inst.arrival_index)]
            assert inst.label is sea_label(inst.features, threshold)
        assert all(inst.features.shape == (3,) for inst in stream)

    @pytest.mark.parametrize("ratio", [1, 10])
    def test_static_imbalance(self, ratio):
        n = 10_000
        stream = sea_stream(DriftSchedule(), ImbalanceSchedule.static(ratio), 0.0, n, seed=1)
        positives = sum(inst.label is P for inst in stream)
        assert within_three_sigma(positives, n, 1 / (1 + ratio))

    def test_noise_keeps_scheduled_ratio(self):
        n = 10_000
        stream = list(sea_stream(DriftSchedule(), ImbalanceSchedule.static(10), 0.1, n, seed=2))
        positives = sum(inst.label is P for inst in stream)
        assert within_three_sigma(positives, n, 1 / 11)
        mismatched = sum(inst.label is not sea_label(inst.features, 8.0) for inst in stream)
        assert 0.03 * n < mismatched < 0.1 * n

    def test_invalid_noise_rate(self):
        with pytest.raises(ContractViolation):
            sea_stream(DriftSchedule(), ImbalanceSchedule.static(1), -0.1, 10)

    def test_concept_owns_its_generator(self):
        first, second = SeaConcept(seed=4), SeaConcept(seed=4)
        for t in range(20):
            a, b = first.draw(t), second.draw(t)
            np.testing.assert_array_equal(a[0], b[0])
            assert a[1] is b[1]


class TestHyperplane:
    def test_static_concept_matches_plane(self):
        concept = HyperplaneConcept(0.0, seed=2)
        weights = concept.weights.copy()
        for t in range(200):
            x, label = concept.draw(t)
            expected = P if weights @ x >= weights.sum() / 2 else N
            assert label is expected
        np.testing.assert_array_equal(concept.weights, weights)

    def test_weights_move_by_magnitude_per_step(self):
        concept = HyperplaneConcept(0.01, seed=2)
        before = concept.weights.copy()
        concept.advance_to(1)
        np.testing.assert_allclose(np.abs(concept.weights - before), 0.01)
        concept.advance_to(50)
        assert np.all(np.abs(concept.weights - before) <= 0.5 + 1e-12)

    def test_initial_directions_are_random(self):
        steps = []
        for seed in range(10):
            concept = HyperplaneConcept(0.01, seed=seed)
            before = concept.weights.copy()
            concept.advance_to(1)
            steps.extend(np.round((concept.weights - before) / 0.01).tolist())
        assert set(steps) == {-1.0, 1.0}

    def test_cannot_move_back(self):
        concept = HyperplaneConcept(0.01, seed=2)
        concept.advance_to(10)
        with pytest.raises(ContractViolation):
            concept.draw(5)

    def test_ramp_imbalance_deciles(self):
        n = 10_000
        labels = [inst.label for inst in hyperplane_stream(0.0, ImbalanceSchedule.ramp(1, 100), 0.0, n, seed=3)]
        first = sum(label is P for label in labels[: n // 10])
        last = sum(label is P for label in labels[-n // 10:])
        assert first > 3 * last
        assert last < 50


class TestTransforms:
    def stream(self, n=10_000):
        return [LabeledInstance(np.zeros(1), N, t) for t in range(n)]

    def test_zero_noise_is_identity(self):
        assert all(inst.label is N for inst in apply_noise(self.stream(100), 0.0, seed=1))

    def test_full_noise_flips_everything(self):
        assert all(inst.label is P for inst in apply_noise(self.stream(100), 1.0, seed=1))

    def test_noise_rate(self):
        flipped = sum(inst.label is P for inst in apply_noise(self.stream(), 0.1, seed=1))
        assert within_three_sigma(flipped, 10_000, 0.1)

    def test_noise_rate_out_of_range(self):
        with pytest.raises(ContractViolation):
            apply_noise(self.stream(10), 1.5)

    def test_noisy_concept_flips_raw_labels(self):
        always = NoisyConcept(AlwaysNegative(), 1.0, seed=0)
        assert all(always.draw(t)[1] is P for t in range(50))
        never = NoisyConcept(AlwaysNegative(), 0.0, seed=0)
        assert all(never.draw(t)[1] is N for t in range(50))
        with pytest.raises(ContractViolation):
            NoisyConcept(AlwaysNegative(), 2.0)

    def test_starvation(self):
        stream = apply_imbalance(AlwaysNegative(), ImbalanceSchedule.static(1), 50, seed=0)
        with pytest.raises(GeneratorStarvationError):
            list(stream)

    def test_non_positive_length(self):
        with pytest.raises(ContractViolation):
            apply_imbalance(AlwaysNegative(), ImbalanceSchedule.static(1), 0)


class TestPresets:
    def test_deterministic_per_seed(self):
        first = list(preset_stream("SEA_S", n=500, seed=3))
        second = list(preset_stream("SEA_S", n=500, seed=3))
        other = list(preset_stream("SEA_S", n=500, seed=4))
        assert [i.label for i in first] == [i.label for i in second]
        np.testing.assert_array_equal(
            np.vstack([i.features for i in first]), np.vstack([i.features for i in second])
        )
        assert not np.array_equal(np.vstack([i.features for i in first]), np.vstack([i.features for i in other]))

    def test_sea_s_observed_imbalance_over_full_run(self):
        labels = [inst.label for inst in preset_stream("SEA_S", seed=0)]
        positives = sum(label is P for label in labels)
        ratio = (len(labels) - positives) / positives
        assert len(labels) == 100_000
        assert abs(ratio - 10) <= 0.05 * 10

    @pytest.mark.parametrize("name, ratio", [("SEA_G", None), ("HyperFast", 10)])
    def test_noisy_presets_follow_imbalance(self, name, ratio):
        n = 20_000
        labels = [inst.label for inst in preset_stream(name, n=n, seed=1)]
        positives = sum(label is P for label in labels)
        if ratio is None:
            expected = sum(1 / (1 + r) for r in (4, 5, 2, 10)) / 4
        else:
            expected = 1 / (1 + ratio)
        assert within_three_sigma(positives, n, expected)

    def test_ground_truth_sudden(self):
        points = ground_truth_drifts("SEA_S")
        assert [p.position for p in points] == [25000, 50000, 75000]
        assert all(p.kind is DriftKind.SUDDEN for p in points)

    def test_ground_truth_gradual_width(self):
        points = ground_truth_drifts("sea_g", n=1000)
        assert [(p.position, p.width) for p in points] == [(250, 10), (500, 10), (750, 10)]

    def test_ground_truth_incremental(self):
        assert ground_truth_drifts("HyperFast") == [DriftPoint(0, DriftKind.INCREMENTAL, 50000)]

    def test_ground_truth_csv(self):
        assert ground_truth_drifts("weather.csv") == []

    def test_name_normalization(self):
        assert canonical_name("sea_s") == "SEA_S"
        assert canonical_name("hyper-fast") == "HyperFast"
        assert canonical_name("HYPERSLOW") == "HyperSlow"
        assert not is_preset("sea_x")

    def test_unknown_preset(self):
        with pytest.raises(UnknownPresetError, match="sea_x"):
            preset_stream("sea_x")

    def test_metadata(self):
        meta = preset_metadata("SEA_S", n=1000, seed=9)
        assert meta.change_points == [250, 500, 750]
        assert meta.n_features == 3
        assert meta.preset_pack_version == "2024.1"
        assert preset_metadata("HyperSlow", n=1000).imbalance == {"kind": "ramp", "ratios": [1.0, 100.0]}
