import numpy as np
import pytest

from driftmem.classifiers.knn import knn_predict
from driftmem.core.memory import MemoryBuffer
from driftmem.core.neighbors import euclidean_distance
from driftmem.core.types import Label
from driftmem.models.memory_ops import (
    compress,
    consistent_set_wm,
    distance_threshold,
    exchange,
    inconsistent_set_ltm,
    noise_removal,
)

from helpers import make_buffer, make_instance

P, N = Label.POSITIVE, Label.NEGATIVE


def neighborhood_oracle(memory, anchor, theta, k, same_label):
    dists = [euclidean_distance(anchor.features, memory.features[i]) for i in range(len(memory))]
    order = sorted(range(len(memory)), key=lambda i: (dists[i], int(memory.arrival[i])))[:k]
    out = []
    for i in order:
        label_ok = (memory.labels[i] == int(anchor.label)) == same_label
        if label_ok and dists[i] <= theta:
            out.append(i)
    return sorted(out)


def random_memory(rng, n, start=0):
    labels = [P if v else N for v in rng.random(n) < 0.4]
    return make_buffer(rng.normal(size=(n, 2)), labels, start=start)


class TestDistanceThreshold:
    def test_all_consistent(self):
        stm = make_buffer([[1.0], [2.0], [3.0], [4.0], [5.0], [0.0]], [P] * 6)
        assert distance_threshold(stm, 5, 5) == pytest.approx(5.0)

    def test_mixed_neighborhood(self):
        points = [[1.0], [2.0], [-1.5], [2.5], [-3.0], [0.0]]
        labels = [P, P, N, N, N, P]
        assert distance_threshold(make_buffer(points, labels), 5, 5) == pytest.approx(2.0)

    def test_undefined_when_all_opposite(self):
        stm = make_buffer([[1.0], [2.0], [3.0], [4.0], [5.0], [0.0]], [N] * 5 + [P])
        assert distance_threshold(stm, 5, 5) is None

    def test_undefined_for_single_instance(self):
        assert distance_threshold(make_buffer([[0.0]], [P]), 0, 5) is None


class TestCleaningSets:
    def test_empty_memories(self):
        anchor = make_instance([0.0], P)
        assert len(inconsistent_set_ltm(MemoryBuffer(), anchor, 1.0, 5)) == 0
        assert len(consistent_set_wm(MemoryBuffer(), anchor, 1.0, 5)) == 0

    def test_single_opposite_within_theta(self):
        ltm = make_buffer([[0.5]], [N])
        assert inconsistent_set_ltm(ltm, make_instance([0.0], P), 1.0, 5).tolist() == [0]

    def test_single_same_label_within_theta(self):
        wm = make_buffer([[0.5], [10.0]], [P, P])
        assert consistent_set_wm(wm, make_instance([0.0], P), 1.0, 5).tolist() == [0]

    def test_match_brute_force_oracle(self, rng):
        for _ in range(30):
            memory = random_memory(rng, 25)
            anchor = make_instance(rng.normal(size=2), P if rng.random() < 0.5 else N, 999)
            theta = float(rng.uniform(0.2, 1.5))
            got_is = sorted(inconsistent_set_ltm(memory, anchor, theta, 5).tolist())
            got_cs = sorted(consistent_set_wm(memory, anchor, theta, 5).tolist())
            assert got_is == neighborhood_oracle(memory, anchor, theta, 5, same_label=False)
            assert got_cs == neighborhood_oracle(memory, anchor, theta, 5, same_label=True)


class TestExchange:
    def test_empty_sets_identity(self, rng):
        ltm, wm = random_memory(rng, 10), random_memory(rng, 6, start=100)
        before = (ltm.keys(), wm.keys())
        exchange(ltm, wm, np.array([], dtype=int), np.array([], dtype=int))
        assert (ltm.keys(), wm.keys()) == before

    def test_four_for_four_swap(self):
        ltm = make_buffer([[float(i)] for i in range(8)], [N] * 4 + [P] * 4)
        wm = make_buffer([[float(i)] for i in range(6)], [P] * 4 + [N] * 2, start=50)
        moved_to_wm, moved_to_ltm = exchange(ltm, wm, np.arange(4), np.arange(4))
        assert (len(ltm), len(wm)) == (8, 6)
        assert set(moved_to_wm.keys()) <= set(wm.keys())
        assert set(moved_to_ltm.keys()) <= set(ltm.keys())
        assert not set(moved_to_wm.keys()) & set(ltm.keys())

    def test_multiset_conservation(self, rng):
        for _ in range(20):
            ltm, wm = random_memory(rng, 15), random_memory(rng, 12, start=100)
            union = sorted(ltm.keys() + wm.keys())
            inconsistent = rng.choice(15, size=rng.integers(0, 6), replace=False)
            consistent = rng.choice(12, size=rng.integers(0, 6), replace=False)
            exchange(ltm, wm, inconsistent, consistent)
            assert sorted(ltm.keys() + wm.keys()) == union
            assert not set(ltm.keys()) & set(wm.keys())


class TestCompress:
    def test_under_capacity_unchanged(self, rng):
        buf = random_memory(rng, 10)
        out, used = compress(buf, 10)
        assert out is buf
        assert used == 0

    def test_identical_pair_collapses(self):
        buf = make_buffer([[2.0, 2.0], [2.0, 2.0], [0.0, 0.0], [5.0, 0.0], [9.0, 9.0]], [P, P, N, N, N])
        out, used = compress(buf, 4, id_start=7)
        positives = out.features[out.labels == int(P)]
        assert positives.tolist() == [[2.0, 2.0]]
        assert (out.count_pos, out.count_neg) == (1, 2)
        assert used == 3
        assert sorted(out.synthetic.tolist()) == [7, 8, 9]
        assert np.all(out.arrival == 0)

    def test_singleton_class_kept(self):
        buf = make_buffer([[0.0], [1.0], [2.0], [3.0], [7.0]], [N, N, N, N, P])
        out, _ = compress(buf, 3)
        assert out.count_pos == 1
        assert out.features[out.labels == int(P)].tolist() == [[7.0]]
        assert out.arrival[out.labels == int(P)].tolist() == [4]

    def test_halves_and_beats_random_subset(self, rng):
        points = rng.normal(size=(100, 2))
        buf = make_buffer(points, [N] * 100)
        out, _ = compress(buf, 60, seed=3)
        assert len(out) == 50

        def within_cluster(centres):
            d = ((points[:, None, :] - centres[None, :, :]) ** 2).sum(axis=2)
            return d.min(axis=1).sum()

        subset = points[rng.choice(100, size=50, replace=False)]
        assert within_cluster(out.features) <= within_cluster(subset)

    def test_odd_count_rounds_up(self, rng):
        buf = make_buffer(rng.normal(size=(7, 2)), [P] * 7)
        out, _ = compress(buf, 5)
        assert len(out) == 4


class TestNoiseRemoval:
    def test_empty_wm(self, rng):
        assert len(noise_removal(MemoryBuffer(), random_memory(rng, 5), 5)) == 0

    def test_skipped_without_ltm(self, rng):
        wm = random_memory(rng, 5)
        assert len(noise_removal(wm, MemoryBuffer(), 5)) == 0
        assert len(wm) == 5

    def test_duplicate_in_ltm_removed(self):
        ltm = make_buffer([[0.0, 0.0], [1.0, 1.0], [1.2, 1.1], [0.9, 1.3]], [P, N, N, N])
        wm = MemoryBuffer([make_instance([0.0, 0.0], P, 50)])
        removed = noise_removal(wm, ltm, 4)
        assert removed.keys() == [(50, 0)]
        assert len(wm) == 0

    def test_matches_predict_and_compare_oracle(self, rng):
        for _ in range(10):
            ltm, wm = random_memory(rng, 30), random_memory(rng, 20, start=100)
            expected = [key for key, inst in zip(wm.keys(), wm) if knn_predict(ltm, inst.features, 5) is inst.label]
            removed = noise_removal(wm, ltm, 5)
            assert sorted(removed.keys()) == sorted(expected)
            assert not set(removed.keys()) & set(wm.keys())
