"""Color and descriptor distance measures."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colorharmony import (ColorDistanceTable, DataValidationError, color_distance,
                          default_partition, descriptor_difference,
                          descriptor_from_color_ids, group_mean_difference,
                          palette_similarity)
from colorharmony.colorspace import (CONSTANT_HUE, LINEAR, ChannelMembership,
                                     FuzzyColor, Partition)

PARTITION = default_partition()
TABLE = ColorDistanceTable.from_partition(PARTITION)


def random_descriptor(rng):
    n = int(rng.integers(1, 6))
    ids = rng.choice(92, size=n, replace=False).tolist()
    weights = rng.uniform(0.05, 1.0, n).tolist()
    return descriptor_from_color_ids(ids, weights)


descriptor_seeds = st.integers(0, 2**32 - 1)


class TestColorDistance:
    def test_self_distance_zero(self):
        for cid in (0, 7, 45, 90, 91):
            assert color_distance(PARTITION, cid, cid) == 0.0

    def test_symmetry(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            a, b = rng.integers(0, 92, 2)
            assert color_distance(PARTITION, int(a), int(b)) == pytest.approx(
                color_distance(PARTITION, int(b), int(a)), abs=1e-15)

    def test_achromatic_axis_pair(self):
        # Two gray-axis colors with intensity centroids 0 and 1 sit exactly
        # one cylinder height apart: distance 1/sqrt(5).
        any_sat = ChannelMembership(LINEAR, 0.0, 0.0, 1.0, 1.0)
        low = FuzzyColor(0, "floor", CONSTANT_HUE, any_sat,
                         ChannelMembership(LINEAR, 0, 0, 0, 0), achromatic=True)
        high = FuzzyColor(1, "ceiling", CONSTANT_HUE, any_sat,
                          ChannelMembership(LINEAR, 1, 1, 1, 1), achromatic=True)
        tiny = Partition(colors=(low, high), version="test")
        assert color_distance(tiny, 0, 1) == pytest.approx(1 / math.sqrt(5), abs=1e-12)

    def test_all_in_unit_interval(self):
        assert TABLE.d.min() >= 0.0
        assert TABLE.d.max() <= 1.0


class TestDistanceTable:
    def test_diagonal_zero(self):
        assert np.all(np.diag(TABLE.d) == 0.0)

    def test_matches_pointwise_distance(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            a, b = (int(x) for x in rng.integers(0, 92, 2))
            assert TABLE.distance(a, b) == pytest.approx(
                color_distance(PARTITION, a, b), abs=1e-12)

    def test_validation_rejects_asymmetry(self):
        bad = np.array([[0.0, 0.2], [0.3, 0.0]])
        with pytest.raises(DataValidationError):
            ColorDistanceTable(d=bad)

    def test_csv_dump(self, tmp_path):
        path = tmp_path / "table.csv"
        TABLE.dump_csv(path)
        lines = path.read_text().splitlines()
        assert len(lines) == 93  # header + 92 rows


class TestDescriptorDifference:
    def test_identity_zero(self):
        p = descriptor_from_color_ids([7, 61], [0.6, 0.4])
        assert descriptor_difference(p, p, TABLE) == 0.0

    def test_hand_expanded_two_entry_case(self):
        # P = {red: 1}, Q = {red: 0.5, blue: 0.5}:
        # forward = 1 * 0, backward = 0.5 * 0 + 0.5 * d(red, blue).
        red, blue = 7, 61
        d_rb = TABLE.distance(red, blue)
        p = descriptor_from_color_ids([red])
        q = descriptor_from_color_ids([red, blue])
        expected = 0.5 * 0.0 + 0.5 * (0.5 * 0.0 + 0.5 * d_rb)
        assert descriptor_difference(p, q, TABLE) == pytest.approx(expected, abs=1e-12)

    @settings(max_examples=100)
    @given(descriptor_seeds)
    def test_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        p, q = random_descriptor(rng), random_descriptor(rng)
        assert descriptor_difference(p, q, TABLE) == pytest.approx(
            descriptor_difference(q, p, TABLE), abs=1e-12)

    @settings(max_examples=100)
    @given(descriptor_seeds)
    def test_range(self, seed):
        rng = np.random.default_rng(seed)
        p, q = random_descriptor(rng), random_descriptor(rng)
        assert 0.0 <= descriptor_difference(p, q, TABLE) <= 1.0

    def test_monotone_under_farther_replacement(self):
        # Replacing one of Q's entries by a color farther from everything
        # in P must never decrease the difference.
        p = descriptor_from_color_ids([7])          # medium vivid red
        near, far = 4, 52                           # soft red vs vivid cyan
        assert TABLE.distance(7, far) > TABLE.distance(7, near)
        q_near = descriptor_from_color_ids([7, near], [0.5, 0.5])
        q_far = descriptor_from_color_ids([7, far], [0.5, 0.5])
        assert descriptor_difference(p, q_far, TABLE) >= descriptor_difference(
            p, q_near, TABLE)


class TestPaletteSimilarity:
    def test_self_similarity_one(self):
        p = descriptor_from_color_ids([10, 20, 30], [0.5, 0.3, 0.2])
        assert palette_similarity(p, p, TABLE) == 1.0

    def test_disjoint_monochrome(self):
        a, b = 7, 52
        p = descriptor_from_color_ids([a])
        q = descriptor_from_color_ids([b])
        assert palette_similarity(p, q, TABLE) == pytest.approx(
            1.0 - TABLE.distance(a, b), abs=1e-12)


class TestGroupMeanDifference:
    def test_single_identical_member(self):
        p = descriptor_from_color_ids([7, 61])
        assert group_mean_difference(p, [p], TABLE) == 0.0

    def test_mean_of_two_members(self):
        ch = descriptor_from_color_ids([7])
        m1 = descriptor_from_color_ids([4])
        m2 = descriptor_from_color_ids([52])
        d1 = descriptor_difference(ch, m1, TABLE)
        d2 = descriptor_difference(ch, m2, TABLE)
        assert group_mean_difference(ch, [m1, m2], TABLE) == pytest.approx(
            (d1 + d2) / 2, abs=1e-12)

    @settings(max_examples=50)
    @given(descriptor_seeds, st.integers(1, 8))
    def test_brute_force_mean(self, seed, k):
        rng = np.random.default_rng(seed)
        ch = random_descriptor(rng)
        members = [random_descriptor(rng) for _ in range(k)]
        brute = sum(descriptor_difference(ch, m, TABLE) for m in members) / k
        assert group_mean_difference(ch, members, TABLE) == pytest.approx(brute, abs=1e-12)

    def test_empty_group_rejected(self):
        with pytest.raises(DataValidationError):
            group_mean_difference(descriptor_from_color_ids([1]), [], TABLE)
