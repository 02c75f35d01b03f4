"""Fuzzy dominant color histogram extraction."""

import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colorharmony import (ColorDescriptor, DataValidationError, default_partition,
                          descriptor_from_color_ids, extract_descriptor)
from colorharmony.descriptor import ExtractionConfig

PARTITION = default_partition()


def solid(rgb, w=16, h=16):
    img = np.zeros((h, w, 3), dtype=np.uint8)
    img[:, :] = rgb
    return img


class TestExtract:
    def test_uniform_red_single_entry(self):
        d = extract_descriptor(solid((255, 0, 0), 64, 64), PARTITION)
        assert len(d.entries) == 1
        cid, w = d.entries[0]
        assert w == pytest.approx(1.0)
        assert "red" in PARTITION.color(cid).name

    def test_half_red_half_blue(self):
        img = solid((255, 0, 0), 64, 64)
        img[:, 32:] = (0, 0, 255)
        d = extract_descriptor(img, PARTITION)
        assert len(d.entries) == 2
        weights = dict(d.entries)
        names = {PARTITION.color(cid).name for cid in weights}
        assert any("red" in n for n in names) and any("blue" in n for n in names)
        # Pixel-count oracle: each half holds exactly 50% of the pixels.
        for w in weights.values():
            assert w == pytest.approx(0.5, abs=0.02)

    def test_empty_image_rejected(self):
        with pytest.raises(DataValidationError):
            extract_descriptor(np.zeros((0, 0, 3), dtype=np.uint8), PARTITION)

    def test_single_pixel(self):
        d = extract_descriptor(solid((0, 255, 0), 1, 1), PARTITION)
        assert d.source_dims == (1, 1)
        assert sum(w for _, w in d.entries) == pytest.approx(1.0)

    def test_dims_recorded(self):
        d = extract_descriptor(solid((255, 0, 0), 20, 10), PARTITION)
        assert d.source_dims == (20, 10)

    def test_max_dominant_truncation(self):
        rng = np.random.default_rng(3)
        img = rng.integers(0, 256, (32, 32, 3)).astype(np.uint8)
        d = extract_descriptor(img, PARTITION, ExtractionConfig(min_share=0.0, max_dominant=3))
        assert len(d.entries) <= 3
        assert sum(w for _, w in d.entries) == pytest.approx(1.0)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(11)
        img = rng.integers(0, 256, (24, 24, 3)).astype(np.uint8)
        base = extract_descriptor(img, PARTITION)
        flat = img.reshape(-1, 3)
        shuffled = flat[rng.permutation(len(flat))].reshape(img.shape)
        perm = extract_descriptor(shuffled, PARTITION)
        assert base.color_ids == perm.color_ids
        for (_, w1), (_, w2) in zip(base.entries, perm.entries):
            assert w1 == pytest.approx(w2, abs=1e-12)

    def test_scale_stability(self):
        # Blocky synthetic image: halving resolution barely moves weights.
        rng = np.random.default_rng(5)
        img = np.zeros((64, 64, 3), dtype=np.uint8)
        img[:21] = (255, 0, 0)
        img[21:40] = (0, 0, 255)
        img[40:] = (250, 250, 40)
        img = np.clip(img.astype(int) + rng.integers(-2, 3, img.shape), 0, 255).astype(np.uint8)
        full = extract_descriptor(img, PARTITION)
        half = extract_descriptor(img[::2, ::2], PARTITION)
        w_full = dict(full.entries)
        w_half = dict(half.entries)
        for cid in set(w_full) | set(w_half):
            assert abs(w_full.get(cid, 0.0) - w_half.get(cid, 0.0)) < 0.05

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_normalization_property(self, seed):
        rng = np.random.default_rng(seed)
        img = rng.integers(0, 256, (8, 8, 3)).astype(np.uint8)
        d = extract_descriptor(img, PARTITION)
        assert sum(w for _, w in d.entries) == pytest.approx(1.0, abs=1e-9)
        assert list(d.entries) == sorted(d.entries, key=lambda e: (-e[1], e[0]))

    def test_latency_512(self):
        rng = np.random.default_rng(0)
        img = rng.integers(0, 256, (512, 512, 3)).astype(np.uint8)
        started = time.perf_counter()
        extract_descriptor(img, PARTITION)
        assert time.perf_counter() - started <= 2.0

    def test_downsampling_above_one_megapixel(self):
        img = solid((255, 0, 0), 1200, 1100)
        d = extract_descriptor(img, PARTITION)
        assert d.entries[0][1] == pytest.approx(1.0)
        assert d.source_dims == (1200, 1100)


class TestDescriptorFromIds:
    def test_uniform_weights(self):
        d = descriptor_from_color_ids([12, 1])
        assert dict(d.entries) == {12: 0.5, 1: 0.5}

    def test_explicit_weight_normalized(self):
        d = descriptor_from_color_ids([3], [2.0])
        assert d.entries == ((3, 1.0),)

    def test_duplicate_ids_rejected(self):
        with pytest.raises(DataValidationError, match="duplicate"):
            descriptor_from_color_ids([1, 1])

    def test_unknown_id_rejected(self):
        with pytest.raises(DataValidationError, match="unknown"):
            descriptor_from_color_ids([999], partition=PARTITION)

    def test_empty_rejected(self):
        with pytest.raises(DataValidationError):
            descriptor_from_color_ids([])

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(DataValidationError):
            descriptor_from_color_ids([1, 2], [1.0, 0.0])

    def test_sorted_by_weight_then_id(self):
        d = descriptor_from_color_ids([5, 2, 9], [1.0, 2.0, 1.0])
        assert d.color_ids == (2, 5, 9)


class TestDescriptorJson:
    def test_round_trip(self):
        d = descriptor_from_color_ids([4, 7], [3.0, 1.0])
        back = ColorDescriptor.from_json_dict(d.to_json_dict())
        assert back == d

    def test_dims_round_trip(self):
        d = extract_descriptor(solid((0, 255, 255), 6, 4), PARTITION)
        back = ColorDescriptor.from_json_dict(d.to_json_dict())
        assert back.source_dims == (6, 4)

    def test_invalid_sum_rejected(self):
        with pytest.raises(DataValidationError):
            ColorDescriptor(entries=((1, 0.5), (2, 0.2)))
