"""Synthetic planted-palette corpus: determinism and ground-truth quality."""

import numpy as np
import pytest

from colorharmony import ColorDistanceTable, default_partition, descriptor_difference
from colorharmony.colorspace import HsiPixel, membership, rgb_to_hsi
from colorharmony.corpus import (CorpusConfig, build_color_clouds, generate_corpus,
                                 iter_image_dir, load_manifest, write_corpus)

PARTITION = default_partition()
TABLE = ColorDistanceTable.from_partition(PARTITION)
SMALL = CorpusConfig(palettes=3, images=24, noise=0.1, seed=5, image_size=16)


class TestClouds:
    def test_points_are_unambiguous(self):
        clouds = build_color_clouds(PARTITION, np.random.default_rng(0))
        assert len(clouds) >= 30
        for cid in list(clouds)[:5]:
            for point in clouds[cid][:10]:
                r, g, b = (point * 255).tolist()
                pix = rgb_to_hsi(r, g, b)
                assert membership(PARTITION.color(cid), pix) > 0.9
                foreign = max(membership(c, pix) for c in PARTITION.colors
                              if c.id != cid)
                assert foreign <= 0.55  # 0.5 plus uint8-free slack


class TestGenerate:
    def test_deterministic(self):
        a = generate_corpus(PARTITION, SMALL)
        b = generate_corpus(PARTITION, SMALL)
        assert a.manifest_dict() == b.manifest_dict()
        for (_, img_a), (_, img_b) in zip(a.images, b.images):
            assert np.array_equal(img_a, img_b)

    def test_seed_changes_output(self):
        a = generate_corpus(PARTITION, SMALL)
        b = generate_corpus(PARTITION, CorpusConfig(palettes=3, images=24, noise=0.1,
                                                    seed=6, image_size=16))
        assert a.manifest_dict() != b.manifest_dict()

    def test_noise_fraction(self):
        corpus = generate_corpus(PARTITION, SMALL)
        noise = sum(1 for a in corpus.assignments if a < 0)
        assert noise == round(SMALL.images * SMALL.noise)

    def test_separation_met(self):
        corpus = generate_corpus(PARTITION, SMALL)
        for i, a in enumerate(corpus.palettes):
            for b in corpus.palettes[i + 1:]:
                assert descriptor_difference(a, b, TABLE) >= SMALL.min_separation

    def test_image_descriptors_near_planted(self):
        from colorharmony import extract_descriptor

        corpus = generate_corpus(PARTITION, SMALL)
        for idx, (name, img) in enumerate(corpus.images[:8]):
            which = corpus.assignments[idx]
            if which < 0:
                continue
            d = extract_descriptor(img, PARTITION)
            assert descriptor_difference(d, corpus.palettes[which], TABLE) < 0.15


class TestWriteAndIterate:
    def test_round_trip(self, tmp_path):
        corpus = generate_corpus(PARTITION, SMALL)
        manifest_path = write_corpus(corpus, tmp_path / "corpus")
        manifest = load_manifest(manifest_path)
        assert len(manifest["images"]) == SMALL.images
        assert len(manifest["palettes"]) == SMALL.palettes

        items = list(iter_image_dir(tmp_path / "corpus"))
        assert len(items) == SMALL.images
        names = [name for name, _ in items]
        assert names == sorted(names)
        by_name = dict(corpus.images)
        for name, img in items[:5]:
            assert np.array_equal(img, by_name[name])

    def test_iter_rejects_non_directory(self, tmp_path):
        from colorharmony.errors import DataValidationError

        with pytest.raises(DataValidationError):
            list(iter_image_dir(tmp_path / "missing"))
