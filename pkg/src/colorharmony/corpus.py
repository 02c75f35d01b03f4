"""Synthetic planted-palette corpus generation.

Creates image sets with known ground truth: every image is painted from
one of a handful of planted palettes (pixel colors jittered inside the
fuzzy color plateaus) or, for a noise fraction, from a throwaway random
palette. The manifest records which palette produced each image, which
makes recovery of the planted palettes testable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

from .colorspace import ACHROMATIC_SAT, Partition, hsi_to_rgb_float_arrays
from .descriptor import ColorDescriptor, descriptor_from_color_ids
from .errors import DataValidationError
from .similarity import ColorDistanceTable, descriptor_difference

MANIFEST_NAME = "manifest.json"

# Plateau sampling stays this fraction away from the plateau edges so that
# uint8 quantization cannot push a pixel out of its target color.
_PLATEAU_MARGIN = 0.1

# A sampled point must not belong to any OTHER color above this degree;
# overlapping categories (black vs dark shades, gray vs muted hues) would
# otherwise blur the planted ground truth.
_MAX_FOREIGN_MEMBERSHIP = 0.5


@dataclass
class CorpusConfig:
    palettes: int = 8
    images: int = 500
    noise: float = 0.05
    seed: int = 0
    image_size: int = 48
    colors_per_palette: tuple[int, int] = (2, 4)
    min_entry_weight: float = 0.15
    min_separation: float = 0.26   # minimal pairwise difference between planted palettes
    weight_jitter: float = 0.2     # per-image multiplicative weight perturbation

    def __post_init__(self):
        if self.palettes < 1 or self.images < 1:
            raise DataValidationError("need at least one palette and one image")
        if not 0 <= self.noise < 1:
            raise DataValidationError(f"noise fraction {self.noise} must be in [0, 1)")
        if self.image_size < 4:
            raise DataValidationError("image_size must be at least 4")


@dataclass
class PlantedCorpus:
    config: CorpusConfig
    palettes: list[ColorDescriptor]
    images: list[tuple[str, np.ndarray]]
    assignments: list[int] = field(default_factory=list)  # palette index, -1 for noise

    def manifest_dict(self) -> dict:
        return {
            "seed": self.config.seed,
            "noise": self.config.noise,
            "image_size": self.config.image_size,
            "palettes": [p.to_json_dict() for p in self.palettes],
            "images": [{"file": name,
                        "palette": self.assignments[idx] if self.assignments[idx] >= 0 else "noise"}
                       for idx, (name, _) in enumerate(self.images)],
        }


def _plateau_box(m):
    width = m.c - m.b
    return (m.b + _PLATEAU_MARGIN * width, m.c - _PLATEAU_MARGIN * width)


def _foreign_membership(partition: Partition, color_id: int,
                        h: np.ndarray, s: np.ndarray, i: np.ndarray) -> np.ndarray:
    """Max membership of (h, s, i) points in every color except color_id."""
    worst = np.zeros_like(h)
    gray = s < ACHROMATIC_SAT
    for other in partition.colors:
        if other.id == color_id:
            continue
        if other.achromatic:
            hue_mu = 1.0
        else:
            hue_mu = np.where(gray, 1.0, other.hue_m.evaluate(h))
        mu = np.minimum(hue_mu, np.minimum(other.sat_m.evaluate(s),
                                           other.int_m.evaluate(i)))
        worst = np.maximum(worst, mu)
    return worst


def _point_cloud(partition: Partition, color_id: int, rng: np.random.Generator,
                 want: int = 256, batch: int = 1024, rounds: int = 3) -> np.ndarray:
    """RGB points that are feasibly and unambiguously this color."""
    color = partition.color(color_id)
    kept = []
    total = 0
    for _ in range(rounds):
        if color.achromatic:
            h = rng.uniform(0.0, 360.0, batch)
        else:
            hm = color.hue_m
            ab = (hm.b - hm.a) % 360.0
            ac = (hm.c - hm.a) % 360.0
            width = ac - ab
            t = rng.uniform(ab + _PLATEAU_MARGIN * width,
                            ac - _PLATEAU_MARGIN * width, batch)
            h = np.mod(hm.a + t, 360.0)
        s = rng.uniform(*_plateau_box(color.sat_m), batch)
        i = rng.uniform(*_plateau_box(color.int_m), batch)
        rgb = hsi_to_rgb_float_arrays(h, s, i)
        ok = (rgb.min(axis=1) >= 0.0) & (rgb.max(axis=1) <= 1.0)
        ok &= _foreign_membership(partition, color_id, h, s, i) <= _MAX_FOREIGN_MEMBERSHIP
        kept.append(rgb[ok])
        total += int(ok.sum())
        if total >= want:
            break
    return np.concatenate(kept, axis=0)


def build_color_clouds(partition: Partition, rng: np.random.Generator,
                       min_points: int = 64) -> dict[int, np.ndarray]:
    """Sampling support per color. Colors with too few clean points
    (out of gamut, or drowned by overlapping categories) are left out."""
    clouds = {}
    for color in partition.colors:
        points = _point_cloud(partition, color.id, rng)
        if len(points) >= min_points:
            clouds[color.id] = points
    return clouds


def _sample_palette(clouds: dict[int, np.ndarray], rng: np.random.Generator,
                    cfg: CorpusConfig) -> ColorDescriptor | None:
    eligible = sorted(clouds)
    n_colors = int(rng.integers(cfg.colors_per_palette[0], cfg.colors_per_palette[1] + 1))
    if len(eligible) < n_colors:
        return None
    chosen = [eligible[k] for k in rng.choice(len(eligible), size=n_colors, replace=False)]
    for _ in range(60):
        weights = rng.dirichlet(np.full(len(chosen), 3.0))
        if weights.min() >= cfg.min_entry_weight:
            return descriptor_from_color_ids(chosen, weights.tolist())
    return None


def plant_palettes(clouds: dict[int, np.ndarray], table: ColorDistanceTable,
                   cfg: CorpusConfig, rng: np.random.Generator,
                   pool_size: int = 240, max_rounds: int = 4) -> list[ColorDescriptor]:
    """Pick planted palettes pairwise separated by at least min_separation.

    Pure rejection cannot reach useful separations for more than a few
    palettes, so candidates are oversampled into a pool and a
    farthest-point sweep picks the spread-out subset. The pool grows and
    the sweep repeats until the separation target is met.
    """
    pool: list[ColorDescriptor] = []
    for _ in range(max_rounds):
        attempts = 0
        while len(pool) < pool_size and attempts < pool_size * 20:
            attempts += 1
            candidate = _sample_palette(clouds, rng, cfg)
            if candidate is not None:
                pool.append(candidate)
        if len(pool) >= cfg.palettes:
            chosen = _farthest_point_subset(pool, cfg.palettes, table)
            separation = min(
                descriptor_difference(pool[a], pool[b], table)
                for idx, a in enumerate(chosen) for b in chosen[idx + 1:]
            ) if len(chosen) > 1 else 1.0
            if separation >= cfg.min_separation:
                return [pool[i] for i in chosen]
        pool_size *= 2
    raise DataValidationError(
        f"could not plant {cfg.palettes} palettes separated by "
        f"{cfg.min_separation}; relax min_separation or palette count")


def _farthest_point_subset(pool, k: int, table: ColorDistanceTable) -> list[int]:
    d0 = np.array([descriptor_difference(pool[0], c, table) for c in pool])
    chosen = [int(np.argmax(d0))]
    min_d = np.array([descriptor_difference(pool[chosen[0]], c, table) for c in pool])
    while len(chosen) < min(k, len(pool)):
        nxt = int(np.argmax(min_d))
        chosen.append(nxt)
        dn = np.array([descriptor_difference(pool[nxt], c, table) for c in pool])
        min_d = np.minimum(min_d, dn)
    return chosen


def render_palette_image(clouds: dict[int, np.ndarray], palette: ColorDescriptor,
                         rng: np.random.Generator, size: int,
                         weight_jitter: float) -> np.ndarray:
    """Paint one image from a palette: contiguous pixel blocks per entry,
    block sizes following jittered weights, one jittered plateau point per
    entry plus light per-pixel noise."""
    n = size * size
    weights = np.array([w for _, w in palette.entries])
    weights = weights * rng.uniform(1.0 - weight_jitter, 1.0 + weight_jitter, len(weights))
    weights = weights / weights.sum()

    counts = np.floor(weights * n).astype(int)
    counts[0] += n - counts.sum()

    rows = []
    for (cid, _), count in zip(palette.entries, counts):
        if count <= 0:
            continue
        if cid not in clouds:
            raise DataValidationError(f"color {cid} is not renderable in RGB")
        cloud = clouds[cid]
        base = cloud[int(rng.integers(len(cloud)))]
        noise = rng.uniform(-0.004, 0.004, (count, 3))
        rows.append(np.clip(base[None, :] + noise, 0.0, 1.0))
    pixels = np.concatenate(rows, axis=0)
    img = np.clip(np.round(pixels * 255.0), 0, 255).astype(np.uint8)
    return img.reshape(size, size, 3)


def generate_corpus(partition: Partition, cfg: CorpusConfig,
                    table: ColorDistanceTable | None = None) -> PlantedCorpus:
    """Build the full synthetic corpus in memory."""
    table = table or ColorDistanceTable.from_partition(partition)
    rng = np.random.default_rng(cfg.seed)
    clouds = build_color_clouds(partition, rng)
    palettes = plant_palettes(clouds, table, cfg, rng)

    n_noise = int(round(cfg.images * cfg.noise))
    flags = np.zeros(cfg.images, dtype=bool)
    if n_noise:
        flags[rng.choice(cfg.images, size=n_noise, replace=False)] = True

    images = []
    assignments = []
    digits = len(str(max(cfg.images - 1, 1)))
    for idx in range(cfg.images):
        if flags[idx]:
            noise_palette = None
            while noise_palette is None:
                noise_palette = _sample_palette(clouds, rng, cfg)
            palette, assignment = noise_palette, -1
        else:
            which = int(rng.integers(len(palettes)))
            palette, assignment = palettes[which], which
        img = render_palette_image(clouds, palette, rng, cfg.image_size,
                                   cfg.weight_jitter)
        images.append((f"img_{idx:0{digits}d}.png", img))
        assignments.append(assignment)
    return PlantedCorpus(config=cfg, palettes=palettes, images=images,
                         assignments=assignments)


def write_corpus(corpus: PlantedCorpus, out_dir) -> Path:
    """Write PNGs plus the ground-truth manifest; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, img in corpus.images:
        Image.fromarray(img).save(out / name)
    manifest_path = out / MANIFEST_NAME
    manifest_path.write_text(
        json.dumps(corpus.manifest_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    return manifest_path


def load_manifest(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataValidationError(f"cannot parse manifest {path}: {exc}") from exc


def iter_image_dir(directory):
    """Yield (filename, decoded image) for every raster in a directory, sorted."""
    from .descriptor import load_image

    directory = Path(directory)
    if not directory.is_dir():
        raise DataValidationError(f"{directory} is not a directory")
    for path in sorted(directory.iterdir()):
        if path.suffix.lower() in (".png", ".jpg", ".jpeg"):
            yield path.name, load_image(path)
