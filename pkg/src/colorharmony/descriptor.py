"""Fuzzy dominant color histograms.

An image's descriptor lists the fuzzy colors that dominate it, with
normalized weights. Every pixel contributes its graded membership to every
color (no winner-take-all), so overlapping categories share mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .colorspace import ACHROMATIC_SAT, Partition, rgb_to_hsi_arrays
from .errors import DataValidationError

DEFAULT_MIN_SHARE = 0.05
DEFAULT_MAX_DOMINANT = 8

# Images above this many pixels are stride-subsampled before accumulation.
_DOWNSAMPLE_PIXELS = 1_000_000


@dataclass(frozen=True)
class ExtractionConfig:
    min_share: float = DEFAULT_MIN_SHARE
    max_dominant: int = DEFAULT_MAX_DOMINANT

    def __post_init__(self):
        if not 0 <= self.min_share < 1:
            raise DataValidationError(f"min_share must be in [0, 1), got {self.min_share}")
        if self.max_dominant < 1:
            raise DataValidationError(f"max_dominant must be >= 1, got {self.max_dominant}")


@dataclass(frozen=True)
class ColorDescriptor:
    """Dominant fuzzy colors of an image: (color_id, weight) pairs.

    Weights sum to 1 and are sorted descending (ties by id). source_dims
    is (width, height) for descriptors extracted from real rasters and
    None for synthetic ones.
    """

    entries: tuple[tuple[int, float], ...]
    source_dims: tuple[int, int] | None = None

    def __post_init__(self):
        if not self.entries:
            raise DataValidationError("descriptor must have at least one entry")
        ids = [cid for cid, _ in self.entries]
        if len(set(ids)) != len(ids):
            raise DataValidationError("descriptor has duplicate color ids")
        weights = [w for _, w in self.entries]
        if any(w <= 0 for w in weights):
            raise DataValidationError("descriptor weights must be positive")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise DataValidationError(f"descriptor weights sum to {sum(weights)}, not 1")
        if list(self.entries) != sorted(self.entries, key=lambda e: (-e[1], e[0])):
            raise DataValidationError("descriptor entries must be sorted by weight descending")

    @property
    def color_ids(self) -> tuple[int, ...]:
        return tuple(cid for cid, _ in self.entries)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for _, w in self.entries)

    @property
    def dominant_id(self) -> int:
        return self.entries[0][0]

    def to_json_dict(self) -> dict:
        obj = {"entries": [{"id": cid, "w": w} for cid, w in self.entries]}
        if self.source_dims is not None:
            obj["width"], obj["height"] = self.source_dims
        return obj

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ColorDescriptor":
        try:
            entries = [(int(e["id"]), float(e["w"])) for e in obj["entries"]]
        except (KeyError, TypeError) as exc:
            raise DataValidationError(f"malformed descriptor: {exc}") from exc
        dims = None
        if "width" in obj and "height" in obj:
            dims = (int(obj["width"]), int(obj["height"]))
        return _normalized_descriptor(entries, source_dims=dims)


def _normalized_descriptor(entries, source_dims=None) -> ColorDescriptor:
    total = sum(w for _, w in entries)
    if total <= 0:
        raise DataValidationError("descriptor has no positive mass")
    norm = sorted(((cid, w / total) for cid, w in entries), key=lambda e: (-e[1], e[0]))
    # Absorb any residual float drift into the largest entry.
    drift = 1.0 - sum(w for _, w in norm)
    if drift != 0.0:
        norm[0] = (norm[0][0], norm[0][1] + drift)
        norm.sort(key=lambda e: (-e[1], e[0]))
    return ColorDescriptor(entries=tuple(norm), source_dims=source_dims)


def load_image(path) -> np.ndarray:
    """Decode a PNG/JPEG file into an (H, W, 3) uint8 RGB array."""
    try:
        with Image.open(path) as img:
            return np.asarray(img.convert("RGB"))
    except (OSError, ValueError) as exc:
        raise DataValidationError(f"cannot decode image {path}: {exc}") from exc


def extract_descriptor(image: np.ndarray, partition: Partition,
                       cfg: ExtractionConfig | None = None) -> ColorDescriptor:
    """Compute the fuzzy dominant color histogram of an RGB raster.

    Accumulates membership mass per fuzzy color over all pixels,
    normalizes, drops colors below cfg.min_share, truncates to
    cfg.max_dominant and renormalizes.
    """
    cfg = cfg or ExtractionConfig()
    image = np.asarray(image)
    if image.ndim == 2:
        image = np.stack([image] * 3, axis=-1)
    if image.ndim != 3 or image.shape[2] < 3:
        raise DataValidationError(f"expected an (H, W, 3) raster, got shape {image.shape}")
    height, width = image.shape[:2]
    if height * width == 0:
        raise DataValidationError("cannot extract a descriptor from an empty image")

    if height * width > _DOWNSAMPLE_PIXELS:
        stride = math.ceil(math.sqrt(height * width / _DOWNSAMPLE_PIXELS))
        image = image[::stride, ::stride]

    pixels = image[:, :, :3].reshape(-1, 3)
    h, s, i = rgb_to_hsi_arrays(pixels)
    mass = _membership_mass(partition, h, s, i)

    total = float(mass.sum())
    assert total > 0, "partition coverage guarantees nonzero mass"
    weights = mass / total

    entries = [(cid, float(w)) for cid, w in enumerate(weights) if w >= cfg.min_share]
    if not entries:
        # Extremely fragmented image: fall back to the single heaviest color.
        top = int(np.argmax(weights))
        entries = [(top, float(weights[top]))]
    entries.sort(key=lambda e: (-e[1], e[0]))
    entries = entries[:cfg.max_dominant]
    return _normalized_descriptor(entries, source_dims=(width, height))


def _membership_mass(partition: Partition, h, s, i) -> np.ndarray:
    """Total membership mass per color over pixel channel arrays."""
    gray = s < ACHROMATIC_SAT
    cache: dict = {}

    def channel(m, values):
        key = (m, values.ctypes.data)
        if key not in cache:
            cache[key] = m.evaluate(values)
        return cache[key]

    mass = np.empty(len(partition))
    for color in partition.colors:
        if color.achromatic:
            hue_mu = 1.0
        else:
            hue_mu = np.where(gray, 1.0, channel(color.hue_m, h))
        mu = np.minimum(hue_mu, np.minimum(channel(color.sat_m, s),
                                           channel(color.int_m, i)))
        mass[color.id] = mu.sum()
    return mass


def descriptor_from_color_ids(ids, weights=None,
                              partition: Partition | None = None) -> ColorDescriptor:
    """Build a synthetic descriptor from explicit fuzzy color ids.

    Weights default to uniform; when given they must be positive and are
    normalized. If a partition is supplied, ids are checked against it.
    """
    ids = list(ids)
    if not ids:
        raise DataValidationError("descriptor needs at least one color id")
    if len(set(ids)) != len(ids):
        raise DataValidationError(f"duplicate color ids in {ids}")
    if partition is not None:
        for cid in ids:
            partition.color(cid)  # raises on unknown id
    if weights is None:
        weights = [1.0] * len(ids)
    else:
        weights = [float(w) for w in weights]
        if len(weights) != len(ids):
            raise DataValidationError("ids and weights must have the same length")
        if any(w <= 0 for w in weights):
            raise DataValidationError("weights must be positive")
    return _normalized_descriptor(list(zip(ids, weights)))
