"""Perceptual distance between fuzzy colors and between color descriptors.

Colors are embedded by their membership centroids into the HSI cylinder,
(s*cos h, s*sin h, i), and compared with Euclidean distance normalized by
the cylinder diameter sqrt(5) so results live in [0, 1]. Descriptor
difference is a weighted bidirectional nearest-neighbor distance.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .colorspace import Partition
from .descriptor import ColorDescriptor
from .errors import DataValidationError

_CYLINDER_DIAMETER = math.sqrt(5.0)


def embed_color(partition: Partition, color_id: int) -> tuple[float, float, float]:
    """Cartesian embedding of a fuzzy color's centroid."""
    h, s, i = partition.centroid(color_id)
    rad = math.radians(h)
    return (s * math.cos(rad), s * math.sin(rad), i)


def color_distance(partition: Partition, a: int, b: int) -> float:
    """Perceptual difference between two fuzzy colors, in [0, 1]."""
    xa, ya, za = embed_color(partition, a)
    xb, yb, zb = embed_color(partition, b)
    d = math.sqrt((xa - xb) ** 2 + (ya - yb) ** 2 + (za - zb) ** 2)
    return min(1.0, d / _CYLINDER_DIAMETER)


@dataclass(frozen=True, eq=False)
class ColorDistanceTable:
    """Precomputed symmetric pairwise distances between all partition colors."""

    d: np.ndarray

    def __post_init__(self):
        d = self.d
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise DataValidationError(f"distance table must be square, got {d.shape}")
        if not np.allclose(np.diag(d), 0.0):
            raise DataValidationError("distance table diagonal must be zero")
        if not np.allclose(d, d.T):
            raise DataValidationError("distance table must be symmetric")
        if d.min() < 0 or d.max() > 1:
            raise DataValidationError("distances must be within [0, 1]")
        d.setflags(write=False)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def distance(self, a: int, b: int) -> float:
        return float(self.d[a, b])

    @classmethod
    def from_partition(cls, partition: Partition) -> "ColorDistanceTable":
        points = np.array([embed_color(partition, c.id) for c in partition.colors])
        diff = points[:, None, :] - points[None, :, :]
        d = np.sqrt((diff ** 2).sum(axis=2)) / _CYLINDER_DIAMETER
        np.fill_diagonal(d, 0.0)
        return cls(d=np.minimum(1.0, d))

    def dump_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id"] + list(range(self.n)))
            for i in range(self.n):
                writer.writerow([i] + [f"{v:.6f}" for v in self.d[i]])


def descriptor_difference(p: ColorDescriptor, q: ColorDescriptor,
                          table: ColorDistanceTable) -> float:
    """Perceptual difference between two descriptors, in [0, 1].

    Each side's entries are matched to their nearest color on the other
    side; the two weighted averages are averaged, which makes the measure
    symmetric and tolerant of descriptors of different lengths.
    """
    sub = table.d[np.ix_(p.color_ids, q.color_ids)]
    forward = float(np.dot(p.weights, sub.min(axis=1)))
    backward = float(np.dot(q.weights, sub.min(axis=0)))
    return 0.5 * forward + 0.5 * backward


def palette_similarity(p: ColorDescriptor, q: ColorDescriptor,
                       table: ColorDistanceTable) -> float:
    """Similarity between two descriptors: 1 - difference."""
    return 1.0 - descriptor_difference(p, q, table)


def group_mean_difference(ch: ColorDescriptor, members,
                          table: ColorDistanceTable) -> float:
    """Mean perceptual difference between a descriptor and a group's members."""
    members = list(members)
    if not members:
        raise DataValidationError("group has no members")
    return sum(descriptor_difference(ch, m, table) for m in members) / len(members)
