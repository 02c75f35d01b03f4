"""Streaming extraction of harmonious palettes from an image corpus.

Each incoming descriptor either joins the existing group it differs least
from (mean difference against all members) or founds a new group when
even the best group is further than the threshold. Groups that collect
enough members are promoted to averaged palettes, the knowledge base used
for harmony lookups.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .colorspace import Partition
from .descriptor import (ColorDescriptor, ExtractionConfig, _normalized_descriptor,
                         extract_descriptor)
from .errors import DataValidationError
from .similarity import ColorDistanceTable, descriptor_difference, group_mean_difference

log = logging.getLogger(__name__)

KB_VERSION = "kb-v1"


@dataclass
class MinerConfig:
    threshold: float = 0.25            # max mean difference to join a group
    min_group_size: int = 100          # members needed for promotion (desk scale: 10)
    min_palette_weight: float = 0.1    # mean weight below this is dropped when averaging
    centroid_mode: bool = False        # approximate group difference by its mean descriptor
    extraction: ExtractionConfig = field(default_factory=ExtractionConfig)

    def __post_init__(self):
        if not 0 < self.threshold < 1:
            raise DataValidationError(f"threshold must be in (0, 1), got {self.threshold}")
        if self.min_group_size < 1:
            raise DataValidationError("min_group_size must be >= 1")
        if not 0 <= self.min_palette_weight < 1:
            raise DataValidationError("min_palette_weight must be in [0, 1)")


@dataclass
class Group:
    id: int
    members: list[ColorDescriptor] = field(default_factory=list)
    member_refs: list[str] = field(default_factory=list)

    def add(self, descriptor: ColorDescriptor, ref: str | None = None) -> None:
        self.members.append(descriptor)
        self.member_refs.append(ref if ref is not None else str(len(self.member_refs)))

    def mean_descriptor(self, n_colors: int) -> ColorDescriptor:
        means = _mean_weights(self.members, n_colors)
        entries = [(cid, w) for cid, w in enumerate(means) if w > 0]
        return _normalized_descriptor(entries)


@dataclass(frozen=True)
class HarmoniousPalette:
    """An averaged group descriptor promoted to the knowledge base."""

    id: int
    entries: tuple[tuple[int, float], ...]
    member_count: int
    label: str | None = None

    def __post_init__(self):
        if not self.entries:
            raise DataValidationError("palette must have at least one entry")
        total = sum(w for _, w in self.entries)
        if abs(total - 1.0) > 1e-9:
            raise DataValidationError(f"palette weights sum to {total}, not 1")

    @property
    def color_ids(self) -> frozenset[int]:
        return frozenset(cid for cid, _ in self.entries)

    def as_descriptor(self) -> ColorDescriptor:
        return _normalized_descriptor(list(self.entries))

    def to_json_dict(self) -> dict:
        obj = {"id": self.id,
               "member_count": self.member_count,
               "entries": [{"id": cid, "w": w} for cid, w in self.entries]}
        if self.label is not None:
            obj["label"] = self.label
        return obj

    @classmethod
    def from_json_dict(cls, obj: dict) -> "HarmoniousPalette":
        try:
            entries = tuple(sorted(((int(e["id"]), float(e["w"])) for e in obj["entries"]),
                                   key=lambda e: (-e[1], e[0])))
            return cls(id=int(obj["id"]), entries=entries,
                       member_count=int(obj["member_count"]),
                       label=obj.get("label"))
        except (KeyError, TypeError, ValueError) as exc:
            raise DataValidationError(f"malformed palette: {exc}") from exc


def _mean_weights(members, n_colors: int) -> np.ndarray:
    acc = np.zeros(n_colors)
    for m in members:
        for cid, w in m.entries:
            acc[cid] += w
    return acc / len(members)


def assign(ch: ColorDescriptor, groups: list[Group], cfg: MinerConfig,
           table: ColorDistanceTable) -> int:
    """Route one descriptor: join the closest group or found a new one.

    A new group is founded only when the minimal mean difference strictly
    exceeds the threshold; ties between groups go to the lowest id.
    """
    best_id, best_diff = None, None
    for group in groups:
        if cfg.centroid_mode and len(group.members) > 1:
            diff = descriptor_difference(ch, group.mean_descriptor(table.n), table)
        else:
            diff = group_mean_difference(ch, group.members, table)
        if best_diff is None or diff < best_diff:
            best_id, best_diff = group.id, diff

    if best_diff is not None and best_diff <= cfg.threshold:
        groups[best_id].add(ch)
        return best_id
    group = Group(id=len(groups))
    group.add(ch)
    groups.append(group)
    return group.id


@dataclass
class MiningStats:
    items_total: int = 0
    items_processed: int = 0
    items_failed: int = 0
    group_count: int = 0
    promoted_count: int = 0
    seconds_total: float = 0.0
    seconds_per_image: float = 0.0
    founded_at: list[int] = field(default_factory=list)

    def founding_curve(self, bucket: int = 1000) -> list[dict]:
        """New-group counts and the cumulative founding rate per bucket of items."""
        if bucket < 1:
            raise DataValidationError("bucket must be >= 1")
        curve = []
        cumulative = 0
        for start in range(0, self.items_processed, bucket):
            end = min(start + bucket, self.items_processed)
            new = sum(1 for idx in self.founded_at if start <= idx < end)
            cumulative += new
            curve.append({"start": start, "end": end, "new_groups": new,
                          "cumulative_groups": cumulative,
                          "cumulative_rate": cumulative / end})
        return curve

    def to_json_dict(self) -> dict:
        return {
            "items_total": self.items_total,
            "items_processed": self.items_processed,
            "items_failed": self.items_failed,
            "group_count": self.group_count,
            "promoted_count": self.promoted_count,
            "seconds_total": self.seconds_total,
            "seconds_per_image": self.seconds_per_image,
            "founded_at": list(self.founded_at),
        }


def average_palette(group: Group, cfg: MinerConfig, n_colors: int,
                    palette_id: int | None = None) -> HarmoniousPalette:
    """Average a group's member descriptors into a palette.

    Each color's weight is its mean across members (absent counts as 0);
    colors whose mean falls below cfg.min_palette_weight are dropped and
    the rest renormalized.
    """
    if len(group.members) < cfg.min_group_size:
        raise DataValidationError(
            f"group {group.id} has {len(group.members)} members, "
            f"needs {cfg.min_group_size} for promotion")
    means = _mean_weights(group.members, n_colors)
    entries = [(cid, float(w)) for cid, w in enumerate(means)
               if w >= cfg.min_palette_weight]
    if not entries:
        top = int(np.argmax(means))
        entries = [(top, float(means[top]))]
    total = sum(w for _, w in entries)
    entries = sorted(((cid, w / total) for cid, w in entries), key=lambda e: (-e[1], e[0]))
    drift = 1.0 - sum(w for _, w in entries)
    if drift != 0.0:
        entries[0] = (entries[0][0], entries[0][1] + drift)
        entries.sort(key=lambda e: (-e[1], e[0]))
    return HarmoniousPalette(
        id=group.id if palette_id is None else palette_id,
        entries=tuple(entries),
        member_count=len(group.members))


def mine(corpus, partition: Partition, cfg: MinerConfig | None = None,
         table: ColorDistanceTable | None = None):
    """Single streaming pass over (item_id, image) pairs.

    Returns (groups, palettes, stats). Items that fail to decode or
    extract are logged and skipped; they never abort the run.
    """
    cfg = cfg or MinerConfig()
    table = table or ColorDistanceTable.from_partition(partition)
    groups: list[Group] = []
    stats = MiningStats()
    started = time.perf_counter()

    for item_id, image in corpus:
        stats.items_total += 1
        try:
            if isinstance(image, ColorDescriptor):
                ch = image
            else:
                ch = extract_descriptor(image, partition, cfg.extraction)
        except (DataValidationError, OSError) as exc:
            stats.items_failed += 1
            log.warning("skipping %s: %s", item_id, exc)
            continue
        before = len(groups)
        gid = assign(ch, groups, cfg, table)
        groups[gid].member_refs[-1] = str(item_id)
        if len(groups) > before:
            stats.founded_at.append(stats.items_processed)
        stats.items_processed += 1

    stats.seconds_total = time.perf_counter() - started
    if stats.items_processed:
        stats.seconds_per_image = stats.seconds_total / stats.items_processed
    stats.group_count = len(groups)

    palettes = [average_palette(g, cfg, len(partition))
                for g in groups if len(g.members) >= cfg.min_group_size]
    stats.promoted_count = len(palettes)
    return groups, palettes, stats


def save_kb(palettes, path) -> None:
    """Write the palette knowledge base file."""
    obj = {"version": KB_VERSION,
           "palettes": [p.to_json_dict() for p in palettes]}
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def load_kb(path) -> list[HarmoniousPalette]:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataValidationError(f"cannot parse knowledge base {path}: {exc}") from exc
    if not isinstance(obj, dict) or "palettes" not in obj:
        raise DataValidationError(f"knowledge base {path} missing 'palettes'")
    palettes = [HarmoniousPalette.from_json_dict(p) for p in obj["palettes"]]
    seen = set()
    for p in palettes:
        if p.id in seen:
            raise DataValidationError(f"duplicate palette id {p.id} in {path}")
        seen.add(p.id)
    return palettes


def save_convergence_csv(stats: MiningStats, path, bucket: int = 1000) -> None:
    rows = stats.founding_curve(bucket=bucket)
    lines = ["start,end,new_groups,cumulative_groups,cumulative_rate"]
    for row in rows:
        lines.append(f"{row['start']},{row['end']},{row['new_groups']},"
                     f"{row['cumulative_groups']},{row['cumulative_rate']:.6f}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
