"""Fuzzy HSI color space: trapezoidal channel memberships, the default
92-color partition, and RGB/HSI conversion.

A partition is a list of fuzzy colors, each defined by one membership
function per HSI channel. A pixel's membership in a color is the min over
the three channels. The default partition tiles hue into 10 overlapping
bins and saturation/intensity into 3 bands each (90 chromatic colors),
plus black and white.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataValidationError

LINEAR = "trapezoid-linear"
CIRCULAR = "trapezoid-circular"

# Below this saturation, hue is numerically meaningless: the hue channel is
# treated as fully matching for every color.
ACHROMATIC_SAT = 0.05

DEFAULT_PARTITION_VERSION = "default-10x3x3-v1"

_HUE_CENTERS = [12.0, 48.0, 84.0, 120.0, 156.0, 192.0, 228.0, 264.0, 300.0, 336.0]
_HUE_NAMES = ["red", "yellow", "lime", "green", "teal",
              "cyan", "blue", "violet", "magenta", "rose"]
# Plateau/support half-widths chosen so the pure RGB primaries and
# secondaries (0, 60, 120, 180, 240, 300 degrees) all fall strictly inside
# a plateau, and adjacent bins cross at membership 0.5.
_HUE_PLATEAU = 13.0
_HUE_SUPPORT = 23.0

# Band breakpoints are dyadic so the 0.5 crossings are exact in floating point.
_BAND_BREAKS = [
    (0.0, 0.0, 0.1875, 0.3125),        # low
    (0.1875, 0.3125, 0.6875, 0.8125),  # mid
    (0.6875, 0.8125, 1.0, 1.0),        # high
]
_SAT_NAMES = ["muted", "soft", "vivid"]
_INT_NAMES = ["dark", "medium", "light"]


@dataclass(frozen=True)
class ChannelMembership:
    """Trapezoidal membership over one channel.

    Membership rises a->b, plateaus b->c at 1, falls c->d. The circular
    kind interprets breakpoints modulo 360 degrees.
    """

    kind: str
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if self.kind not in (LINEAR, CIRCULAR):
            raise DataValidationError(f"unknown membership kind {self.kind!r}")
        if self.kind == LINEAR:
            if not (self.a <= self.b <= self.c <= self.d):
                raise DataValidationError(
                    f"breakpoints must satisfy a <= b <= c <= d, got "
                    f"({self.a}, {self.b}, {self.c}, {self.d})")
        else:
            ab, ac, ad = self._spans()
            if not (ab <= ac <= ad):
                raise DataValidationError(
                    f"circular breakpoints out of order: spans ({ab}, {ac}, {ad})")
            if ad <= 0:
                raise DataValidationError("circular membership has empty support")

    def _spans(self):
        ab = (self.b - self.a) % 360.0
        ac = (self.c - self.a) % 360.0
        ad = (self.d - self.a) % 360.0
        return ab, ac, ad

    def evaluate(self, x):
        """Membership degree at x. Accepts scalars or numpy arrays."""
        x = np.asarray(x, dtype=float)
        if self.kind == CIRCULAR:
            ab, ac, ad = self._spans()
            t = np.mod(x - self.a, 360.0)
            out = np.zeros_like(t)
            out = np.where((t >= ab) & (t <= ac), 1.0, out)
            if ab > 0:
                rising = t < ab
                out = np.where(rising, t / ab, out)
            if ad > ac:
                falling = (t > ac) & (t < ad)
                out = np.where(falling, (ad - t) / (ad - ac), out)
            return out if out.ndim else float(out)

        out = np.zeros_like(x)
        out = np.where((x >= self.b) & (x <= self.c), 1.0, out)
        if self.b > self.a:
            rising = (x > self.a) & (x < self.b)
            out = np.where(rising, (x - self.a) / (self.b - self.a), out)
        if self.d > self.c:
            falling = (x > self.c) & (x < self.d)
            out = np.where(falling, (self.d - x) / (self.d - self.c), out)
        return out if out.ndim else float(out)

    def centroid(self) -> float:
        """Center of mass of the membership function over its support."""
        if self.kind == CIRCULAR:
            ab, ac, ad = self._spans()
            t = _trapezoid_centroid(0.0, ab, ac, ad)
            return (self.a + t) % 360.0
        return _trapezoid_centroid(self.a, self.b, self.c, self.d)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ChannelMembership":
        try:
            return cls(kind=obj["kind"], a=float(obj["a"]), b=float(obj["b"]),
                       c=float(obj["c"]), d=float(obj["d"]))
        except KeyError as exc:
            raise DataValidationError(f"membership missing field {exc}") from exc


def _trapezoid_centroid(a: float, b: float, c: float, d: float) -> float:
    area = ((d - a) + (c - b)) / 2.0
    if area <= 0:
        return a
    rising = (b - a) * (a + 2.0 * b) / 6.0
    plateau = (c * c - b * b) / 2.0
    falling = (d - c) * (2.0 * c + d) / 6.0
    return (rising + plateau + falling) / area


# Constant-1 membership used for the hue channel of achromatic colors.
CONSTANT_HUE = ChannelMembership(LINEAR, 0.0, 0.0, 360.0, 360.0)


@dataclass(frozen=True)
class HsiPixel:
    """A point in HSI space: hue in degrees [0, 360), sat/intensity in [0, 1]."""

    h: float
    s: float
    i: float


@dataclass(frozen=True)
class FuzzyColor:
    id: int
    name: str
    hue_m: ChannelMembership
    sat_m: ChannelMembership
    int_m: ChannelMembership
    achromatic: bool = False

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "achromatic": self.achromatic,
            "hue": self.hue_m.to_json_dict(),
            "sat": self.sat_m.to_json_dict(),
            "int": self.int_m.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "FuzzyColor":
        try:
            return cls(
                id=int(obj["id"]),
                name=str(obj["name"]),
                achromatic=bool(obj.get("achromatic", False)),
                hue_m=ChannelMembership.from_json_dict(obj["hue"]),
                sat_m=ChannelMembership.from_json_dict(obj["sat"]),
                int_m=ChannelMembership.from_json_dict(obj["int"]),
            )
        except KeyError as exc:
            raise DataValidationError(f"color missing field {exc}") from exc


def membership(color: FuzzyColor, p: HsiPixel) -> float:
    """Degree to which pixel p belongs to the fuzzy color (min t-norm)."""
    if color.achromatic or p.s < ACHROMATIC_SAT:
        hue_mu = 1.0
    else:
        hue_mu = color.hue_m.evaluate(p.h % 360.0)
    return min(hue_mu, color.sat_m.evaluate(p.s), color.int_m.evaluate(p.i))


@dataclass(frozen=True)
class Partition:
    """An immutable set of fuzzy colors with contiguous ids 0..N-1."""

    colors: tuple[FuzzyColor, ...]
    version: str
    source: str = "default-generated"
    _centroids: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        ids = [c.id for c in self.colors]
        if ids != list(range(len(self.colors))):
            dup = next((i for i in ids if ids.count(i) > 1), None)
            if dup is not None:
                raise DataValidationError(f"duplicate color id {dup}")
            raise DataValidationError(
                f"color ids must be contiguous 0..{len(self.colors) - 1}, got {ids[:8]}...")

    def __len__(self):
        return len(self.colors)

    def color(self, color_id: int) -> FuzzyColor:
        if not 0 <= color_id < len(self.colors):
            raise DataValidationError(f"unknown color id {color_id}")
        return self.colors[color_id]

    def membership_vector(self, p: HsiPixel) -> np.ndarray:
        """Membership of p in every color, indexed by color id."""
        return np.array([membership(c, p) for c in self.colors])

    def centroid(self, color_id: int) -> tuple[float, float, float]:
        """(h, s, i) centroid of a color. Achromatic colors sit on the gray axis."""
        c = self.color(color_id)
        if c.achromatic:
            return (0.0, 0.0, c.int_m.centroid())
        return (c.hue_m.centroid(), c.sat_m.centroid(), c.int_m.centroid())

    def swatch_rgb(self, color_id: int) -> tuple[int, int, int]:
        """Representative RGB for rendering the color, from its centroid."""
        h, s, i = self.centroid(color_id)
        return hsi_to_rgb(h, s, i)

    def to_json_dict(self) -> dict:
        return {"version": self.version,
                "colors": [c.to_json_dict() for c in self.colors]}


def default_partition() -> Partition:
    """Deterministically generate the default 92-color partition.

    10 hue bins x 3 saturation bands x 3 intensity bands, plus black
    (low intensity, any saturation) and white (high intensity, low
    saturation). Adjacent trapezoids cross at membership 0.5.
    """
    sat_bands = [ChannelMembership(LINEAR, *bp) for bp in _BAND_BREAKS]
    int_bands = [ChannelMembership(LINEAR, *bp) for bp in _BAND_BREAKS]

    colors = []
    for hue_idx, center in enumerate(_HUE_CENTERS):
        hue_m = ChannelMembership(
            CIRCULAR,
            (center - _HUE_SUPPORT) % 360.0,
            (center - _HUE_PLATEAU) % 360.0,
            (center + _HUE_PLATEAU) % 360.0,
            (center + _HUE_SUPPORT) % 360.0,
        )
        for sat_idx, sat_m in enumerate(sat_bands):
            for int_idx, int_m in enumerate(int_bands):
                cid = hue_idx * 9 + sat_idx * 3 + int_idx
                name = f"{_INT_NAMES[int_idx]} {_SAT_NAMES[sat_idx]} {_HUE_NAMES[hue_idx]}"
                colors.append(FuzzyColor(cid, name, hue_m, sat_m, int_m))

    colors.append(FuzzyColor(
        90, "black", CONSTANT_HUE,
        ChannelMembership(LINEAR, 0.0, 0.0, 1.0, 1.0),
        ChannelMembership(LINEAR, 0.0, 0.0, 0.0625, 0.125),
        achromatic=True))
    colors.append(FuzzyColor(
        91, "white", CONSTANT_HUE,
        ChannelMembership(LINEAR, 0.0, 0.0, 0.0625, 0.125),
        ChannelMembership(LINEAR, 0.8125, 0.9375, 1.0, 1.0),
        achromatic=True))

    return Partition(colors=tuple(colors), version=DEFAULT_PARTITION_VERSION,
                     source="default-generated")


def load_partition(path) -> Partition:
    """Load and validate a partition from its JSON file."""
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DataValidationError(f"cannot parse partition file {path}: {exc}") from exc
    if not isinstance(obj, dict) or "colors" not in obj:
        raise DataValidationError(f"partition file {path} missing 'colors'")

    colors = []
    for entry in obj["colors"]:
        try:
            colors.append(FuzzyColor.from_json_dict(entry))
        except DataValidationError as exc:
            cid = entry.get("id", "?") if isinstance(entry, dict) else "?"
            raise DataValidationError(f"color {cid}: {exc}") from exc

    seen = set()
    for c in colors:
        if c.id in seen:
            raise DataValidationError(f"duplicate color id {c.id}")
        seen.add(c.id)
    colors.sort(key=lambda c: c.id)
    return Partition(colors=tuple(colors),
                     version=str(obj.get("version", "unversioned")),
                     source="file")


def save_partition(partition: Partition, path) -> None:
    Path(path).write_text(
        json.dumps(partition.to_json_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8")


def rgb_to_hsi(r: float, g: float, b: float) -> HsiPixel:
    """Convert 0-255 RGB channels to HSI.

    Intensity is the channel mean scaled to [0, 1]; saturation is
    1 - min/mean; hue uses the arccos angle formula, reflected when b > g.
    Hue is 0 by convention when saturation is 0.
    """
    r, g, b = float(r), float(g), float(b)
    total = r + g + b
    i = total / (3.0 * 255.0)
    if total <= 0:
        return HsiPixel(0.0, 0.0, 0.0)
    s = 1.0 - 3.0 * min(r, g, b) / total
    if s <= 0:
        return HsiPixel(0.0, 0.0, i)
    num = 0.5 * ((r - g) + (r - b))
    den = math.sqrt((r - g) ** 2 + (r - b) * (g - b))
    if den == 0:
        h = 0.0
    else:
        h = math.degrees(math.acos(max(-1.0, min(1.0, num / den))))
        if b > g:
            h = 360.0 - h
    return HsiPixel(h % 360.0, s, i)


def rgb_to_hsi_arrays(rgb: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized rgb_to_hsi over an (N, 3) float or uint8 array of 0-255 pixels."""
    rgb = np.asarray(rgb, dtype=float)
    r, g, b = rgb[:, 0], rgb[:, 1], rgb[:, 2]
    total = r + g + b
    i = total / (3.0 * 255.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(total > 0, 1.0 - 3.0 * np.minimum(np.minimum(r, g), b) / total, 0.0)
    s = np.clip(s, 0.0, 1.0)
    num = 0.5 * ((r - g) + (r - b))
    den = np.sqrt((r - g) ** 2 + (r - b) * (g - b))
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = np.where(den > 0, num / np.where(den > 0, den, 1.0), 1.0)
    h = np.degrees(np.arccos(np.clip(arg, -1.0, 1.0)))
    h = np.where(b > g, 360.0 - h, h)
    h = np.where((s <= 0) | (den == 0), 0.0, h) % 360.0
    return h, s, i


def hsi_to_rgb(h: float, s: float, i: float) -> tuple[int, int, int]:
    """Inverse HSI conversion, clamped to valid 0-255 RGB."""
    r, g, b = hsi_to_rgb_float(h, s, i)
    return (int(round(255 * min(1.0, max(0.0, r)))),
            int(round(255 * min(1.0, max(0.0, g)))),
            int(round(255 * min(1.0, max(0.0, b)))))


def hsi_to_rgb_float_arrays(h: np.ndarray, s: np.ndarray,
                            i: np.ndarray) -> np.ndarray:
    """Vectorized sector-based HSI inverse; returns (N, 3) unclamped channels."""
    h = np.mod(np.asarray(h, dtype=float), 360.0)
    s = np.asarray(s, dtype=float)
    i = np.asarray(i, dtype=float)
    sector = np.where(h < 120.0, h, np.where(h < 240.0, h - 120.0, h - 240.0))
    lead = i * (1.0 + s * np.cos(np.radians(sector))
                / np.cos(np.radians(60.0 - sector)))
    low = i * (1.0 - s)
    rest = 3.0 * i - (lead + low)
    out = np.empty((h.shape[0], 3))
    first = h < 120.0
    second = (h >= 120.0) & (h < 240.0)
    third = h >= 240.0
    out[first] = np.stack([lead, rest, low], axis=1)[first]
    out[second] = np.stack([low, lead, rest], axis=1)[second]
    out[third] = np.stack([rest, low, lead], axis=1)[third]
    return out


def hsi_to_rgb_float(h: float, s: float, i: float) -> tuple[float, float, float]:
    """Sector-based HSI inverse. Returns unclamped [0,1]-scale channels,
    so callers can detect out-of-gamut combinations."""
    h = h % 360.0
    s = max(0.0, s)
    if s == 0:
        return (i, i, i)
    if h < 120.0:
        sector = h
        third = i * (1.0 - s)
        first = i * (1.0 + s * math.cos(math.radians(sector))
                     / math.cos(math.radians(60.0 - sector)))
        second = 3.0 * i - (first + third)
        return (first, second, third)
    if h < 240.0:
        sector = h - 120.0
        first = i * (1.0 - s)
        second = i * (1.0 + s * math.cos(math.radians(sector))
                      / math.cos(math.radians(60.0 - sector)))
        third = 3.0 * i - (first + second)
        return (first, second, third)
    sector = h - 240.0
    second = i * (1.0 - s)
    third = i * (1.0 + s * math.cos(math.radians(sector))
                 / math.cos(math.radians(60.0 - sector)))
    first = 3.0 * i - (second + third)
    return (first, second, third)
