"""Look preference scoring: single-color ratings combined with harmony.

A look's score averages two components in [0, 1]: the role-weighted mean
of the user's single-color ratings, and the harmony of the look's colors
against the mined palette knowledge base. Guests have no ratings, so
their score is the harmony alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .descriptor import ColorDescriptor, descriptor_from_color_ids
from .errors import DataValidationError, InvalidStateError
from .miner import HarmoniousPalette
from .similarity import ColorDistanceTable, palette_similarity


class Role(str, Enum):
    DRESS_COSTUME = "dress_costume"
    UP_DOWN = "up_down"
    SHOES_BAGS = "shoes_bags"
    ACCESSORY = "accessory"


_ROLE_WEIGHTS = {
    Role.DRESS_COSTUME: 1.0,
    Role.UP_DOWN: 0.75,
    Role.SHOES_BAGS: 0.5,
    Role.ACCESSORY: 0.25,
}


def role_weight(role: Role | str) -> float:
    """Importance weight of an apparel role."""
    try:
        return _ROLE_WEIGHTS[Role(role)]
    except ValueError:
        raise DataValidationError(
            f"unknown role {role!r}, expected one of "
            f"{[r.value for r in Role]}") from None


@dataclass(frozen=True)
class UserProfile:
    """Per-user single-color ratings, all in [0, 1]."""

    user_id: str
    ratings: dict[int, float] = field(default_factory=dict)
    default_rating: float = 0.5

    def __post_init__(self):
        for cid, value in self.ratings.items():
            if not 0.0 <= value <= 1.0:
                raise DataValidationError(
                    f"rating for color {cid} is {value}, must be in [0, 1]")
        if not 0.0 <= self.default_rating <= 1.0:
            raise DataValidationError(
                f"default_rating {self.default_rating} must be in [0, 1]")

    def rating(self, color_id: int) -> float:
        return self.ratings.get(color_id, self.default_rating)

    def to_json_dict(self) -> dict:
        return {"user_id": self.user_id,
                "default_rating": self.default_rating,
                "ratings": {str(cid): v for cid, v in sorted(self.ratings.items())}}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "UserProfile":
        try:
            ratings = {int(cid): float(v) for cid, v in obj.get("ratings", {}).items()}
            return cls(user_id=str(obj["user_id"]),
                       ratings=ratings,
                       default_rating=float(obj.get("default_rating", 0.5)))
        except (KeyError, TypeError, ValueError) as exc:
            raise DataValidationError(f"malformed profile: {exc}") from exc


@dataclass(frozen=True)
class ApparelItem:
    """One piece of a look: a role plus either a fuzzy color id or a descriptor."""

    role: Role
    color: int | ColorDescriptor

    def __post_init__(self):
        if not isinstance(self.role, Role):
            try:
                object.__setattr__(self, "role", Role(self.role))
            except ValueError:
                raise DataValidationError(f"unknown role {self.role!r}") from None
        if isinstance(self.color, bool) or not isinstance(self.color, (int, ColorDescriptor)):
            raise DataValidationError(
                "item color must be a fuzzy color id or a ColorDescriptor")

    @property
    def weight(self) -> float:
        return role_weight(self.role)

    @property
    def dominant_color(self) -> int:
        if isinstance(self.color, ColorDescriptor):
            return self.color.dominant_id
        return self.color

    def descriptor(self) -> ColorDescriptor:
        if isinstance(self.color, ColorDescriptor):
            return self.color
        return descriptor_from_color_ids([self.color])

    def to_json_dict(self) -> dict:
        obj = {"role": self.role.value}
        if isinstance(self.color, ColorDescriptor):
            obj["descriptor"] = self.color.to_json_dict()
        else:
            obj["color_id"] = self.color
        return obj

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ApparelItem":
        try:
            role = Role(obj["role"])
        except (KeyError, ValueError) as exc:
            raise DataValidationError(f"malformed item role: {exc}") from exc
        if "color_id" in obj:
            return cls(role=role, color=int(obj["color_id"]))
        if "descriptor" in obj:
            return cls(role=role, color=ColorDescriptor.from_json_dict(obj["descriptor"]))
        raise DataValidationError("item needs either color_id or descriptor")


@dataclass(frozen=True)
class Look:
    items: tuple[ApparelItem, ...]
    id: str | None = None

    def __post_init__(self):
        if not self.items:
            raise DataValidationError("a look needs at least one item")
        if sum(item.weight for item in self.items) <= 0:
            raise DataValidationError("look has zero total weight")

    def color_ids(self) -> frozenset[int]:
        ids: set[int] = set()
        for item in self.items:
            ids.update(item.descriptor().color_ids)
        return frozenset(ids)

    def combined_descriptor(self) -> ColorDescriptor:
        """All look colors in one descriptor, items weighted by role."""
        acc: dict[int, float] = {}
        for item in self.items:
            for cid, w in item.descriptor().entries:
                acc[cid] = acc.get(cid, 0.0) + item.weight * w
        return descriptor_from_color_ids(list(acc.keys()), list(acc.values()))

    def to_json_dict(self) -> dict:
        obj = {"items": [item.to_json_dict() for item in self.items]}
        if self.id is not None:
            obj["id"] = self.id
        return obj

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Look":
        try:
            items = tuple(ApparelItem.from_json_dict(i) for i in obj["items"])
        except (KeyError, TypeError) as exc:
            raise DataValidationError(f"malformed look: {exc}") from exc
        look_id = obj.get("id")
        return cls(items=items, id=str(look_id) if look_id is not None else None)


def load_look(path) -> Look:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataValidationError(f"cannot parse look file {path}: {exc}") from exc
    return Look.from_json_dict(obj)


def load_profile(path) -> UserProfile:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataValidationError(f"cannot parse profile file {path}: {exc}") from exc
    return UserProfile.from_json_dict(obj)


@dataclass(frozen=True)
class PreferenceScore:
    value: float
    harmony: float
    weighted_scp: float | None = None   # absent for guests
    matched_palette_id: int | None = None

    def to_json_dict(self) -> dict:
        components = {"harmony": self.harmony}
        if self.weighted_scp is not None:
            components["weighted_scp"] = self.weighted_scp
        return {"value": self.value,
                "components": components,
                "matched_palette_id": self.matched_palette_id}


def harmony(colors, kb, table: ColorDistanceTable) -> tuple[float, int | None]:
    """Harmony of a color set against the knowledge base.

    If some palette contains every queried color the harmony is exactly 1
    (ties go to the palette with the most members, then the lowest id).
    Otherwise it is the best similarity to any palette.
    """
    kb = list(kb)
    if not kb:
        raise InvalidStateError("knowledge base is empty; mine palettes first")

    if isinstance(colors, ColorDescriptor):
        query = colors
        ids = frozenset(query.color_ids)
    else:
        ids = frozenset(int(c) for c in colors)
        if not ids:
            raise DataValidationError("harmony query needs at least one color")
        query = descriptor_from_color_ids(sorted(ids))

    containing = [p for p in kb if ids <= p.color_ids]
    if containing:
        best = max(containing, key=lambda p: (p.member_count, -p.id))
        return 1.0, best.id

    best_sim, best_id = None, None
    for palette in kb:
        sim = palette_similarity(query, palette.as_descriptor(), table)
        if best_sim is None or sim > best_sim:
            best_sim, best_id = sim, palette.id
    return best_sim, best_id


def _weighted_mean(values, weights) -> float:
    total = sum(weights)
    if total <= 0:
        raise DataValidationError("weights must sum to a positive value")
    return sum(v * w for v, w in zip(values, weights)) / total


def predict_preference(look: Look, user: UserProfile | None, kb,
                       table: ColorDistanceTable) -> PreferenceScore:
    """Score a look for a user (or a guest when user is None).

    The registered-user score is the mean of the role-weighted single
    color ratings and the harmony value; the guest score is the harmony
    alone.
    """
    harm, palette_id = harmony(look.combined_descriptor(), kb, table)
    if user is None:
        return PreferenceScore(value=harm, harmony=harm,
                               matched_palette_id=palette_id)
    ratings = [user.rating(item.dominant_color) for item in look.items]
    weights = [item.weight for item in look.items]
    weighted = _weighted_mean(ratings, weights)
    return PreferenceScore(value=(weighted + harm) / 2.0,
                           harmony=harm,
                           weighted_scp=weighted,
                           matched_palette_id=palette_id)


def rank_catalog(anchor, candidates, user: UserProfile | None, kb,
                 table: ColorDistanceTable):
    """Order candidate items by the score of anchor plus candidate.

    Returns (candidate, PreferenceScore) pairs sorted by score descending;
    the original candidate order breaks ties.
    """
    candidates = list(candidates)
    if not candidates:
        raise DataValidationError("no candidates to rank")
    if isinstance(anchor, ApparelItem):
        anchor = Look(items=(anchor,))
    scored = []
    for candidate in candidates:
        extended = Look(items=anchor.items + (candidate,), id=anchor.id)
        scored.append((candidate, predict_preference(extended, user, kb, table)))
    scored.sort(key=lambda pair: -pair[1].value)
    return scored
