"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator

from ..preference import Role


class ApiError(BaseModel):
    code: str  # bad_request | not_found | invalid_state | internal
    message: str
    detail: str | None = None


class DescriptorEntry(BaseModel):
    id: int
    w: float


class DescriptorModel(BaseModel):
    entries: list[DescriptorEntry]
    width: int | None = None
    height: int | None = None


class ColorInfo(BaseModel):
    id: int
    name: str
    achromatic: bool
    rgb: tuple[int, int, int]
    hex: str


class PartitionSummary(BaseModel):
    version: str
    colors: list[ColorInfo]


class RatingsUpdate(BaseModel):
    ratings: dict[int, float]
    default_rating: float = 0.5

    @field_validator("ratings")
    @classmethod
    def _ratings_in_range(cls, ratings):
        for cid, value in ratings.items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"rating for color {cid} is {value}, must be in [0, 1]")
        return ratings

    @field_validator("default_rating")
    @classmethod
    def _default_in_range(cls, value):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"default_rating {value} must be in [0, 1]")
        return value


class ProfileModel(BaseModel):
    user_id: str
    default_rating: float
    ratings: dict[str, float]


class HarmonyRequest(BaseModel):
    colors: list[int] = Field(min_length=1)


class HarmonyResponse(BaseModel):
    harm: float
    matched_palette_id: int | None


class LookItemModel(BaseModel):
    role: Role
    color_id: int | None = None
    descriptor: DescriptorModel | None = None


class LookModel(BaseModel):
    items: list[LookItemModel] = Field(min_length=1)
    id: str | None = None


class PreferenceRequest(BaseModel):
    look: LookModel
    user_id: str | None = None  # omitted: score as a guest


class ScoreComponents(BaseModel):
    harmony: float
    weighted_scp: float | None = None


class ScoreResponse(BaseModel):
    value: float
    components: ScoreComponents
    matched_palette_id: int | None


class PaletteModel(BaseModel):
    id: int
    member_count: int
    entries: list[DescriptorEntry]
    label: str | None = None


class CatalogItemModel(BaseModel):
    item_id: str
    name: str
    role: Role
    descriptor: DescriptorModel
    image_path: str | None = None
    label: str | None = None


class CatalogUpsert(BaseModel):
    items: list[CatalogItemModel] = Field(min_length=1)


class RankRequest(BaseModel):
    anchor: LookModel
    user_id: str | None = None
    role: Role | None = None
    label: str | None = None
    limit: int | None = Field(default=None, ge=1)


class RankedItem(BaseModel):
    item: CatalogItemModel
    score: ScoreResponse


class MineRequest(BaseModel):
    corpus_dir: str
    threshold: float = 0.25
    min_group_size: int = 10
    min_palette_weight: float = 0.1


class MineResponse(BaseModel):
    items_total: int
    items_processed: int
    items_failed: int
    group_count: int
    promoted_count: int
    seconds_total: float
    seconds_per_image: float
    founded_at: list[int]
