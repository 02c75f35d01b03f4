"""HTTP facade over the core package.

Every endpoint delegates to the corresponding core operation and mirrors
its result; no scoring logic lives here. State (palettes, profiles,
catalog) lives in the store.
"""

from __future__ import annotations

import io
from contextlib import asynccontextmanager

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from PIL import Image

from ..colorspace import Partition, default_partition
from ..descriptor import ColorDescriptor, ExtractionConfig, extract_descriptor
from ..errors import (ColorHarmonyError, DataValidationError, InvalidStateError,
                      NotFoundError)
from ..miner import MinerConfig, mine
from ..corpus import iter_image_dir
from ..preference import (ApparelItem, Look, UserProfile, harmony,
                          predict_preference, rank_catalog)
from ..similarity import ColorDistanceTable
from ..store import Store
from . import schemas

DEFAULT_MAX_MINE_ITEMS = 5000


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    payload = schemas.ApiError(code=code, message=message).model_dump(exclude_none=True)
    return JSONResponse(status_code=status, content={"error": payload})


def _look_from_model(model: schemas.LookModel) -> Look:
    items = []
    for entry in model.items:
        if entry.color_id is not None:
            items.append(ApparelItem(role=entry.role, color=entry.color_id))
        elif entry.descriptor is not None:
            desc = ColorDescriptor.from_json_dict(
                entry.descriptor.model_dump(exclude_none=True))
            items.append(ApparelItem(role=entry.role, color=desc))
        else:
            raise DataValidationError("look item needs either color_id or descriptor")
    return Look(items=tuple(items), id=model.id)


def create_app(store_root, partition: Partition | None = None,
               max_mine_items: int = DEFAULT_MAX_MINE_ITEMS,
               cors_origins=("*",)) -> FastAPI:
    partition = partition or default_partition()
    table = ColorDistanceTable.from_partition(partition)
    store = Store.open(store_root)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        store.close()

    app = FastAPI(title="colorharmony", lifespan=lifespan)
    app.state.store = store
    app.state.partition = partition
    app.state.table = table

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(DataValidationError)
    async def _bad_request(_req: Request, exc: DataValidationError):
        return _error_response(400, "bad_request", str(exc))

    @app.exception_handler(NotFoundError)
    async def _not_found(_req: Request, exc: NotFoundError):
        return _error_response(404, "not_found", str(exc))

    @app.exception_handler(InvalidStateError)
    async def _invalid_state(_req: Request, exc: InvalidStateError):
        return _error_response(409, "invalid_state", str(exc))

    @app.exception_handler(ColorHarmonyError)
    async def _internal(_req: Request, exc: ColorHarmonyError):
        return _error_response(500, "internal", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _unprocessable(_req: Request, exc: RequestValidationError):
        return _error_response(400, "bad_request", str(exc.errors()[:3]))

    # -- partition ---------------------------------------------------------

    @app.get("/api/colors", response_model=schemas.PartitionSummary)
    def list_colors():
        colors = []
        for color in partition.colors:
            r, g, b = partition.swatch_rgb(color.id)
            colors.append(schemas.ColorInfo(
                id=color.id, name=color.name, achromatic=color.achromatic,
                rgb=(r, g, b), hex=f"#{r:02x}{g:02x}{b:02x}"))
        return schemas.PartitionSummary(version=partition.version, colors=colors)

    # -- profiles ----------------------------------------------------------

    @app.put("/api/users/{user_id}/ratings", response_model=schemas.ProfileModel)
    def put_ratings(user_id: str, body: schemas.RatingsUpdate):
        for cid in body.ratings:
            partition.color(cid)  # rejects unknown ids
        profile = UserProfile(user_id=user_id, ratings=dict(body.ratings),
                              default_rating=body.default_rating)
        store.put_profile(profile)
        return profile.to_json_dict()

    @app.get("/api/users/{user_id}", response_model=schemas.ProfileModel)
    def get_profile(user_id: str):
        return store.get_profile(user_id).to_json_dict()

    # -- descriptors -------------------------------------------------------

    @app.post("/api/descriptor", response_model=schemas.DescriptorModel,
              response_model_exclude_none=True)
    async def compute_descriptor(request: Request):
        raw = await request.body()
        if not raw:
            raise DataValidationError("empty image payload")
        try:
            with Image.open(io.BytesIO(raw)) as img:
                pixels = np.asarray(img.convert("RGB"))
        except (OSError, ValueError) as exc:
            raise DataValidationError(f"cannot decode image payload: {exc}") from exc
        descriptor = extract_descriptor(pixels, partition)
        return descriptor.to_json_dict()

    # -- harmony and preference ---------------------------------------------

    @app.post("/api/harmony", response_model=schemas.HarmonyResponse)
    def harmony_endpoint(body: schemas.HarmonyRequest):
        for cid in body.colors:
            partition.color(cid)
        harm, palette_id = harmony(set(body.colors), store.list_palettes(), table)
        return schemas.HarmonyResponse(harm=harm, matched_palette_id=palette_id)

    @app.post("/api/preference", response_model=schemas.ScoreResponse,
              response_model_exclude_none=True)
    def preference_endpoint(body: schemas.PreferenceRequest):
        look = _look_from_model(body.look)
        user = store.get_profile(body.user_id) if body.user_id is not None else None
        score = predict_preference(look, user, store.list_palettes(), table)
        return score.to_json_dict()

    @app.post("/api/rank", response_model=list[schemas.RankedItem],
              response_model_exclude_none=True)
    def rank_endpoint(body: schemas.RankRequest):
        anchor = _look_from_model(body.anchor)
        user = store.get_profile(body.user_id) if body.user_id is not None else None
        items = store.list_catalog(role=body.role, label=body.label)
        if not items:
            raise NotFoundError("no catalog items match the filter")
        candidates = [ApparelItem(role=i.role, color=i.descriptor) for i in items]
        ranked = rank_catalog(anchor, candidates, user, store.list_palettes(), table)
        by_candidate = {id(c): i for c, i in zip(candidates, items)}
        results = []
        for candidate, score in ranked[:body.limit]:
            item = by_candidate[id(candidate)]
            results.append({"item": item.to_json_dict(),
                            "score": score.to_json_dict()})
        return results

    # -- palettes and catalog ------------------------------------------------

    @app.get("/api/palettes", response_model=list[schemas.PaletteModel],
             response_model_exclude_none=True)
    def list_palettes(label: str | None = None):
        return [p.to_json_dict() for p in store.list_palettes(label=label)]

    @app.post("/api/catalog", response_model=list[schemas.CatalogItemModel],
              response_model_exclude_none=True)
    def upsert_catalog(body: schemas.CatalogUpsert):
        from ..store import CatalogItem

        items = []
        for entry in body.items:
            desc = ColorDescriptor.from_json_dict(
                entry.descriptor.model_dump(exclude_none=True))
            items.append(CatalogItem(item_id=entry.item_id, name=entry.name,
                                     role=entry.role, descriptor=desc,
                                     image_path=entry.image_path, label=entry.label))
        store.upsert_catalog(items)
        return [i.to_json_dict() for i in store.list_catalog()]

    @app.get("/api/catalog", response_model=list[schemas.CatalogItemModel],
             response_model_exclude_none=True)
    def list_catalog(role: str | None = None, label: str | None = None):
        return [i.to_json_dict() for i in store.list_catalog(role=role, label=label)]

    # -- mining --------------------------------------------------------------

    @app.post("/api/mine", response_model=schemas.MineResponse)
    def mine_endpoint(body: schemas.MineRequest):
        corpus = list(iter_image_dir(body.corpus_dir))
        if len(corpus) > max_mine_items:
            raise DataValidationError(
                f"corpus has {len(corpus)} items, over the synchronous "
                f"limit of {max_mine_items}")
        cfg = MinerConfig(threshold=body.threshold,
                          min_group_size=body.min_group_size,
                          min_palette_weight=body.min_palette_weight)
        _groups, palettes, stats = mine(corpus, partition, cfg, table)
        store.put_palettes(palettes)
        return stats.to_json_dict()

    return app
