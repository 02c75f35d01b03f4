"""File-backed persistence for palettes, user profiles, and the catalog.

One directory holds everything: kb.json, catalog.json, and users/<id>.json.
Writes are atomic (write to a sibling temp file, then rename) and the root
is guarded by an exclusive advisory lock so only one process mutates it.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

from filelock import FileLock, Timeout

from .descriptor import ColorDescriptor
from .errors import DataValidationError, InvalidStateError, NotFoundError
from .miner import HarmoniousPalette, KB_VERSION
from .preference import Role, UserProfile

CATALOG_VERSION = "catalog-v1"


@dataclass(frozen=True)
class CatalogItem:
    """One apparel in the shop catalog."""

    item_id: str
    name: str
    role: Role
    descriptor: ColorDescriptor
    image_path: str | None = None
    label: str | None = None

    def __post_init__(self):
        if not isinstance(self.role, Role):
            try:
                object.__setattr__(self, "role", Role(self.role))
            except ValueError:
                raise DataValidationError(f"unknown role {self.role!r}") from None
        if not self.item_id:
            raise DataValidationError("catalog item needs an item_id")

    def to_json_dict(self) -> dict:
        obj = {"item_id": self.item_id, "name": self.name,
               "role": self.role.value, "descriptor": self.descriptor.to_json_dict()}
        if self.image_path is not None:
            obj["image_path"] = self.image_path
        if self.label is not None:
            obj["label"] = self.label
        return obj

    @classmethod
    def from_json_dict(cls, obj: dict) -> "CatalogItem":
        try:
            return cls(item_id=str(obj["item_id"]),
                       name=str(obj.get("name", obj["item_id"])),
                       role=Role(obj["role"]),
                       descriptor=ColorDescriptor.from_json_dict(obj["descriptor"]),
                       image_path=obj.get("image_path"),
                       label=obj.get("label"))
        except (KeyError, ValueError, TypeError) as exc:
            raise DataValidationError(f"malformed catalog item: {exc}") from exc


def _atomic_write(path: Path, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_json(path: Path) -> dict:
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise NotFoundError(f"missing file {path}") from exc
    except (OSError, json.JSONDecodeError) as exc:
        raise DataValidationError(f"corrupt store file {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise DataValidationError(f"corrupt store file {path}: expected an object")
    return obj


def load_catalog_file(path) -> list[CatalogItem]:
    """Parse a standalone catalog.json (same schema the store writes)."""
    obj = _read_json(Path(path))
    items = [CatalogItem.from_json_dict(entry) for entry in obj.get("items", [])]
    seen = set()
    for item in items:
        if item.item_id in seen:
            raise DataValidationError(f"duplicate item_id {item.item_id!r} in {path}")
        seen.add(item.item_id)
    return items


class Store:
    """Exclusive, single-process store rooted at a directory."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.users_dir = self.root / "users"
        self.users_dir.mkdir(exist_ok=True)
        self._lock = FileLock(str(self.root / ".lock"))
        try:
            self._lock.acquire(timeout=0)
        except Timeout:
            raise InvalidStateError(f"store {self.root} is locked by another process") from None
        self._write_mutex = threading.Lock()
        try:
            self._palettes = self._load_kb()
            self._catalog = self._load_catalog()
        except BaseException:
            self._lock.release()
            raise

    # -- lifecycle ---------------------------------------------------------

    @classmethod
    def open(cls, root) -> "Store":
        return cls(root)

    def close(self) -> None:
        if self._lock.is_locked:
            self._lock.release()

    def __enter__(self) -> "Store":
        return self

    def __exit__(self, *exc):
        self.close()

    # -- palettes ----------------------------------------------------------

    @property
    def kb_path(self) -> Path:
        return self.root / "kb.json"

    def _load_kb(self) -> list[HarmoniousPalette]:
        if not self.kb_path.exists():
            return []
        obj = _read_json(self.kb_path)
        palettes = [HarmoniousPalette.from_json_dict(p) for p in obj.get("palettes", [])]
        seen = set()
        for p in palettes:
            if p.id in seen:
                raise DataValidationError(f"corrupt store file {self.kb_path}: "
                                          f"duplicate palette id {p.id}")
            seen.add(p.id)
        return palettes

    def put_palettes(self, palettes) -> None:
        palettes = sorted(palettes, key=lambda p: p.id)
        with self._write_mutex:
            _atomic_write(self.kb_path, {
                "version": KB_VERSION,
                "palettes": [p.to_json_dict() for p in palettes]})
            self._palettes = palettes

    def list_palettes(self, label: str | None = None) -> list[HarmoniousPalette]:
        if label is None:
            return list(self._palettes)
        return [p for p in self._palettes if p.label == label]

    def set_palette_label(self, palette_id: int, label: str | None) -> HarmoniousPalette:
        for idx, p in enumerate(self._palettes):
            if p.id == palette_id:
                updated = HarmoniousPalette(id=p.id, entries=p.entries,
                                            member_count=p.member_count, label=label)
                palettes = list(self._palettes)
                palettes[idx] = updated
                self.put_palettes(palettes)
                return updated
        raise NotFoundError(f"palette {palette_id} not found")

    # -- profiles ----------------------------------------------------------

    def _profile_path(self, user_id: str) -> Path:
        safe = str(user_id)
        if not safe or any(ch in safe for ch in "/\\") or safe in (".", ".."):
            raise DataValidationError(f"invalid user id {user_id!r}")
        return self.users_dir / f"{safe}.json"

    def put_profile(self, profile: UserProfile) -> None:
        path = self._profile_path(profile.user_id)
        with self._write_mutex:
            _atomic_write(path, profile.to_json_dict())

    def get_profile(self, user_id: str) -> UserProfile:
        path = self._profile_path(user_id)
        if not path.exists():
            raise NotFoundError(f"no profile for user {user_id!r}")
        return UserProfile.from_json_dict(_read_json(path))

    def list_users(self) -> list[str]:
        return sorted(p.stem for p in self.users_dir.glob("*.json"))

    # -- catalog -----------------------------------------------------------

    @property
    def catalog_path(self) -> Path:
        return self.root / "catalog.json"

    def _load_catalog(self) -> dict[str, CatalogItem]:
        if not self.catalog_path.exists():
            return {}
        obj = _read_json(self.catalog_path)
        items = {}
        for entry in obj.get("items", []):
            item = CatalogItem.from_json_dict(entry)
            items[item.item_id] = item
        return items

    def upsert_catalog(self, items) -> None:
        with self._write_mutex:
            for item in items:
                self._catalog[item.item_id] = item
            ordered = sorted(self._catalog.values(), key=lambda i: i.item_id)
            _atomic_write(self.catalog_path, {
                "version": CATALOG_VERSION,
                "items": [i.to_json_dict() for i in ordered]})

    def list_catalog(self, role: Role | str | None = None,
                     label: str | None = None) -> list[CatalogItem]:
        items = sorted(self._catalog.values(), key=lambda i: i.item_id)
        if role is not None:
            role = Role(role)
            items = [i for i in items if i.role == role]
        if label is not None:
            items = [i for i in items if i.label == label]
        return items
